#include "tcg/sequence_space.hpp"

#include <array>
#include <mutex>
#include <string>

#include "tcg/error.hpp"

namespace tcg {

std::size_t sequence_count_with_empty(std::size_t n) {
  std::size_t total = 1;
  std::size_t term = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    term *= n - k + 1;
    total += term;
  }
  return total;
}

namespace {

void check_agent_count(std::size_t n) {
  if (n == 0) throw DomainError("a game needs at least one agent");
  if (n > kMaxAgents) {
    throw SizeError("n = " + std::to_string(n) + " needs " +
                    std::to_string(sequence_count_with_empty(n) - 1) +
                    " sequences; the cap is n <= " + std::to_string(kMaxAgents) + " (" +
                    std::to_string(sequence_count_with_empty(kMaxAgents) - 1) + " sequences)");
  }
}

}  // namespace

SequenceSpace::SequenceSpace(std::size_t n) : n_(n) {
  const std::size_t total = sequence_count_with_empty(n);
  sequences_.reserve(total);
  parent_.reserve(total);
  children_.assign(total * n, npos);
  index_.reserve(total);

  sequences_.emplace_back();
  parent_.push_back(npos);
  layer_start_ = {0, 1};
  for (std::size_t length = 0; length < n; ++length) {
    for (std::size_t idx = layer_start_[length]; idx < layer_start_[length + 1]; ++idx) {
      for (AgentId j = 0; j < n; ++j) {
        if (sequences_[idx].contains(j)) continue;
        children_[idx * n + j] = sequences_.size();
        sequences_.push_back(sequences_[idx].extended(j));
        parent_.push_back(idx);
      }
    }
    layer_start_.push_back(sequences_.size());
  }
  for (std::size_t idx = 0; idx < sequences_.size(); ++idx) {
    index_.emplace(sequences_[idx].key(), idx);
  }
  for (std::size_t idx = layer_begin(n); idx < layer_end(n); ++idx) full_.push_back(idx);
}

std::shared_ptr<const SequenceSpace> SequenceSpace::of(std::size_t n) {
  check_agent_count(n);
  static std::array<std::once_flag, kMaxAgents + 1> flags;
  static std::array<std::shared_ptr<const SequenceSpace>, kMaxAgents + 1> spaces;
  std::call_once(flags[n], [n] { spaces[n] = std::shared_ptr<const SequenceSpace>(new SequenceSpace(n)); });
  return spaces[n];
}

std::size_t SequenceSpace::index_of(const Sequence& seq) const {
  if ((seq.members() & ~all_agents()) != 0) {
    throw DomainError("sequence (" + seq.to_string() + ") mentions an agent beyond n = " +
                      std::to_string(n_));
  }
  return index_.at(seq.key());
}

std::vector<Sequence> enumerate_sequences(std::size_t n, const SequenceFilter& filter) {
  const auto space = SequenceSpace::of(n);
  std::vector<Sequence> out;
  for (std::size_t idx = 1; idx < space->size(); ++idx) {
    const Sequence& s = space->at(idx);
    if (filter.within && (s.members() & ~*filter.within) != 0) continue;
    if (filter.length && s.size() != *filter.length) continue;
    out.push_back(s);
  }
  return out;
}

}  // namespace tcg
