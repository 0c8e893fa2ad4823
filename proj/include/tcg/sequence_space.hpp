#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "tcg/sequence.hpp"

namespace tcg {

/// Σ_{k=0..n} n!/(n−k)!: the number of sequences over n agents, counting the empty one.
std::size_t sequence_count_with_empty(std::size_t n);

/// Every sequence over n agents, indexed in canonical order with the empty
/// sequence at index 0. Shared and immutable; obtain through `of`.
class SequenceSpace {
 public:
  static constexpr std::size_t kEmpty = 0;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// Throws SizeError when n exceeds kMaxAgents, DomainError when n == 0.
  static std::shared_ptr<const SequenceSpace> of(std::size_t n);

  std::size_t agents() const noexcept { return n_; }
  /// Number of sequences including the empty one.
  std::size_t size() const noexcept { return sequences_.size(); }
  const Sequence& at(std::size_t index) const { return sequences_.at(index); }
  /// Throws DomainError if the sequence mentions an agent ≥ n.
  std::size_t index_of(const Sequence& seq) const;

  std::size_t parent(std::size_t index) const { return parent_[index]; }
  /// Index of π+j, or npos if j is already in π.
  std::size_t child(std::size_t index, AgentId agent) const { return children_[index * n_ + agent]; }

  /// Indices [begin, end) of the sequences of the given length.
  std::size_t layer_begin(std::size_t length) const { return layer_start_[length]; }
  std::size_t layer_end(std::size_t length) const { return layer_start_[length + 1]; }
  std::span<const std::size_t> full_sequences() const { return full_; }

  AgentMask all_agents() const noexcept { return (AgentMask{1} << n_) - 1; }

 private:
  explicit SequenceSpace(std::size_t n);

  std::size_t n_;
  std::vector<Sequence> sequences_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> children_;
  std::vector<std::size_t> layer_start_;
  std::vector<std::size_t> full_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

/// Restricts enumeration. `within` keeps sequences whose agents all lie in the
/// mask (Π_{−N′} is `within = N \ N′`); `length` keeps one length only.
struct SequenceFilter {
  std::optional<AgentMask> within;
  std::optional<std::size_t> length;
};

/// Nonempty sequences over n agents matching the filter, in canonical order
/// (shorter first, lexicographic within a length). Rejects n > 8 with a SizeError
/// naming the sequence count.
std::vector<Sequence> enumerate_sequences(std::size_t n, const SequenceFilter& filter = {});

}  // namespace tcg
