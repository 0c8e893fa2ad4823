#include "tcg/sequence.hpp"

#include <algorithm>

#include "tcg/error.hpp"

namespace tcg {

Sequence::Sequence(std::initializer_list<AgentId> agents)
    : Sequence(std::span<const AgentId>(agents.begin(), agents.size())) {}

Sequence::Sequence(std::span<const AgentId> agents) {
  if (agents.size() > kMaxAgents) {
    throw SizeError("sequence longer than " + std::to_string(kMaxAgents) + " agents");
  }
  for (AgentId a : agents) *this = extended(a);
}

Sequence Sequence::from_one_based(std::span<const std::size_t> ids) {
  Sequence s;
  for (std::size_t id : ids) {
    if (id == 0) throw DomainError("agent ids are 1-based; got 0");
    s = s.extended(id - 1);
  }
  return s;
}

Sequence Sequence::from_one_based(std::initializer_list<std::size_t> ids) {
  return from_one_based(std::span<const std::size_t>(ids.begin(), ids.size()));
}

AgentId Sequence::last() const {
  if (empty()) throw DomainError("the empty sequence has no last agent");
  return agents_[size_ - 1];
}

std::optional<std::size_t> Sequence::position_of(AgentId agent) const noexcept {
  if (!contains(agent)) return std::nullopt;
  return static_cast<std::size_t>(std::find(begin(), end(), agent) - begin());
}

Sequence Sequence::extended(AgentId agent) const {
  if (agent >= kMaxAgents) {
    throw DomainError("agent " + std::to_string(agent + 1) + " exceeds the agent cap");
  }
  if (contains(agent)) {
    throw DomainError("agent " + std::to_string(agent + 1) + " already in sequence (" +
                      to_string() + ")");
  }
  Sequence out = *this;
  out.agents_[out.size_++] = agent;
  out.members_ |= AgentMask{1} << agent;
  return out;
}

Sequence Sequence::prefix(std::size_t length) const {
  Sequence out;
  const std::size_t len = std::min(length, size_);
  for (std::size_t k = 0; k < len; ++k) {
    out.agents_[k] = agents_[k];
    out.members_ |= AgentMask{1} << agents_[k];
  }
  out.size_ = len;
  return out;
}

Sequence Sequence::parent() const { return prefix(size_ == 0 ? 0 : size_ - 1); }

std::vector<AgentId> Sequence::agents() const { return {begin(), end()}; }

std::uint32_t Sequence::key() const noexcept {
  std::uint32_t k = 0;
  for (std::size_t pos = 0; pos < size_; ++pos) {
    k |= static_cast<std::uint32_t>(agents_[pos] + 1) << (4 * pos);
  }
  return k;
}

std::string Sequence::to_string() const {
  if (empty()) return "()";
  std::string out;
  for (std::size_t pos = 0; pos < size_; ++pos) {
    if (pos > 0) out += ' ';
    out += std::to_string(agents_[pos] + 1);
  }
  return out;
}

std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) noexcept {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

bool prefix_of(const Sequence& a, const Sequence& b) noexcept {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool prefix_or_equal(const Sequence& a, const Sequence& b) noexcept {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

Sequence predecessor(const Sequence& seq, AgentId agent) {
  const auto pos = seq.position_of(agent);
  if (!pos) {
    throw DomainError("agent " + std::to_string(agent + 1) + " is not in sequence (" +
                      seq.to_string() + ")");
  }
  return seq.prefix(*pos);
}

Sequence swap(const Sequence& seq, AgentId i, AgentId j) {
  std::vector<AgentId> out = seq.agents();
  for (AgentId& a : out) {
    if (a == i) {
      a = j;
    } else if (a == j) {
      a = i;
    }
  }
  return Sequence(std::span<const AgentId>(out));
}

std::string mask_to_string(AgentMask mask) {
  std::string out = "{";
  bool first = true;
  for (AgentId i = 0; i < 32; ++i) {
    if (((mask >> i) & 1U) == 0) continue;
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

}  // namespace tcg
