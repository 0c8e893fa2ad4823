#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tcg {

/// 0-based agent index. Files and printed output use 1-based ids.
using AgentId = std::size_t;

/// Bitmask over agents, bit i set iff agent i is a member.
using AgentMask = std::uint32_t;

inline constexpr std::size_t kMaxAgents = 8;

/// An ordered list of distinct agents: the order in which they arrived.
/// The default-constructed value is the empty sequence.
class Sequence {
 public:
  Sequence() = default;
  Sequence(std::initializer_list<AgentId> agents);
  explicit Sequence(std::span<const AgentId> agents);

  /// Builds from 1-based ids as they appear in files and figures.
  static Sequence from_one_based(std::span<const std::size_t> ids);
  static Sequence from_one_based(std::initializer_list<std::size_t> ids);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  AgentId operator[](std::size_t pos) const noexcept { return agents_[pos]; }
  AgentId last() const;

  /// P(π) as a bitmask.
  AgentMask members() const noexcept { return members_; }
  bool contains(AgentId agent) const noexcept {
    return agent < kMaxAgents && ((members_ >> agent) & 1U) != 0;
  }
  std::optional<std::size_t> position_of(AgentId agent) const noexcept;

  /// π + i. Throws DomainError if the agent is already present or the sequence is full.
  Sequence extended(AgentId agent) const;
  /// The first `length` agents.
  Sequence prefix(std::size_t length) const;
  /// The sequence with its last agent removed (empty stays empty).
  Sequence parent() const;

  std::vector<AgentId> agents() const;
  const AgentId* begin() const noexcept { return agents_.data(); }
  const AgentId* end() const noexcept { return agents_.data() + size_; }

  /// Injective packing (4 bits per position, agent+1), used as a hash key.
  std::uint32_t key() const noexcept;

  /// Space-separated 1-based ids; the empty sequence renders as "()".
  std::string to_string() const;

  friend bool operator==(const Sequence& a, const Sequence& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  /// Canonical order: shorter first, then lexicographic by agent index.
  friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) noexcept;

 private:
  std::array<AgentId, kMaxAgents> agents_{};
  std::size_t size_ = 0;
  AgentMask members_ = 0;
};

/// Strict prefix: `a` is shorter than `b` and agrees with it positionwise.
bool prefix_of(const Sequence& a, const Sequence& b) noexcept;

/// Non-strict prefix (equality allowed), the relation carrier games use.
bool prefix_or_equal(const Sequence& a, const Sequence& b) noexcept;

/// π_i: the longest prefix of π not containing i. Throws DomainError if i ∉ P(π).
Sequence predecessor(const Sequence& seq, AgentId agent);

/// π with agents i and j exchanged: replace whichever one is present, swap
/// positions if both are, identity if neither is.
Sequence swap(const Sequence& seq, AgentId i, AgentId j);

/// 1-based, comma separated, in ascending order, e.g. "{1,3}".
std::string mask_to_string(AgentMask mask);

inline int popcount(AgentMask mask) noexcept { return __builtin_popcount(mask); }

}  // namespace tcg
