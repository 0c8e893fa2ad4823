#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tcg/rational.hpp"
#include "tcg/sequence.hpp"
#include "tcg/sequence_space.hpp"

namespace tcg {

/// φ: a payoff vector of length n for every sequence, including the empty one.
/// Entries for agents outside the sequence are stored explicitly so that tables
/// breaking the zero-outside convention can still be represented and rejected.
class SolutionTable {
 public:
  /// The all-zero table on n agents.
  explicit SolutionTable(std::size_t n);

  std::size_t agents() const noexcept { return space_->agents(); }
  const SequenceSpace& space() const noexcept { return *space_; }

  std::span<const Rational> at(const Sequence& seq) const { return at_index(space_->index_of(seq)); }
  std::span<const Rational> at_index(std::size_t index) const {
    return {payoff_.data() + index * agents(), agents()};
  }
  const Rational& operator()(const Sequence& seq, AgentId agent) const {
    return payoff_.at(space_->index_of(seq) * agents() + agent);
  }

  void set(const Sequence& seq, AgentId agent, Rational value);
  void set(const Sequence& seq, std::span<const Rational> payoff);
  void set_index(std::size_t index, std::span<const Rational> payoff);

  /// The first (sequence, agent) pair in canonical order paying an agent outside
  /// the sequence, or nullopt if every such entry is zero.
  std::optional<std::pair<Sequence, AgentId>> zero_outside_violation() const;

  friend bool operator==(const SolutionTable& a, const SolutionTable& b) {
    return a.agents() == b.agents() && a.payoff_ == b.payoff_;
  }

 private:
  std::shared_ptr<const SequenceSpace> space_;
  std::vector<Rational> payoff_;
};

}  // namespace tcg
