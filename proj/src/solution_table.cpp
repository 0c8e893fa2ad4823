#include "tcg/solution_table.hpp"

#include "tcg/error.hpp"

namespace tcg {

SolutionTable::SolutionTable(std::size_t n)
    : space_(SequenceSpace::of(n)), payoff_(space_->size() * n, Rational(0)) {}

void SolutionTable::set(const Sequence& seq, AgentId agent, Rational value) {
  if (agent >= agents()) throw DomainError("agent out of range");
  payoff_[space_->index_of(seq) * agents() + agent] = std::move(value);
}

void SolutionTable::set(const Sequence& seq, std::span<const Rational> payoff) {
  set_index(space_->index_of(seq), payoff);
}

void SolutionTable::set_index(std::size_t index, std::span<const Rational> payoff) {
  if (payoff.size() != agents()) throw DomainError("payoff vector has the wrong length");
  if (index >= space_->size()) throw DomainError("sequence index out of range");
  std::copy(payoff.begin(), payoff.end(), payoff_.begin() + static_cast<std::ptrdiff_t>(index * agents()));
}

std::optional<std::pair<Sequence, AgentId>> SolutionTable::zero_outside_violation() const {
  for (std::size_t idx = 0; idx < space_->size(); ++idx) {
    const Sequence& seq = space_->at(idx);
    for (AgentId i = 0; i < agents(); ++i) {
      if (!seq.contains(i) && sgn(payoff_[idx * agents() + i]) != 0) return std::pair{seq, i};
    }
  }
  return std::nullopt;
}

}  // namespace tcg
