#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "tcg/game.hpp"
#include "tcg/rational.hpp"
#include "tcg/solution_table.hpp"

namespace tcg {

/// ψ: one payoff per agent, independent of the arrival order.
using ExtendedVector = std::vector<Rational>;

/// MargSol_i(π) = v(π_i + i) − v(π_i) for i ∈ P(π), 0 otherwise.
SolutionTable margsol(const WorthTable& v);

/// Average marginal contribution over all n! arrival orders, enumerated directly.
ExtendedVector ext_shap(const WorthTable& v);

/// Componentwise average of φ over the n! full-length sequences.
ExtendedVector reduce(const SolutionTable& phi);

/// u_{π̂,α}(π′): α when π̂ is a prefix of π′ or equal to it, else 0.
Rational carrier_worth(const Sequence& carrier, const Sequence& seq, const Rational& alpha);

/// The whole table of u_{π̂,α} on n agents.
WorthTable carrier_game(std::size_t n, const Sequence& carrier, const Rational& alpha);

/// v = Σ_π α_π u_π over nonempty π.
class CarrierDecomposition {
 public:
  explicit CarrierDecomposition(std::size_t n);

  std::size_t agents() const noexcept { return space_->agents(); }
  const SequenceSpace& space() const noexcept { return *space_; }
  const Rational& operator()(const Sequence& seq) const { return alpha_[space_->index_of(seq)]; }
  const Rational& at_index(std::size_t index) const { return alpha_[index]; }
  void set_index(std::size_t index, Rational alpha);

  /// Evaluates Σ_π α_π u_π on every sequence.
  WorthTable reconstruct() const;

 private:
  std::shared_ptr<const SequenceSpace> space_;
  std::vector<Rational> alpha_;
};

/// Solves the triangular system α_π = v(π) − Σ_{π′ ⊏ π} α_{π′} and checks the
/// reconstruction before returning (InvariantError on mismatch).
CarrierDecomposition decompose(const WorthTable& v);

/// Closed-form MargSol of u_{π̂,α}: ℓ(π̂) receives α on every sequence that
/// extends π̂ (or equals it); everyone else receives 0.
SolutionTable carrier_solution_margsol(std::size_t n, const Sequence& carrier, const Rational& alpha);

/// Closed-form Ext-Shap of u_{π̂,α}: (n−|π̂|)!/n! · α for ℓ(π̂), 0 otherwise.
ExtendedVector carrier_extshap(std::size_t n, const Sequence& carrier, const Rational& alpha);

}  // namespace tcg
