#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tcg/game.hpp"
#include "tcg/rational.hpp"
#include "tcg/sequence.hpp"

namespace tcg {

/// Σ_{i∈S} x_i ≥ bound, where bound = max worth over orderings of S.
struct SubsetBound {
  AgentMask subset = 0;
  Rational bound;
  /// One sequence over exactly S attaining the bound (first in canonical order).
  Sequence witness;
};

/// The basis conditions collapsed from one row per sequence to one row per
/// subset, plus the equality Σ x = v(π*).
struct BasisSystem {
  std::size_t agents = 0;
  /// One entry per nonempty subset, ordered by size then lexicographically by members.
  std::vector<SubsetBound> inequalities;
  Sequence optimal;
  Rational total;

  const SubsetBound& bound_for(AgentMask subset) const;
};

/// A weighted subset bound inside an infeasibility certificate. `floor` marks an
/// extra per-agent lower bound supplied by the caller rather than a worth.
struct CertificateTerm {
  AgentMask subset = 0;
  Rational weight;
  Rational bound;
  bool floor = false;
};

/// Weights form a balanced collection (every agent covered with total weight 1),
/// so any x meeting the bounds has Σ x ≥ weighted_sum > total.
struct InfeasibilityCertificate {
  std::vector<CertificateTerm> terms;
  Rational weighted_sum;
  Rational total;

  std::string to_string() const;
};

struct Feasible {
  std::vector<Rational> x;
};

struct Infeasible {
  InfeasibilityCertificate certificate;
};

using BasisOutcome = std::variant<Feasible, Infeasible>;

/// Collapses Π into 2^n − 1 subset bounds w(S) = max_{P(π)=S} v(π).
BasisSystem build_system(const WorthTable& v);

/// Exact feasibility decision. When feasible, returns the lexicographically
/// minimal point w.r.t. `order` (default 0, 1, …, n−1): minimize x_{order[0]},
/// then x_{order[1]} with the first fixed, and so on. Optional `floors` adds
/// x_i ≥ floors[i] for every i that has a value.
BasisOutcome solve(const BasisSystem& system, std::span<const AgentId> order = {},
                   std::span<const std::optional<Rational>> floors = {});

/// The largest value x_i takes over all basis solutions, or nullopt if none exist.
std::optional<Rational> max_coordinate(const BasisSystem& system, AgentId agent);

/// Checks that the certificate's weights are balanced and its sum exceeds the total.
bool verify_certificate(const BasisSystem& system, const InfeasibilityCertificate& certificate,
                        std::span<const std::optional<Rational>> floors = {});

struct BasisCheck {
  bool holds = true;
  /// Sequences π with Σ_{P(π)} x < v(π), in canonical order.
  std::vector<Sequence> violations;
  /// False when Σ x ≠ v(π*).
  bool equality_holds = true;
};

/// Checks the basis conditions against every sequence of Π (not the collapsed system).
BasisCheck is_basis_solution(const WorthTable& v, std::span<const Rational> x);

}  // namespace tcg
