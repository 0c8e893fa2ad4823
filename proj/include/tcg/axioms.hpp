#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tcg/basis.hpp"
#include "tcg/game.hpp"
#include "tcg/shapley.hpp"
#include "tcg/solution_table.hpp"

namespace tcg {

enum class Axiom { kOIR, kSE, kI4OA, kSA, kSNP, kSS, kEE, kEA, kENP, kES };

inline constexpr Axiom kAllAxioms[] = {Axiom::kOIR, Axiom::kSE,  Axiom::kI4OA, Axiom::kSA,
                                       Axiom::kSNP, Axiom::kSS,  Axiom::kEE,   Axiom::kEA,
                                       Axiom::kENP, Axiom::kES};

/// The short upper-case tag, e.g. "I4OA".
std::string to_string(Axiom axiom);
/// Case-insensitive; throws DomainError on an unknown tag.
Axiom parse_axiom(std::string_view tag);

/// One concrete failure: `lhs relation rhs` should hold but does not.
struct Witness {
  enum class Relation { kLessEqual, kEqual };

  std::vector<Sequence> sequences;
  std::vector<AgentId> agents;
  Rational lhs;
  Rational rhs;
  Relation relation = Relation::kEqual;
  std::string description;

  bool relation_holds() const { return relation == Relation::kEqual ? lhs == rhs : lhs <= rhs; }
};

struct AxiomReport {
  Axiom axiom = Axiom::kOIR;
  bool holds = true;
  /// Nothing was tested: no null player, or no pair met the symmetry hypothesis.
  bool vacuous = false;
  /// The first failures in canonical order, at most kMaxWitnesses of them.
  std::vector<Witness> witnesses;
  std::size_t violation_count = 0;
  /// SNP/ENP: the null players the check ran over.
  std::vector<AgentId> null_players;
  /// SS/ES: pairs meeting the swap hypothesis, and pairs skipped because they do not.
  std::vector<std::pair<AgentId, AgentId>> checked_pairs;
  std::vector<std::pair<AgentId, AgentId>> skipped_pairs;

  static constexpr std::size_t kMaxWitnesses = 16;

  void record(Witness witness);
};

/// Payoffs are read through the zero-outside convention: an agent not in π is
/// treated as holding 0 at π, whatever the table stores.

/// Immediate mode compares every arrival π → π+j, full mode every prefix pair.
/// Both include the pre-arrival prefix, so a newcomer's first share must be ≥ 0.
enum class OirMode { kImmediate, kAllPrefixes };

AxiomReport check_OIR(const WorthTable& v, const SolutionTable& phi, OirMode mode = OirMode::kImmediate);
AxiomReport check_SE(const WorthTable& v, const SolutionTable& phi);
AxiomReport check_I4OA(const WorthTable& v, const SolutionTable& phi);

using SequentialConcept = std::function<SolutionTable(const WorthTable&)>;
using ExtendedConcept = std::function<ExtendedVector(const WorthTable&)>;

/// φ(u)(π) + φ(w)(π) = φ(u+w)(π) for every π and agent.
AxiomReport check_SA(const SequentialConcept& concept_fn, const WorthTable& u, const WorthTable& w);
/// ψ(u) + ψ(w) = ψ(u+w) for every agent.
AxiomReport check_EA(const ExtendedConcept& concept_fn, const WorthTable& u, const WorthTable& w);

/// Agents whose arrival never changes the worth: v(π+i) = v(π) for every π
/// without i, the empty sequence included.
std::vector<AgentId> find_null_players(const WorthTable& v);

AxiomReport check_SNP(const WorthTable& v, const SolutionTable& phi);
AxiomReport check_ENP(const WorthTable& v, std::span<const Rational> psi);

/// True iff v(π) = v(π_{i↔j}) for every π.
bool swap_invariant(const WorthTable& v, AgentId i, AgentId j);

AxiomReport check_SS(const WorthTable& v, const SolutionTable& phi);
AxiomReport check_ES(const WorthTable& v, std::span<const Rational> psi);

/// Σ ψ_i = average worth over the n! full-length sequences.
AxiomReport check_EE(const WorthTable& v, std::span<const Rational> psi);

/// Sequential concepts by name: "margsol", or "seqshare:<policy>" (DomainError
/// if the game has no basis solution).
SequentialConcept sequential_concept(std::string_view name);
/// Extended concepts by name: "extshap", or "reduce:<sequential name>".
ExtendedConcept extended_concept(std::string_view name);

struct Compatible {
  /// A basis solution with x ≥ Ext-Shap componentwise (the lexicographic minimum).
  std::vector<Rational> x;
};

struct CompatViolation {
  AgentId agent = 0;
  /// The largest payoff this agent receives at π* over all basis solutions.
  Rational cap;
  Rational extshap;
  /// False when cap < extshap for this agent alone; true when every agent can
  /// individually reach its Ext-Shap value but not all at once.
  bool joint = false;
  InfeasibilityCertificate certificate;
};

struct CompatNoBasis {
  InfeasibilityCertificate certificate;
};

using CompatVerdict = std::variant<Compatible, CompatViolation, CompatNoBasis>;

/// Whether some basis solution dominates Ext-Shap componentwise; a necessary
/// condition for any SeqShare table to reduce to Ext-Shap.
CompatVerdict check_extshap_compat(const WorthTable& v);

}  // namespace tcg
