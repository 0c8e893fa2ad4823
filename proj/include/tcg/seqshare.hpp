#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tcg/basis.hpp"
#include "tcg/game.hpp"
#include "tcg/solution_table.hpp"

namespace tcg {

/// Deterministic rules for splitting an arrival's marginal worth within headroom.
enum class ImprovizePolicy { kNewcomerFirst, kEarliestFirst, kProportionalHeadroom };

inline constexpr ImprovizePolicy kAllPolicies[] = {ImprovizePolicy::kNewcomerFirst,
                                                   ImprovizePolicy::kEarliestFirst,
                                                   ImprovizePolicy::kProportionalHeadroom};

/// "newcomer-first", "earliest-first", "proportional-headroom".
std::string to_string(ImprovizePolicy policy);
/// Throws DomainError on an unknown name.
ImprovizePolicy parse_policy(std::string_view name);

/// Splits `marginal` over P(π+j) for newcomer j after prefix π. Agent i may take
/// at most cap_i − current_i (the newcomer's current share is 0). Returns a
/// length-n vector, zero outside P(π+j), summing to `marginal`.
/// Requires marginal ≥ 0, every headroom ≥ 0 and total headroom ≥ marginal;
/// throws InvariantError otherwise.
std::vector<Rational> improvize(AgentId newcomer, const Sequence& prefix,
                                std::span<const Rational> current, std::span<const Rational> cap,
                                const Rational& marginal, ImprovizePolicy policy);

struct NoBasis {
  InfeasibilityCertificate certificate;
};

using SeqShareOutcome = std::variant<SolutionTable, NoBasis>;

/// Builds φ layer by layer from the canonical basis solution. Requires v monotone.
SeqShareOutcome run_seqshare(const WorthTable& v, ImprovizePolicy policy);

/// As above from a caller-supplied basis solution x (DomainError if x is not one).
SolutionTable run_seqshare(const WorthTable& v, ImprovizePolicy policy, std::span<const Rational> x);

enum class MembershipCondition {
  kZeroOutside,
  kBasisAtOptimal,
  kSingletonWorth,
  kNegativeShare,
  kHeadroomExceeded,
  kMarginalMismatch,
};

std::string to_string(MembershipCondition condition);

struct Certified {
  /// φ(π*), which is a basis solution.
  std::vector<Rational> x;
};

struct Rejected {
  MembershipCondition condition;
  /// The offending sequence, or the (prefix, extension) pair for per-step conditions.
  std::vector<Sequence> sequences;
  std::optional<AgentId> agent;
  std::string detail;
};

using MembershipVerdict = std::variant<Certified, Rejected>;

/// Decides whether φ could have been produced by some run of the SeqShare
/// mechanism: φ(π*) is a basis solution, singletons receive their own worth, and
/// every arrival splits its marginal into nonnegative shares within headroom to
/// φ(π*). Returns the first failing condition in that order.
MembershipVerdict check_membership(const WorthTable& v, const SolutionTable& phi);

}  // namespace tcg
