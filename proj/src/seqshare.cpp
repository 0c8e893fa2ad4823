#include "tcg/seqshare.hpp"

#include <algorithm>

#include "tcg/error.hpp"

namespace tcg {

namespace {

std::string agent_name(AgentId i) { return "agent " + std::to_string(i + 1); }

std::string step_name(const Sequence& from, const Sequence& to) {
  return "(" + from.to_string() + ") -> (" + to.to_string() + ")";
}

}  // namespace

std::string to_string(ImprovizePolicy policy) {
  switch (policy) {
    case ImprovizePolicy::kNewcomerFirst:
      return "newcomer-first";
    case ImprovizePolicy::kEarliestFirst:
      return "earliest-first";
    case ImprovizePolicy::kProportionalHeadroom:
      return "proportional-headroom";
  }
  return "unknown";
}

ImprovizePolicy parse_policy(std::string_view name) {
  for (ImprovizePolicy p : kAllPolicies) {
    if (to_string(p) == name) return p;
  }
  throw DomainError("unknown policy '" + std::string(name) +
                    "' (expected newcomer-first, earliest-first or proportional-headroom)");
}

std::vector<Rational> improvize(AgentId newcomer, const Sequence& prefix,
                                std::span<const Rational> current, std::span<const Rational> cap,
                                const Rational& marginal, ImprovizePolicy policy) {
  const std::size_t n = cap.size();
  if (current.size() != n || newcomer >= n || prefix.contains(newcomer)) {
    throw DomainError("improvize called with inconsistent arguments");
  }
  if (marginal < 0) {
    throw InvariantError("negative marginal " + to_string(marginal) + " on " +
                         step_name(prefix, prefix.extended(newcomer)));
  }
  const Sequence arrived = prefix.extended(newcomer);
  std::vector<Rational> headroom(n, Rational(0));
  Rational total = 0;
  for (AgentId i : arrived) {
    headroom[i] = cap[i] - (i == newcomer ? Rational(0) : current[i]);
    if (headroom[i] < 0) {
      throw InvariantError(agent_name(i) + " is already above its cap on " + prefix.to_string());
    }
    total += headroom[i];
  }
  if (total < marginal) {
    throw InvariantError("headroom " + to_string(total) + " cannot absorb marginal " +
                         to_string(marginal) + " on " + step_name(prefix, arrived));
  }

  std::vector<Rational> y(n, Rational(0));
  Rational left = marginal;
  auto fill = [&](AgentId i) {
    y[i] = std::min(left, headroom[i]);
    left -= y[i];
  };
  switch (policy) {
    case ImprovizePolicy::kNewcomerFirst:
      fill(newcomer);
      for (AgentId i : prefix) fill(i);
      break;
    case ImprovizePolicy::kEarliestFirst:
      for (AgentId i : arrived) fill(i);
      break;
    case ImprovizePolicy::kProportionalHeadroom:
      if (sgn(total) != 0) {
        for (AgentId i : arrived) y[i] = marginal * headroom[i] / total;
      }
      left = 0;
      break;
  }
  if (sgn(left) != 0) throw InvariantError("improvize left part of the marginal undistributed");
  return y;
}

SeqShareOutcome run_seqshare(const WorthTable& v, ImprovizePolicy policy) {
  BasisOutcome basis = solve(build_system(v));
  if (auto* infeasible = std::get_if<Infeasible>(&basis)) return NoBasis{infeasible->certificate};
  return run_seqshare(v, policy, std::get<Feasible>(basis).x);
}

SolutionTable run_seqshare(const WorthTable& v, ImprovizePolicy policy, std::span<const Rational> x) {
  if (!is_basis_solution(v, x).holds) throw DomainError("supplied vector is not a basis solution");
  const SequenceSpace& space = v.space();
  const std::size_t n = v.agents();
  const std::size_t star = space.index_of(optimal_sequence(v));
  SolutionTable phi(n);
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const std::size_t parent = space.parent(idx);
    const Sequence& seq = space.at(idx);
    const Sequence& prefix = space.at(parent);
    const std::span<const Rational> current = phi.at_index(parent);
    std::vector<Rational> y = improvize(seq.last(), prefix, current, x,
                                        v.at_index(idx) - v.at_index(parent), policy);
    for (AgentId i = 0; i < n; ++i) y[i] += current[i];
    if (idx == star && !std::equal(y.begin(), y.end(), x.begin(), x.end())) {
      throw InvariantError("incremental payoff at the optimal sequence differs from the basis solution");
    }
    phi.set_index(idx, y);
  }
  return phi;
}

std::string to_string(MembershipCondition condition) {
  switch (condition) {
    case MembershipCondition::kZeroOutside:
      return "zero-outside";
    case MembershipCondition::kBasisAtOptimal:
      return "basis-at-optimal";
    case MembershipCondition::kSingletonWorth:
      return "singleton-worth";
    case MembershipCondition::kNegativeShare:
      return "negative-share";
    case MembershipCondition::kHeadroomExceeded:
      return "headroom-exceeded";
    case MembershipCondition::kMarginalMismatch:
      return "marginal-mismatch";
  }
  return "unknown";
}

MembershipVerdict check_membership(const WorthTable& v, const SolutionTable& phi) {
  if (phi.agents() != v.agents()) throw DomainError("game and table have different agent counts");
  const SequenceSpace& space = v.space();
  const std::size_t n = v.agents();

  if (auto bad = phi.zero_outside_violation()) {
    return Rejected{MembershipCondition::kZeroOutside, {bad->first}, bad->second,
                    agent_name(bad->second) + " is paid " + to_string(phi(bad->first, bad->second)) +
                        " outside (" + bad->first.to_string() + ")"};
  }

  const Sequence star = optimal_sequence(v);
  const std::span<const Rational> xs = phi.at(star);
  const std::vector<Rational> x(xs.begin(), xs.end());
  if (BasisCheck check = is_basis_solution(v, x); !check.holds) {
    std::vector<Sequence> where = check.violations;
    if (!check.equality_holds) where.insert(where.begin(), star);
    return Rejected{MembershipCondition::kBasisAtOptimal, where, std::nullopt,
                    check.equality_holds ? "payoff at (" + star.to_string() +
                                               ") undercuts the worth of (" +
                                               check.violations.front().to_string() + ")"
                                         : "payoff at (" + star.to_string() +
                                               ") does not sum to its worth"};
  }

  for (AgentId i = 0; i < n; ++i) {
    const Sequence single{i};
    if (phi(single, i) != v(single)) {
      return Rejected{MembershipCondition::kSingletonWorth, {single}, i,
                      agent_name(i) + " alone receives " + to_string(phi(single, i)) +
                          " instead of " + to_string(v(single))};
    }
  }

  for (std::size_t idx = space.layer_begin(2); idx < space.size(); ++idx) {
    const std::size_t parent = space.parent(idx);
    const Sequence& from = space.at(parent);
    const Sequence& to = space.at(idx);
    const auto before = phi.at_index(parent);
    const auto after = phi.at_index(idx);
    Rational sum = 0;
    for (AgentId i : to) {
      const Rational y = after[i] - before[i];
      if (y < 0) {
        return Rejected{MembershipCondition::kNegativeShare, {from, to}, i,
                        agent_name(i) + " drops from " + to_string(before[i]) + " to " +
                            to_string(after[i]) + " on " + step_name(from, to)};
      }
      if (y > x[i] - before[i]) {
        return Rejected{MembershipCondition::kHeadroomExceeded, {from, to}, i,
                        agent_name(i) + " reaches " + to_string(after[i]) + " above its payoff " +
                            to_string(x[i]) + " at the optimal sequence on " + step_name(from, to)};
      }
      sum += y;
    }
    const Rational marginal = v.at_index(idx) - v.at_index(parent);
    if (sum != marginal) {
      return Rejected{MembershipCondition::kMarginalMismatch, {from, to}, std::nullopt,
                      "shares sum to " + to_string(sum) + " but the marginal is " +
                          to_string(marginal) + " on " + step_name(from, to)};
    }
  }
  return Certified{x};
}

}  // namespace tcg
