#include "tcg/basis.hpp"

#include <algorithm>
#include <numeric>

#include "tcg/error.hpp"
#include "tcg/lp.hpp"

namespace tcg {

namespace {

std::vector<AgentMask> canonical_subsets(std::size_t n) {
  std::vector<AgentMask> masks;
  for (AgentMask m = 1; m < (AgentMask{1} << n); ++m) masks.push_back(m);
  auto members = [](AgentMask m) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i) {
      if ((m >> i) & 1U) out.push_back(i);
    }
    return out;
  };
  std::sort(masks.begin(), masks.end(), [&](AgentMask a, AgentMask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return members(a) < members(b);
  });
  return masks;
}

Rational mask_sum(AgentMask mask, std::span<const Rational> x) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((mask >> i) & 1U) s += x[i];
  }
  return s;
}

// Cutting-plane driver over the shifted variables s_i = x_i − lower_i ≥ 0.
// Rows enter the LP only once the current point violates them; the final point
// satisfies every row, so it is optimal (or the restricted LP is already infeasible).
class BasisLp {
 public:
  BasisLp(const BasisSystem& system, std::span<const std::optional<Rational>> floors)
      : system_(system), n_(system.agents) {
    lower_.resize(n_);
    floor_active_.assign(n_, false);
    for (AgentId i = 0; i < n_; ++i) {
      lower_[i] = system.bound_for(AgentMask{1} << i).bound;
      if (i < floors.size() && floors[i] && *floors[i] > lower_[i]) {
        lower_[i] = *floors[i];
        floor_active_[i] = true;
      }
    }
    Rational lower_sum = std::accumulate(lower_.begin(), lower_.end(), Rational(0));
    // Row 0 is the equality Σ x = v(π*).
    problem_.variables = n_;
    problem_.constraints.push_back(
        {std::vector<Rational>(n_, Rational(1)), lp::Relation::kEqual, system.total - lower_sum});
    row_subsets_.push_back(system_.inequalities.back().subset);
  }

  void fix(AgentId agent, const Rational& x_value) {
    std::vector<Rational> row(n_, Rational(0));
    row[agent] = 1;
    problem_.constraints.push_back({row, lp::Relation::kEqual, x_value - lower_[agent]});
    row_subsets_.push_back(0);
  }

  // Minimizes `objective` (over x). Returns either the point x or a Farkas vector.
  std::variant<std::vector<Rational>, InfeasibilityCertificate> run(
      const std::vector<Rational>& objective) {
    problem_.objective = objective;
    for (;;) {
      const lp::Result r = lp::minimize(problem_);
      if (r.status == lp::Status::kInfeasible) return certificate(r.farkas);
      if (r.status != lp::Status::kOptimal) throw InvariantError("basis LP is unbounded");
      std::vector<Rational> x(n_);
      for (AgentId i = 0; i < n_; ++i) x[i] = r.x[i] + lower_[i];
      if (!add_violated_rows(x)) return x;
    }
  }

 private:
  bool add_violated_rows(std::span<const Rational> x) {
    bool added = false;
    for (const SubsetBound& b : system_.inequalities) {
      if (popcount(b.subset) < 2 || b.subset == system_.inequalities.back().subset) continue;
      if (mask_sum(b.subset, x) >= b.bound) continue;
      std::vector<Rational> row(n_, Rational(0));
      Rational rhs = b.bound;
      for (AgentId i = 0; i < n_; ++i) {
        if ((b.subset >> i) & 1U) {
          row[i] = 1;
          rhs -= lower_[i];
        }
      }
      problem_.constraints.push_back({row, lp::Relation::kGreaterEqual, rhs});
      row_subsets_.push_back(b.subset);
      added = true;
    }
    return added;
  }

  // Normalizes Farkas multipliers into a balanced collection of subset bounds.
  InfeasibilityCertificate certificate(const std::vector<Rational>& y) {
    // Fixing rows only occur after feasibility was established, so they carry no weight.
    for (std::size_t r = 1; r < y.size(); ++r) {
      if (row_subsets_[r] == 0 && sgn(y[r]) != 0) {
        throw InvariantError("infeasibility after the basis was found feasible");
      }
    }
    const Rational mu = -y[0];
    if (mu <= 0) throw InvariantError("degenerate basis infeasibility certificate");
    InfeasibilityCertificate cert;
    cert.total = system_.total;
    std::vector<Rational> coverage(n_, Rational(0));
    for (std::size_t r = 1; r < y.size(); ++r) {
      if (sgn(y[r]) == 0) continue;
      const Rational w = y[r] / mu;
      for (AgentId i = 0; i < n_; ++i) {
        if ((row_subsets_[r] >> i) & 1U) coverage[i] += w;
      }
      cert.terms.push_back({row_subsets_[r], w, system_.bound_for(row_subsets_[r]).bound, false});
    }
    for (AgentId i = 0; i < n_; ++i) {
      const Rational w = 1 - coverage[i];
      if (sgn(w) == 0) continue;
      cert.terms.push_back({AgentMask{1} << i, w, lower_[i], floor_active_[i]});
    }
    std::sort(cert.terms.begin(), cert.terms.end(), [](const auto& a, const auto& b) {
      if (popcount(a.subset) != popcount(b.subset)) return popcount(a.subset) < popcount(b.subset);
      return a.subset < b.subset;
    });
    cert.weighted_sum = 0;
    for (const CertificateTerm& t : cert.terms) cert.weighted_sum += t.weight * t.bound;
    return cert;
  }

  const BasisSystem& system_;
  std::size_t n_;
  std::vector<Rational> lower_;
  std::vector<bool> floor_active_;
  lp::Problem problem_;
  std::vector<AgentMask> row_subsets_;
};

}  // namespace

const SubsetBound& BasisSystem::bound_for(AgentMask subset) const {
  for (const SubsetBound& b : inequalities) {
    if (b.subset == subset) return b;
  }
  throw DomainError("no bound for subset " + mask_to_string(subset));
}

std::string InfeasibilityCertificate::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const CertificateTerm& t = terms[k];
    if (k > 0) out += " + ";
    if (t.weight != 1) out += tcg::to_string(t.weight) + "*";
    out += "x" + mask_to_string(t.subset) + ">=" + tcg::to_string(t.bound);
  }
  return out + " gives " + tcg::to_string(weighted_sum) + " > " + tcg::to_string(total);
}

BasisSystem build_system(const WorthTable& v) {
  const SequenceSpace& space = v.space();
  const std::size_t n = v.agents();
  BasisSystem sys;
  sys.agents = n;
  sys.optimal = optimal_sequence(v);
  sys.total = v(sys.optimal);

  std::vector<std::optional<std::size_t>> best(std::size_t{1} << n);
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    auto& slot = best[space.at(idx).members()];
    if (!slot || v.at_index(idx) > v.at_index(*slot)) slot = idx;
  }
  for (AgentMask m : canonical_subsets(n)) {
    sys.inequalities.push_back({m, v.at_index(*best[m]), space.at(*best[m])});
  }
  return sys;
}

BasisOutcome solve(const BasisSystem& system, std::span<const AgentId> order,
                   std::span<const std::optional<Rational>> floors) {
  const std::size_t n = system.agents;
  std::vector<AgentId> sequence_of_minimization(order.begin(), order.end());
  if (sequence_of_minimization.empty()) {
    sequence_of_minimization.resize(n);
    std::iota(sequence_of_minimization.begin(), sequence_of_minimization.end(), AgentId{0});
  }
  {
    std::vector<AgentId> sorted = sequence_of_minimization;
    std::sort(sorted.begin(), sorted.end());
    for (AgentId i = 0; i < n; ++i) {
      if (sorted.size() != n || sorted[i] != i) throw DomainError("order must permute the agents");
    }
  }

  BasisLp lp(system, floors);
  std::vector<Rational> x;
  for (AgentId k : sequence_of_minimization) {
    std::vector<Rational> objective(n, Rational(0));
    objective[k] = 1;
    auto step = lp.run(objective);
    if (auto* cert = std::get_if<InfeasibilityCertificate>(&step)) {
      if (!verify_certificate(system, *cert, floors)) {
        throw InvariantError("basis infeasibility certificate failed verification");
      }
      return Infeasible{std::move(*cert)};
    }
    x = std::get<std::vector<Rational>>(std::move(step));
    lp.fix(k, x[k]);
  }
  return Feasible{std::move(x)};
}

std::optional<Rational> max_coordinate(const BasisSystem& system, AgentId agent) {
  BasisLp lp(system, {});
  std::vector<Rational> objective(system.agents, Rational(0));
  objective.at(agent) = -1;
  auto step = lp.run(objective);
  if (std::holds_alternative<InfeasibilityCertificate>(step)) return std::nullopt;
  return std::get<std::vector<Rational>>(step)[agent];
}

bool verify_certificate(const BasisSystem& system, const InfeasibilityCertificate& certificate,
                        std::span<const std::optional<Rational>> floors) {
  std::vector<Rational> coverage(system.agents, Rational(0));
  Rational sum = 0;
  for (const CertificateTerm& t : certificate.terms) {
    if (t.weight < 0) return false;
    if (t.floor) {
      const AgentId i = static_cast<AgentId>(__builtin_ctz(t.subset));
      if (popcount(t.subset) != 1 || i >= floors.size() || !floors[i] || *floors[i] != t.bound) {
        return false;
      }
    } else if (system.bound_for(t.subset).bound != t.bound) {
      return false;
    }
    for (AgentId i = 0; i < system.agents; ++i) {
      if ((t.subset >> i) & 1U) coverage[i] += t.weight;
    }
    sum += t.weight * t.bound;
  }
  for (const Rational& c : coverage) {
    if (c != 1) return false;
  }
  return sum == certificate.weighted_sum && certificate.total == system.total && sum > system.total;
}

BasisCheck is_basis_solution(const WorthTable& v, std::span<const Rational> x) {
  if (x.size() != v.agents()) throw DomainError("basis vector has the wrong length");
  BasisCheck check;
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    if (mask_sum(space.at(idx).members(), x) < v.at_index(idx)) {
      check.violations.push_back(space.at(idx));
    }
  }
  const Sequence star = optimal_sequence(v);
  check.equality_holds = mask_sum(star.members(), x) == v(star);
  check.holds = check.violations.empty() && check.equality_holds;
  return check;
}

}  // namespace tcg
