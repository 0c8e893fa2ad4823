#include "tcg/repro.hpp"

#include <functional>

#include "tcg/axioms.hpp"
#include "tcg/basis.hpp"
#include "tcg/error.hpp"
#include "tcg/generators.hpp"
#include "tcg/seqshare.hpp"
#include "tcg/shapley.hpp"

namespace tcg {

namespace {

std::string vec(std::span<const Rational> xs) {
  std::string out = "(";
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + to_string(xs[k]);
  return out + ")";
}

std::vector<Rational> rs(std::initializer_list<Rational> xs) { return xs; }

bool same(std::span<const Rational> a, const std::vector<Rational>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::string basis_text(const BasisOutcome& o) {
  if (auto* f = std::get_if<Feasible>(&o)) return "feasible " + vec(f->x);
  return "infeasible: " + std::get<Infeasible>(o).certificate.to_string();
}

std::string table_text(const SolutionTable& phi) {
  std::string out;
  const SequenceSpace& space = phi.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    out += (idx > 1 ? " " : "") + std::string("(") + space.at(idx).to_string() + ")=" +
           vec(phi.at_index(idx));
  }
  return out;
}

std::string compat_text(const CompatVerdict& c) {
  if (std::holds_alternative<Compatible>(c)) return "compatible";
  if (std::holds_alternative<CompatNoBasis>(c)) return "no basis";
  const auto& v = std::get<CompatViolation>(c);
  return "violation agent " + std::to_string(v.agent + 1) + ": cap " + to_string(v.cap) +
         " < Ext-Shap " + to_string(v.extshap);
}

class Claims {
 public:
  void add(std::string id, std::string claim, const std::function<std::pair<bool, std::string>()>& check) {
    ClaimResult r{std::move(id), std::move(claim), false, ""};
    try {
      auto [ok, observed] = check();
      r.passed = ok;
      r.observed = std::move(observed);
    } catch (const std::exception& e) {
      r.observed = std::string("error: ") + e.what();
    }
    results_.push_back(std::move(r));
  }
  std::vector<ClaimResult> take() { return std::move(results_); }

 private:
  std::vector<ClaimResult> results_;
};

void basic_example_claims(Claims& c) {
  const WorthTable v = fixture("basic-example");
  c.add("basic-example.optimal", "optimal sequence is (2 1)", [&] {
    const Sequence s = optimal_sequence(v);
    return std::pair{s == Sequence{1, 0}, "(" + s.to_string() + ")"};
  });
  c.add("basic-example.basis", "canonical basis solution is (1, 2)", [&] {
    const BasisOutcome o = solve(build_system(v));
    auto* f = std::get_if<Feasible>(&o);
    return std::pair{f && same(f->x, rs({1, 2})), basis_text(o)};
  });
  c.add("basic-example.seqshare", "newcomer-first gives phi(1 2)=(1, 1), phi(2 1)=(1, 2)", [&] {
    const auto t = std::get<SolutionTable>(run_seqshare(v, ImprovizePolicy::kNewcomerFirst));
    return std::pair{same(t.at(Sequence{0, 1}), rs({1, 1})) && same(t.at(Sequence{1, 0}), rs({1, 2})),
                     table_text(t)};
  });
  c.add("basic-example.phi.SE", "phi fails SE at (1 2)", [&] {
    const AxiomReport r = check_SE(v, example_table("phi"));
    bool at12 = false;
    for (const Witness& w : r.witnesses) at12 = at12 || w.sequences.front() == Sequence{0, 1};
    return std::pair{!r.holds && at12, std::to_string(r.violation_count) + " SE violation(s)"};
  });
  c.add("basic-example.phi-prime.OIR", "phi' fails OIR at (1) -> (1 2) for agent 1", [&] {
    const AxiomReport r = check_OIR(v, example_table("phi-prime"));
    const bool ok = !r.holds && r.witnesses.front().sequences == std::vector<Sequence>{Sequence{0}, Sequence{0, 1}} &&
                    r.witnesses.front().agents.front() == 0;
    return std::pair{ok, r.holds ? "holds" : r.witnesses.front().description};
  });
  c.add("basic-example.phi-double-prime.I4OA", "phi'' fails I4OA for agent 1", [&] {
    const AxiomReport r = check_I4OA(v, example_table("phi-double-prime"));
    const bool ok = !r.holds && r.witnesses.front().agents.front() == 0;
    return std::pair{ok, r.holds ? "holds" : r.witnesses.front().description};
  });
  for (const std::string& name : example_table_names()) {
    c.add("basic-example." + name + ".membership", name + " is not a SeqShare table", [&] {
      const MembershipVerdict m = check_membership(v, example_table(name));
      auto* r = std::get_if<Rejected>(&m);
      return std::pair{r != nullptr, r ? to_string(r->condition) + ": " + r->detail : "certified"};
    });
  }
  for (ImprovizePolicy p : kAllPolicies) {
    c.add("basic-example.seqshare." + to_string(p), to_string(p) + " output is certified", [&] {
      const auto t = std::get<SolutionTable>(run_seqshare(v, p));
      const bool ok = std::holds_alternative<Certified>(check_membership(v, t)) &&
                      check_OIR(v, t).holds && check_SE(v, t).holds && check_I4OA(v, t).holds;
      return std::pair{ok, table_text(t)};
    });
  }
  c.add("basic-example.decompose", "carrier coefficients are 1, 1, 1, 2", [&] {
    const CarrierDecomposition d = decompose(v);
    std::vector<Rational> alpha;
    for (std::size_t idx = 1; idx < d.space().size(); ++idx) alpha.push_back(d.at_index(idx));
    return std::pair{alpha == rs({1, 1, 1, 2}), vec(alpha)};
  });
}

void sanchez_claims(Claims& c) {
  const WorthTable v = fixture("sanchez");
  c.add("sanchez.optimal", "optimal sequence is (2 1)", [&] {
    const Sequence s = optimal_sequence(v);
    return std::pair{s == Sequence{1, 0}, "(" + s.to_string() + ")"};
  });
  for (ImprovizePolicy p : kAllPolicies) {
    c.add("sanchez.seqshare." + to_string(p),
          "phi(1)=(1, 0), phi(2)=(0, 1), phi(1 2)=(1, 0), phi(2 1)=(1, 1)", [&] {
            const auto t = std::get<SolutionTable>(run_seqshare(v, p));
            const bool ok = same(t.at(Sequence{0}), rs({1, 0})) && same(t.at(Sequence{1}), rs({0, 1})) &&
                            same(t.at(Sequence{0, 1}), rs({1, 0})) && same(t.at(Sequence{1, 0}), rs({1, 1}));
            return std::pair{ok, table_text(t)};
          });
  }
  c.add("sanchez.reduce", "the reduction is (1, 1/2)", [&] {
    const ExtendedVector r = reduce(std::get<SolutionTable>(run_seqshare(v, ImprovizePolicy::kNewcomerFirst)));
    return std::pair{r == rs({1, fraction(1, 2)}), vec(r)};
  });
  c.add("sanchez.SS", "agents 1 and 2 fail the swap hypothesis, so SS is vacuous", [&] {
    const AxiomReport r = check_SS(v, margsol(v));
    return std::pair{r.vacuous && r.holds && r.skipped_pairs.size() == 1,
                     std::to_string(r.skipped_pairs.size()) + " pair(s) skipped"};
  });
}

void counter_general_claims(Claims& c) {
  const WorthTable v3 = fixture("counter-general", 7, 3);
  const WorthTable v4 = fixture("counter-general", 7, 4);
  c.add("counter-general(7,3).bounds", "bounds x1 >= 1, x2 >= 3, x3 >= 4 and x1+x2+x3 = 8", [&] {
    const BasisSystem s = build_system(v3);
    const bool ok = s.bound_for(1).bound == 1 && s.bound_for(2).bound == 3 &&
                    s.bound_for(4).bound == 4 && s.total == 8;
    return std::pair{ok, "total " + to_string(s.total)};
  });
  c.add("counter-general(7,3).basis", "the basis solution is (1, 3, 4) under every minimization order", [&] {
    const BasisSystem s = build_system(v3);
    std::vector<AgentId> order{0, 1, 2};
    bool ok = true;
    std::string seen;
    do {
      const BasisOutcome o = solve(s, order);
      auto* f = std::get_if<Feasible>(&o);
      ok = ok && f && same(f->x, rs({1, 3, 4}));
      seen = basis_text(o);
    } while (std::next_permutation(order.begin(), order.end()));
    return std::pair{ok, seen};
  });
  c.add("counter-general(7,3).extshap", "Ext-Shap of agent 1 is 8/6", [&] {
    const ExtendedVector e = ext_shap(v3);
    return std::pair{e[0] == fraction(8, 6), vec(e)};
  });
  c.add("counter-general(7,3).compat", "agent 1 is capped at 1 < 8/6", [&] {
    const CompatVerdict verdict = check_extshap_compat(v3);
    auto* viol = std::get_if<CompatViolation>(&verdict);
    const bool ok = viol && viol->agent == 0 && viol->cap == 1 && viol->extshap == fraction(8, 6);
    return std::pair{ok, compat_text(verdict)};
  });
  c.add("counter-general(7,4).convex", "the game is convex", [&] {
    const GameClassReport r = validate(v4);
    return std::pair{r.convex && r.monotone, r.convex ? "convex" : r.violations.front().description};
  });
  c.add("counter-general(7,4).basis", "no basis solution: 1 + 4 + 4 > 8", [&] {
    const BasisOutcome o = solve(build_system(v4));
    auto* inf = std::get_if<Infeasible>(&o);
    const bool ok = inf && inf->certificate.weighted_sum == 9 && inf->certificate.total == 8 &&
                    inf->certificate.terms.size() == 3;
    return std::pair{ok, basis_text(o)};
  });
}

void counter_simple_claims(Claims& c) {
  const WorthTable v = fixture("counter-simple");
  c.add("counter-simple.class", "the game is simple and monotone", [&] {
    const GameClassReport r = validate(v);
    return std::pair{r.simple && r.monotone, r.simple ? "simple" : "not simple"};
  });
  c.add("counter-simple.basis", "the basis solution is (1, 0, 0)", [&] {
    const BasisOutcome o = solve(build_system(v));
    auto* f = std::get_if<Feasible>(&o);
    return std::pair{f && same(f->x, rs({1, 0, 0})), basis_text(o)};
  });
  c.add("counter-simple.extshap", "Ext-Shap of agent 2 is 1/6", [&] {
    const ExtendedVector e = ext_shap(v);
    return std::pair{e[1] == fraction(1, 6), vec(e)};
  });
  c.add("counter-simple.compat", "agent 2 is capped at 0 < 1/6", [&] {
    const CompatVerdict verdict = check_extshap_compat(v);
    auto* viol = std::get_if<CompatViolation>(&verdict);
    return std::pair{viol && viol->agent == 1 && viol->cap == 0, compat_text(verdict)};
  });
  c.add("counter-simple-infeasible.basis", "with v(2 3) = 1 no basis solution exists", [&] {
    const BasisOutcome o = solve(build_system(fixture("counter-simple-infeasible")));
    return std::pair{std::holds_alternative<Infeasible>(o), basis_text(o)};
  });
}

void margsol_claims(Claims& c) {
  const WorthTable v = fixture("margsol-i4oa");
  c.add("margsol-i4oa.monotone", "the game is monotone", [&] {
    return std::pair{validate(v).monotone, std::string(validate(v).monotone ? "monotone" : "not monotone")};
  });
  c.add("margsol-i4oa.margsol", "MargSol(1 2) = (3, 5) and MargSol(2 1) = (4, 1)", [&] {
    const SolutionTable m = margsol(v);
    const bool ok = same(m.at(Sequence{0, 1}), rs({3, 5})) && same(m.at(Sequence{1, 0}), rs({4, 1})) &&
                    same(m.at(Sequence{0}), rs({3, 0})) && same(m.at(Sequence{1}), rs({0, 1}));
    return std::pair{ok, table_text(m)};
  });
  c.add("margsol-i4oa.I4OA", "MargSol fails I4OA for agent 1: 3 < 4", [&] {
    const AxiomReport r = check_I4OA(v, margsol(v));
    const bool ok = !r.holds && r.witnesses.front().agents.front() == 0 &&
                    r.witnesses.front().rhs == 3 && r.witnesses.front().lhs == 4;
    return std::pair{ok, r.holds ? "holds" : r.witnesses.front().description};
  });
  c.add("margsol-i4oa.extshap", "Ext-Shap is (7/2, 3)", [&] {
    const ExtendedVector e = ext_shap(v);
    return std::pair{e == rs({fraction(7, 2), 3}), vec(e)};
  });
}

void carrier_claims(Claims& c) {
  c.add("carrier.extshap", "u over (1 2) with n = 3 gives its last agent 1/6", [&] {
    const ExtendedVector e = ext_shap(carrier_game(3, Sequence{0, 1}, 1));
    return std::pair{e == rs({0, fraction(1, 6), 0}) && e == carrier_extshap(3, Sequence{0, 1}, 1), vec(e)};
  });
  c.add("carrier.null", "u over (1 2) with n = 3 has null players 1 and 3", [&] {
    const std::vector<AgentId> null = find_null_players(carrier_game(3, Sequence{0, 1}, 1));
    return std::pair{null == std::vector<AgentId>{0, 2}, std::to_string(null.size()) + " null player(s)"};
  });
}

}  // namespace

std::vector<ClaimResult> run_fixture_claims() {
  Claims c;
  basic_example_claims(c);
  sanchez_claims(c);
  counter_general_claims(c);
  counter_simple_claims(c);
  margsol_claims(c);
  carrier_claims(c);
  return c.take();
}

}  // namespace tcg
