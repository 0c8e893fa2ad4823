#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tcg/axioms.hpp"
#include "tcg/error.hpp"
#include "tcg/generators.hpp"
#include "tcg/io.hpp"
#include "tcg/seqshare.hpp"
#include "tcg/shapley.hpp"

using namespace tcg;

namespace {

using Relation = Witness::Relation;

Sequence s1(std::initializer_list<std::size_t> ids) { return Sequence::from_one_based(ids); }

WorthTable additive(std::size_t n) {
  WorthTable v(n);
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) v.set_index(idx, Rational(space.at(idx).size()));
  return v;
}

// v'(π) = max(v(π), v(π with i and j exchanged)) is invariant under that swap.
WorthTable symmetrize(const WorthTable& v, AgentId i, AgentId j) {
  WorthTable out(v.agents());
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    out.set_index(idx, std::max(v.at_index(idx), v(swap(space.at(idx), i, j))));
  }
  return out;
}

SolutionTable random_table(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SolutionTable t(n);
  const SequenceSpace& space = t.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    for (AgentId i : space.at(idx)) t.set(space.at(idx), i, Rational(static_cast<long>(rng() % 4)));
  }
  return t;
}

void check_witnesses_are_genuine(const AxiomReport& r) {
  CHECK(r.holds == (r.violation_count == 0));
  CHECK(r.witnesses.size() == std::min(r.violation_count, AxiomReport::kMaxWitnesses));
  for (const Witness& w : r.witnesses) CHECK_FALSE(w.relation_holds());
}

}  // namespace

TEST_SUITE("axioms") {
  TEST_CASE("names round trip") {
    for (Axiom a : kAllAxioms) CHECK(parse_axiom(to_string(a)) == a);
    CHECK(parse_axiom("oir") == Axiom::kOIR);
    CHECK_THROWS_AS(parse_axiom("XYZ"), DomainError);
  }

  TEST_CASE("OIR on the hand-built tables") {
    const WorthTable v = fixture("basic-example");
    const AxiomReport r = check_OIR(v, example_table("phi-prime"));
    REQUIRE_FALSE(r.holds);
    const Witness& w = r.witnesses.front();
    CHECK(w.sequences == std::vector<Sequence>{s1({1}), s1({1, 2})});
    CHECK(w.agents == std::vector<AgentId>{0});
    CHECK(w.lhs == 1);
    CHECK(w.rhs == 0);
    CHECK(check_OIR(v, SolutionTable(2)).holds);
    CHECK(check_OIR(v, margsol(v)).holds);
  }

  TEST_CASE("SE on the hand-built tables") {
    const WorthTable v = fixture("basic-example");
    const AxiomReport r = check_SE(v, example_table("phi"));
    REQUIRE_FALSE(r.holds);
    CHECK(std::any_of(r.witnesses.begin(), r.witnesses.end(),
                      [](const Witness& w) { return w.sequences.front() == s1({1, 2}); }));
    CHECK(check_SE(v, margsol(v)).holds);
    CHECK(check_SE(v, example_table("phi-prime")).holds);
  }

  TEST_CASE("I4OA examples") {
    const WorthTable v = fixture("margsol-i4oa");
    const AxiomReport r = check_I4OA(v, margsol(v));
    REQUIRE_FALSE(r.holds);
    const Witness& w = r.witnesses.front();
    CHECK(w.agents == std::vector<AgentId>{0});
    CHECK(w.lhs == 4);
    CHECK(w.rhs == 3);
    CHECK(w.description == "agent 1 receives 4 at (2 1) but only 3 at the optimal sequence (1 2)");
    CHECK(check_I4OA(WorthTable(3), SolutionTable(3)).holds);
    const AxiomReport dprime = check_I4OA(fixture("basic-example"), example_table("phi-double-prime"));
    REQUIRE_FALSE(dprime.holds);
    CHECK(dprime.witnesses.front().agents == std::vector<AgentId>{0});
  }

  TEST_CASE("additivity examples") {
    const SequentialConcept per_capita = [](const WorthTable& v) {
      SolutionTable t(v.agents());
      const SequenceSpace& space = v.space();
      for (std::size_t idx = 1; idx < space.size(); ++idx) {
        const Sequence& s = space.at(idx);
        for (AgentId i : s) t.set(s, i, v.at_index(idx) / Rational(s.size()));
      }
      return t;
    };
    const SequentialConcept clamped = [](const WorthTable& v) {
      SolutionTable t = margsol(v);
      const SequenceSpace& space = t.space();
      for (std::size_t idx = 1; idx < space.size(); ++idx) {
        for (AgentId i : space.at(idx)) t.set(space.at(idx), i, std::min(t(space.at(idx), i), Rational(1)));
      }
      return t;
    };
    const WorthTable u = fixture("basic-example");
    const WorthTable w = fixture("sanchez");
    CHECK(check_SA(margsol, u, w).holds);
    CHECK(check_SA(per_capita, u, w).holds);
    // u and w each pay agent 1 exactly 1 at (1); their sum would pay 2 but is clamped.
    const AxiomReport r = check_SA(clamped, u, w);
    REQUIRE_FALSE(r.holds);
    check_witnesses_are_genuine(r);
    const Witness& first = r.witnesses.front();
    CHECK(first.sequences == std::vector<Sequence>{s1({1})});
    CHECK(first.lhs == 2);
    CHECK(first.rhs == 1);
    CHECK(clamped(u)(s1({1}), 0) + clamped(w)(s1({1}), 0) == first.lhs);
    CHECK(check_EA(ext_shap, u, w).holds);
    CHECK_FALSE(check_EA([&](const WorthTable& v) { return reduce(clamped(v)); }, u, w).holds);
  }

  TEST_CASE("null player examples") {
    CHECK(find_null_players(carrier_game(3, s1({1, 2}), 1)) == std::vector<AgentId>{0, 2});
    CHECK(find_null_players(additive(3)).empty());
    CHECK(find_null_players(WorthTable(3)) == std::vector<AgentId>{0, 1, 2});
  }

  TEST_CASE("SNP and ENP") {
    const WorthTable v = carrier_game(3, s1({1, 2}), fraction(3, 2));
    CHECK(check_SNP(v, margsol(v)).holds);
    CHECK(check_ENP(v, ext_shap(v)).holds);
    SolutionTable t = margsol(v);
    t.set(s1({3, 1}), 2, fraction(1, 100));
    const AxiomReport r = check_SNP(v, t);
    REQUIRE_FALSE(r.holds);
    CHECK(r.violation_count == 1);
    CHECK(r.witnesses.front().sequences == std::vector<Sequence>{s1({3, 1})});
    CHECK(r.witnesses.front().agents == std::vector<AgentId>{2});
    const AxiomReport none = check_SNP(additive(2), margsol(additive(2)));
    CHECK(none.holds);
    CHECK(none.vacuous);
  }

  TEST_CASE("swap cases") {
    CHECK(swap(s1({1, 3}), 0, 1) == s1({2, 3}));
    CHECK(swap(s1({1, 2}), 0, 1) == s1({2, 1}));
    CHECK(swap(s1({3}), 0, 1) == s1({3}));
    CHECK(swap_invariant(additive(3), 0, 2));
    CHECK_FALSE(swap_invariant(fixture("sanchez"), 0, 1));
  }

  TEST_CASE("symmetry examples") {
    const WorthTable v = additive(3);
    CHECK(check_SS(v, margsol(v)).holds);
    CHECK(check_ES(v, ext_shap(v)).holds);
    const WorthTable s = fixture("sanchez");
    const AxiomReport vacuous = check_SS(s, margsol(s));
    CHECK(vacuous.holds);
    CHECK(vacuous.vacuous);
    CHECK(vacuous.skipped_pairs.size() == 1);
    SolutionTable t = margsol(v);
    t.set(s1({1, 2}), std::vector<Rational>{2, 0, 0});
    const AxiomReport r = check_SS(v, t);
    REQUIRE_FALSE(r.holds);
    check_witnesses_are_genuine(r);
    CHECK_FALSE(check_ES(v, std::vector<Rational>{2, 1, 0}).holds);
  }

  TEST_CASE("EE examples") {
    const WorthTable v = fixture("counter-general", 7, 3);
    CHECK(check_EE(v, ext_shap(v)).holds);
    CHECK_FALSE(check_EE(v, std::vector<Rational>{0, 0, 0}).holds);
    CHECK(check_EE(v, reduce(std::get<SolutionTable>(run_seqshare(v, ImprovizePolicy::kEarliestFirst)))).holds);
  }

  TEST_CASE("compat examples") {
    const CompatVerdict cg = check_extshap_compat(fixture("counter-general", 7, 3));
    REQUIRE(std::holds_alternative<CompatViolation>(cg));
    CHECK(std::get<CompatViolation>(cg).agent == AgentId{0});
    CHECK(std::get<CompatViolation>(cg).cap == 1);
    CHECK(std::get<CompatViolation>(cg).extshap == fraction(4, 3));
    CHECK_FALSE(std::get<CompatViolation>(cg).joint);

    const CompatVerdict cs = check_extshap_compat(fixture("counter-simple"));
    REQUIRE(std::holds_alternative<CompatViolation>(cs));
    CHECK(std::get<CompatViolation>(cs).agent == AgentId{1});
    CHECK(std::get<CompatViolation>(cs).cap == 0);
    CHECK(std::get<CompatViolation>(cs).extshap == fraction(1, 6));

    const CompatVerdict sym = check_extshap_compat(additive(2));
    REQUIRE(std::holds_alternative<Compatible>(sym));
    CHECK(std::get<Compatible>(sym).x == std::vector<Rational>{1, 1});

    CHECK(std::holds_alternative<CompatNoBasis>(check_extshap_compat(fixture("counter-general", 7, 4))));
  }

  TEST_CASE("a joint compat violation names no single agent") {
    // Each agent alone can reach its Ext-Shap value (caps 1, 4, 1) but the
    // three floors 2/3 + 3 + 5/6 exceed the optimal worth 4.
    const WorthTable v = parse_game(
        "tcg 1\nagents 3\n1 = 0\n2 = 3\n3 = 0\n1 2 = 0\n1 3 = 0\n2 1 = 3\n2 3 = 3\n3 1 = 0\n"
        "3 2 = 0\n1 2 3 = 4\n1 3 2 = 3\n2 1 3 = 4\n2 3 1 = 4\n3 1 2 = 0\n3 2 1 = 3\n");
    CHECK(ext_shap(v) == std::vector<Rational>{fraction(2, 3), fraction(3, 2), fraction(5, 6)});
    const CompatVerdict verdict = check_extshap_compat(v);
    REQUIRE(std::holds_alternative<CompatViolation>(verdict));
    const CompatViolation& bad = std::get<CompatViolation>(verdict);
    CHECK(bad.joint);
    CHECK(bad.certificate.to_string() == "x{1}>=2/3 + x{2}>=3 + x{3}>=5/6 gives 9/2 > 4");
    const BasisSystem system = build_system(v);
    for (AgentId i = 0; i < 3; ++i) CHECK(*max_coordinate(system, i) >= ext_shap(v)[i]);
  }

  TEST_CASE("a compat violation rules out every policy reaching Ext-Shap") {
    for (const WorthTable& v : {fixture("counter-general", 7, 3), fixture("counter-simple")}) {
      REQUIRE(std::holds_alternative<CompatViolation>(check_extshap_compat(v)));
      for (ImprovizePolicy p : kAllPolicies) {
        CHECK(reduce(std::get<SolutionTable>(run_seqshare(v, p))) != ext_shap(v));
      }
    }
  }

  TEST_CASE("compat verdicts are consistent on random games") {
    std::size_t joint = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const WorthTable v = generate({.agents = 2 + seed % 3, .seed = seed, .scale = 6});
      const ExtendedVector e = ext_shap(v);
      const CompatVerdict verdict = check_extshap_compat(v);
      if (const auto* ok = std::get_if<Compatible>(&verdict)) {
        CHECK(is_basis_solution(v, ok->x).holds);
        for (AgentId i = 0; i < v.agents(); ++i) CHECK(ok->x[i] >= e[i]);
      } else if (const auto* bad = std::get_if<CompatViolation>(&verdict)) {
        const BasisSystem system = build_system(v);
        CHECK(bad->extshap == e[bad->agent]);
        if (bad->joint) {
          ++joint;
          std::vector<std::optional<Rational>> floors(e.begin(), e.end());
          CHECK(verify_certificate(system, bad->certificate, floors));
        } else {
          CHECK(bad->cap < bad->extshap);
          CHECK(max_coordinate(system, bad->agent) == bad->cap);
        }
      } else {
        CHECK(std::holds_alternative<Infeasible>(solve(build_system(v))));
      }
    }
    MESSAGE("joint violations seen: " << joint);
  }

  TEST_CASE("witnesses are genuine violations") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const std::size_t n = 2 + seed % 2;
      const WorthTable v = generate({.agents = n, .seed = seed, .scale = 3});
      const SolutionTable t = random_table(n, seed);
      for (const AxiomReport& r : {check_OIR(v, t), check_OIR(v, t, OirMode::kAllPrefixes), check_SE(v, t),
                                   check_I4OA(v, t), check_SNP(v, t), check_SS(v, t)}) {
        check_witnesses_are_genuine(r);
      }
      // Recompute the first witness of each kind straight from the table.
      const AxiomReport oir = check_OIR(v, t);
      if (!oir.holds) {
        const Witness& w = oir.witnesses.front();
        CHECK(t(w.sequences[0], w.agents[0]) == w.lhs);
        CHECK(t(w.sequences[1], w.agents[0]) == w.rhs);
      }
      const AxiomReport se = check_SE(v, t);
      if (!se.holds) {
        const Witness& w = se.witnesses.front();
        Rational sum = 0;
        for (AgentId i = 0; i < n; ++i) sum += t(w.sequences[0], i);
        CHECK(sum == w.lhs);
        CHECK(v(w.sequences[0]) == w.rhs);
      }
      const AxiomReport i4oa = check_I4OA(v, t);
      if (!i4oa.holds) {
        const Witness& w = i4oa.witnesses.front();
        CHECK(t(w.sequences[0], w.agents[0]) == w.lhs);
        CHECK(t(optimal_sequence(v), w.agents[0]) == w.rhs);
      }
    }
  }

  TEST_CASE("immediate-extension OIR agrees with the all-prefixes check") {
    std::size_t failing = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const std::size_t n = 1 + seed % 4;
      const WorthTable v(n);
      SolutionTable t = random_table(n, seed);
      if (seed % 2 == 0) {
        // Make payoffs nondecreasing along every chain so both outcomes occur.
        const SequenceSpace& space = t.space();
        for (std::size_t idx = 1; idx < space.size(); ++idx) {
          const std::size_t parent = space.parent(idx);
          for (AgentId i : space.at(parent)) {
            t.set(space.at(idx), i, t.at_index(idx)[i] + t.at_index(parent)[i]);
          }
        }
      }
      const bool immediate = check_OIR(v, t).holds;
      CHECK(immediate == check_OIR(v, t, OirMode::kAllPrefixes).holds);
      if (!immediate) ++failing;
    }
    CHECK(failing > 0);
    CHECK(failing < 200);
  }

  TEST_CASE("sequential axioms carry over under reduction") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t n = 2 + seed % 3;
      const WorthTable u = generate({.agents = n, .seed = seed, .scale = 5});
      const WorthTable w = generate({.agents = n, .seed = seed + 1000, .scale = 5});
      const ExtendedConcept reduced = [](const WorthTable& v) { return reduce(margsol(v)); };
      REQUIRE(check_SA(margsol, u, w).holds);
      CHECK(check_EA(reduced, u, w).holds);
      REQUIRE(check_SE(u, margsol(u)).holds);
      CHECK(check_EE(u, reduced(u)).holds);
      REQUIRE(check_SNP(u, margsol(u)).holds);
      CHECK(check_ENP(u, reduced(u)).holds);
      for (ImprovizePolicy p : kAllPolicies) {
        const SeqShareOutcome o = run_seqshare(u, p);
        if (const auto* t = std::get_if<SolutionTable>(&o)) {
          REQUIRE(check_SE(u, *t).holds);
          CHECK(check_EE(u, reduce(*t)).holds);
        }
      }
    }
  }

  TEST_CASE("max-symmetrized games pass both symmetry checks") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const std::size_t n = 2 + seed % 3;
      const WorthTable v = symmetrize(oracle::signed_game(n, seed), 0, 1);
      REQUIRE(swap_invariant(v, 0, 1));
      const AxiomReport ss = check_SS(v, margsol(v));
      CHECK(ss.holds);
      CHECK_FALSE(ss.vacuous);
      CHECK(check_ES(v, ext_shap(v)).holds);
    }
  }

  TEST_CASE("concept lookup by name") {
    const WorthTable v = fixture("sanchez");
    CHECK(sequential_concept("margsol")(v) == margsol(v));
    CHECK(sequential_concept("seqshare:earliest-first")(v) ==
          std::get<SolutionTable>(run_seqshare(v, ImprovizePolicy::kEarliestFirst)));
    CHECK(extended_concept("extshap")(v) == ext_shap(v));
    CHECK(extended_concept("reduce:margsol")(v) == ext_shap(v));
    CHECK_THROWS_AS(sequential_concept("banzhaf"), DomainError);
  }
}
