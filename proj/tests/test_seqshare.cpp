#include <doctest.h>

#include "oracles.hpp"
#include "tcg/axioms.hpp"
#include "tcg/error.hpp"
#include "tcg/generators.hpp"
#include "tcg/seqshare.hpp"

using namespace tcg;

namespace {

std::vector<Rational> rs(std::initializer_list<Rational> xs) { return xs; }

Sequence s1(std::initializer_list<std::size_t> ids) { return Sequence::from_one_based(ids); }

SolutionTable table_of(const SeqShareOutcome& o) {
  REQUIRE(std::holds_alternative<SolutionTable>(o));
  return std::get<SolutionTable>(o);
}

bool sequential_axioms_hold(const WorthTable& v, const SolutionTable& phi) {
  return check_OIR(v, phi).holds && check_I4OA(v, phi).holds && check_SE(v, phi).holds;
}

std::vector<WorthTable> feasible_games(std::size_t count, std::uint64_t first_seed) {
  std::vector<WorthTable> games;
  for (std::uint64_t seed = first_seed; games.size() < count; ++seed) {
    WorthTable v = generate({.agents = 2 + seed % 3, .seed = seed, .scale = 1 + seed % 6});
    if (std::holds_alternative<Feasible>(solve(build_system(v)))) games.push_back(std::move(v));
  }
  return games;
}

}  // namespace

TEST_SUITE("seqshare") {
  TEST_CASE("improvize examples") {
    const auto zero = rs({0, 0});
    const auto cap = rs({1, 2});
    CHECK(improvize(1, s1({1}), zero, cap, 1, ImprovizePolicy::kNewcomerFirst) == rs({0, 1}));
    for (ImprovizePolicy p : kAllPolicies) CHECK(improvize(1, s1({1}), zero, cap, 3, p) == rs({1, 2}));
    CHECK(improvize(1, s1({1}), zero, rs({2, 2}), 2, ImprovizePolicy::kProportionalHeadroom) == rs({1, 1}));
    CHECK(improvize(1, s1({1}), zero, cap, 1, ImprovizePolicy::kEarliestFirst) == rs({1, 0}));
    CHECK(improvize(1, s1({1}), zero, cap, fraction(5, 2), ImprovizePolicy::kNewcomerFirst) ==
          rs({fraction(1, 2), 2}));
    CHECK(improvize(1, s1({1}), rs({1, 0}), rs({1, 0}), 0, ImprovizePolicy::kProportionalHeadroom) == zero);
  }

  TEST_CASE("improvize spills over earlier agents in arrival order") {
    // Prefix (3 1), newcomer 2; headrooms: agent 3 -> 1, agent 1 -> 2, agent 2 -> 1.
    const auto current = rs({1, 0, 1});
    const auto cap = rs({3, 1, 2});
    CHECK(improvize(1, s1({3, 1}), current, cap, 3, ImprovizePolicy::kNewcomerFirst) == rs({1, 1, 1}));
    CHECK(improvize(1, s1({3, 1}), current, cap, 3, ImprovizePolicy::kEarliestFirst) == rs({2, 0, 1}));
    CHECK(improvize(1, s1({3, 1}), current, cap, 2, ImprovizePolicy::kProportionalHeadroom) ==
          rs({1, fraction(1, 2), fraction(1, 2)}));
  }

  TEST_CASE("improvize rejects impossible splits") {
    const auto zero = rs({0, 0});
    CHECK_THROWS_AS(improvize(1, s1({1}), zero, rs({1, 2}), -1, ImprovizePolicy::kNewcomerFirst), InvariantError);
    CHECK_THROWS_AS(improvize(1, s1({1}), zero, rs({1, 2}), 4, ImprovizePolicy::kEarliestFirst), InvariantError);
    CHECK_THROWS_AS(improvize(1, s1({1}), rs({2, 0}), rs({1, 2}), 1, ImprovizePolicy::kNewcomerFirst),
                    InvariantError);
    CHECK_THROWS_AS(improvize(0, s1({1}), zero, rs({1, 2}), 1, ImprovizePolicy::kNewcomerFirst), DomainError);
  }

  TEST_CASE("policy names round trip") {
    for (ImprovizePolicy p : kAllPolicies) CHECK(parse_policy(to_string(p)) == p);
    CHECK_THROWS_AS(parse_policy("greedy"), DomainError);
  }

  TEST_CASE("sanchez has a single SeqShare table") {
    const WorthTable v = fixture("sanchez");
    for (ImprovizePolicy p : kAllPolicies) {
      const SolutionTable t = table_of(run_seqshare(v, p));
      CHECK(std::vector<Rational>(t.at(s1({1})).begin(), t.at(s1({1})).end()) == rs({1, 0}));
      CHECK(std::vector<Rational>(t.at(s1({2})).begin(), t.at(s1({2})).end()) == rs({0, 1}));
      CHECK(std::vector<Rational>(t.at(s1({1, 2})).begin(), t.at(s1({1, 2})).end()) == rs({1, 0}));
      CHECK(std::vector<Rational>(t.at(s1({2, 1})).begin(), t.at(s1({2, 1})).end()) == rs({1, 1}));
    }
  }

  TEST_CASE("newcomer-first on the two-agent example") {
    const SolutionTable t = table_of(run_seqshare(fixture("basic-example"), ImprovizePolicy::kNewcomerFirst));
    CHECK(t(s1({1, 2}), 0) == 1);
    CHECK(t(s1({1, 2}), 1) == 1);
    CHECK(t(s1({2, 1}), 0) == 1);
    CHECK(t(s1({2, 1}), 1) == 2);
  }

  TEST_CASE("the zero game yields the zero table") {
    for (ImprovizePolicy p : kAllPolicies) CHECK(table_of(run_seqshare(WorthTable(3), p)) == SolutionTable(3));
  }

  TEST_CASE("no basis means no table") {
    const SeqShareOutcome o = run_seqshare(fixture("counter-general", 7, 4), ImprovizePolicy::kNewcomerFirst);
    REQUIRE(std::holds_alternative<NoBasis>(o));
    CHECK(std::get<NoBasis>(o).certificate.weighted_sum == 9);
  }

  TEST_CASE("any basis solution can seed the construction") {
    const WorthTable v = fixture("basic-example");
    const SolutionTable t = run_seqshare(v, ImprovizePolicy::kEarliestFirst, rs({2, 1}));
    CHECK(std::holds_alternative<Certified>(check_membership(v, t)));
    CHECK(t(s1({2, 1}), 0) == 2);
    CHECK_THROWS_AS(run_seqshare(v, ImprovizePolicy::kEarliestFirst, rs({3, 0})), DomainError);
  }

  TEST_CASE("the three hand-built tables are rejected for the expected reasons") {
    const WorthTable v = fixture("basic-example");
    auto rejected = [&](const char* name) {
      const MembershipVerdict m = check_membership(v, example_table(name));
      REQUIRE(std::holds_alternative<Rejected>(m));
      return std::get<Rejected>(m);
    };
    CHECK(rejected("phi").condition == MembershipCondition::kSingletonWorth);
    const Rejected prime = rejected("phi-prime");
    CHECK(prime.condition == MembershipCondition::kNegativeShare);
    CHECK(prime.sequences == std::vector<Sequence>{s1({1}), s1({1, 2})});
    CHECK(prime.agent == AgentId{0});
    const Rejected dprime = rejected("phi-double-prime");
    CHECK(dprime.condition == MembershipCondition::kHeadroomExceeded);
    CHECK(dprime.agent == AgentId{0});
  }

  TEST_CASE("payments outside the sequence are rejected first") {
    const WorthTable v = fixture("basic-example");
    SolutionTable t = table_of(run_seqshare(v, ImprovizePolicy::kNewcomerFirst));
    t.set(s1({1}), 1, 1);
    const MembershipVerdict m = check_membership(v, t);
    REQUIRE(std::holds_alternative<Rejected>(m));
    CHECK(std::get<Rejected>(m).condition == MembershipCondition::kZeroOutside);
  }

  TEST_CASE("a non-basis payoff at the optimal sequence is rejected") {
    const WorthTable v = fixture("counter-general", 7, 3);
    SolutionTable t = table_of(run_seqshare(v, ImprovizePolicy::kNewcomerFirst));
    const auto star = rs({2, 2, 4});
    t.set(s1({2, 1, 3}), star);
    const MembershipVerdict m = check_membership(v, t);
    REQUIRE(std::holds_alternative<Rejected>(m));
    CHECK(std::get<Rejected>(m).condition == MembershipCondition::kBasisAtOptimal);
  }

  TEST_CASE("every policy output passes the sequential axioms and membership") {
    for (const WorthTable& v : feasible_games(120, 0)) {
      const std::vector<Rational> x = std::get<Feasible>(solve(build_system(v))).x;
      const std::size_t star = v.space().index_of(optimal_sequence(v));
      for (ImprovizePolicy p : kAllPolicies) {
        const SolutionTable t = table_of(run_seqshare(v, p));
        CHECK(sequential_axioms_hold(v, t));
        const MembershipVerdict m = check_membership(v, t);
        REQUIRE(std::holds_alternative<Certified>(m));
        CHECK(std::get<Certified>(m).x == x);
        CHECK(std::equal(x.begin(), x.end(), t.at_index(star).begin()));
        for (std::size_t idx = 1; idx < v.space().size(); ++idx) {
          const std::size_t parent = v.space().parent(idx);
          for (AgentId i = 0; i < v.agents(); ++i) {
            CHECK(t.at_index(idx)[i] >= 0);
            CHECK(t.at_index(idx)[i] <= x[i]);
            CHECK(t.at_index(idx)[i] >= t.at_index(parent)[i]);
          }
        }
      }
    }
  }

  TEST_CASE("membership agrees with the three axioms on perturbed tables") {
    std::mt19937_64 rng(11);
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    for (const WorthTable& v : feasible_games(60, 500)) {
      const SolutionTable base = table_of(run_seqshare(v, ImprovizePolicy::kProportionalHeadroom));
      const SequenceSpace& space = v.space();
      for (int trial = 0; trial < 20; ++trial) {
        SolutionTable t = base;
        // Move a small amount between two members of one sequence: SE survives,
        // OIR and I4OA may or may not.
        const std::size_t idx = 1 + rng() % (space.size() - 1);
        const Sequence& s = space.at(idx);
        const AgentId from = s[rng() % s.size()];
        const AgentId to = s[rng() % s.size()];
        const Rational delta = fraction(static_cast<long>(rng() % 5), 4);
        t.set(s, from, t(s, from) - delta);
        t.set(s, to, t(s, to) + delta);
        const bool axioms = sequential_axioms_hold(v, t);
        const bool member = std::holds_alternative<Certified>(check_membership(v, t));
        CAPTURE(s.to_string());
        CHECK(axioms == member);
        (member ? accepted : rejected) += 1;
      }
    }
    CHECK(accepted > 0);
    CHECK(rejected > 0);
  }

  TEST_CASE("I4OA and SE together force a basis solution at the optimal sequence") {
    for (const WorthTable& v : feasible_games(40, 900)) {
      const SolutionTable t = table_of(run_seqshare(v, ImprovizePolicy::kEarliestFirst));
      if (check_I4OA(v, t).holds && check_SE(v, t).holds) {
        const auto x = t.at(optimal_sequence(v));
        CHECK(is_basis_solution(v, std::vector<Rational>(x.begin(), x.end())).holds);
      }
    }
  }

  TEST_CASE("without a basis solution no two-agent table passes I4OA and SE") {
    // Worths force x1 >= 2 and x2 >= 2 against a total of 3.
    WorthTable v(2);
    v.set(s1({1}), 2);
    v.set(s1({2}), 2);
    v.set(s1({1, 2}), 3);
    v.set(s1({2, 1}), 3);
    REQUIRE(std::holds_alternative<NoBasis>(run_seqshare(v, ImprovizePolicy::kNewcomerFirst)));

    auto search = [](const WorthTable& game) {
      std::size_t passing = 0;
      for (int a4 = -16; a4 <= 32; ++a4) {
        for (int b4 = -16; b4 <= 32; ++b4) {
          // SE pins the singletons and the second share of each pair.
          SolutionTable t(2);
          t.set(s1({1}), 0, game(s1({1})));
          t.set(s1({2}), 1, game(s1({2})));
          const Rational a = fraction(a4, 4);
          const Rational b = fraction(b4, 4);
          const Rational ab[] = {a, game(s1({1, 2})) - a};
          const Rational ba[] = {game(s1({2, 1})) - b, b};
          t.set(s1({1, 2}), ab);
          t.set(s1({2, 1}), ba);
          if (check_SE(game, t).holds && check_I4OA(game, t).holds) ++passing;
        }
      }
      return passing;
    };
    CHECK(search(v) == 0);
    CHECK(search(fixture("basic-example")) > 0);
  }
}
