#include "tcg/generators.hpp"

#include <random>
#include <utility>

#include "tcg/error.hpp"

namespace tcg {

namespace {

using Entry = std::pair<std::initializer_list<std::size_t>, Rational>;

WorthTable table_of(std::size_t n, std::initializer_list<Entry> entries) {
  WorthTable v(n);
  std::size_t count = 0;
  for (const auto& [ids, worth] : entries) {
    v.set(Sequence::from_one_based(ids), worth);
    ++count;
  }
  if (count + 1 != v.space().size()) throw InvariantError("fixture table is incomplete");
  return v;
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  /// Uniform-ish in [0, bound].
  std::uint64_t upto(std::uint64_t bound) { return engine_() % (bound + 1); }
  bool one_in(std::uint64_t k) { return engine_() % k == 0; }

 private:
  std::mt19937_64 engine_;
};

WorthTable monotone_game(std::size_t n, std::uint64_t scale, Draw& draw) {
  WorthTable v(n);
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    v.set_index(idx, v.at_index(space.parent(idx)) + Rational(draw.upto(scale)));
  }
  return v;
}

WorthTable simple_game(std::size_t n, Draw& draw) {
  WorthTable v(n);
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const bool won = v.at_index(space.parent(idx)) == 1 || draw.one_in(4);
    v.set_index(idx, Rational(won ? 1 : 0));
  }
  return v;
}

WorthTable convex_proposal(std::size_t n, std::uint64_t scale, Draw& draw) {
  const std::size_t sets = std::size_t{1} << n;
  // by_size[i][k]: the part of i's marginal that depends only on how many arrived before.
  std::vector<std::vector<std::uint64_t>> by_size(n, std::vector<std::uint64_t>(n, 0));
  std::vector<std::vector<std::uint64_t>> pair(n, std::vector<std::uint64_t>(n, 0));
  for (AgentId i = 0; i < n; ++i) {
    for (std::size_t k = 1; k < n; ++k) by_size[i][k] = by_size[i][k - 1] + draw.upto(scale);
    for (AgentId k = 0; k < n; ++k) pair[i][k] = i == k ? 0 : draw.upto(scale);
  }
  const bool noisy = draw.one_in(2);
  std::vector<std::uint64_t> marginal(n * sets, 0);
  for (AgentId i = 0; i < n; ++i) {
    for (AgentMask s = 1; s < sets; ++s) {
      if ((s >> i) & 1U) continue;
      std::uint64_t m = by_size[i][static_cast<std::size_t>(popcount(s))];
      for (AgentId k = 0; k < n; ++k) {
        if ((s >> k) & 1U) m += pair[i][k];
      }
      if (noisy && draw.one_in(2 * n)) m += draw.upto(scale);
      marginal[i * sets + s] = m;
    }
  }
  WorthTable v(n);
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const std::size_t parent = space.parent(idx);
    const AgentId last = space.at(idx).last();
    const std::uint64_t step = parent == SequenceSpace::kEmpty
                                   ? draw.upto(scale)
                                   : marginal[last * sets + space.at(parent).members()];
    v.set_index(idx, v.at_index(parent) + Rational(step));
  }
  return v;
}

}  // namespace

std::string to_string(GameClass cls) {
  switch (cls) {
    case GameClass::kMonotone: return "monotone";
    case GameClass::kConvex: return "convex";
    case GameClass::kSimple: return "simple";
  }
  return "unknown";
}

GameClass parse_game_class(std::string_view name) {
  for (GameClass c : {GameClass::kMonotone, GameClass::kConvex, GameClass::kSimple}) {
    if (to_string(c) == name) return c;
  }
  throw DomainError("unknown game class '" + std::string(name) +
                    "' (expected monotone, convex or simple)");
}

WorthTable generate(const GenSpec& spec) {
  if (spec.cls == GameClass::kConvex && spec.agents > 6) {
    throw DomainError("convex generation supports at most 6 agents");
  }
  if (spec.scale == 0) return WorthTable(spec.agents);
  Draw draw(spec.seed);
  switch (spec.cls) {
    case GameClass::kMonotone:
      return monotone_game(spec.agents, spec.scale, draw);
    case GameClass::kSimple:
      return simple_game(spec.agents, draw);
    case GameClass::kConvex:
      for (std::size_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
        WorthTable v = convex_proposal(spec.agents, spec.scale, draw);
        const GameClassReport report = validate(v);
        if (report.monotone && report.convex) return v;
      }
      throw Error("no convex game accepted after " + std::to_string(spec.max_attempts) +
                  " proposals; try fewer agents or a smaller scale");
  }
  throw DomainError("unknown game class");
}

WorthTable fixture(std::string_view name, std::optional<Rational> a, std::optional<Rational> b) {
  if (name == "basic-example") {
    return table_of(2, {{{1}, 1}, {{2}, 1}, {{1, 2}, 2}, {{2, 1}, 3}});
  }
  if (name == "sanchez") {
    return table_of(2, {{{1}, 1}, {{2}, 1}, {{1, 2}, 1}, {{2, 1}, 2}});
  }
  if (name == "margsol-i4oa") {
    return table_of(2, {{{1}, 3}, {{2}, 1}, {{1, 2}, 8}, {{2, 1}, 5}});
  }
  if (name == "counter-general") {
    if (!a || !b) throw DomainError("counter-general needs both parameters a and b");
    return table_of(3, {{{1}, 1},         {{2}, *b},        {{3}, 4},         {{1, 2}, 3},
                        {{1, 3}, 4},      {{2, 1}, 4},      {{2, 3}, 5},      {{3, 1}, 5},
                        {{3, 2}, 5},      {{1, 2, 3}, *a},  {{1, 3, 2}, 6},   {{2, 1, 3}, 8},
                        {{2, 3, 1}, 7},   {{3, 1, 2}, *a},  {{3, 2, 1}, 7}});
  }
  if (name == "counter-simple" || name == "counter-simple-infeasible") {
    // The infeasible variant keeps v(2 3) = 1, which forces x2 + x3 ≥ 1 against x = (1, 0, 0).
    const Rational v23 = name == "counter-simple" ? 0 : 1;
    return table_of(3, {{{1}, 1},       {{2}, 0},       {{3}, 0},       {{1, 2}, 1},
                        {{1, 3}, 1},    {{2, 1}, 0},    {{2, 3}, v23},  {{3, 1}, 0},
                        {{3, 2}, 0},    {{1, 2, 3}, 1}, {{1, 3, 2}, 1}, {{2, 1, 3}, 1},
                        {{2, 3, 1}, 1}, {{3, 1, 2}, 1}, {{3, 2, 1}, 1}});
  }
  throw DomainError("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() {
  return {"basic-example", "sanchez", "counter-general", "margsol-i4oa", "counter-simple",
          "counter-simple-infeasible"};
}

SolutionTable example_table(std::string_view name) {
  std::vector<std::pair<Rational, Rational>> rows;  // payoffs at (1), (2), (1 2)
  if (name == "phi") {
    rows = {{0, 0}, {0, 0}, {0, 0}};
  } else if (name == "phi-prime") {
    rows = {{1, 0}, {0, 1}, {0, 2}};
  } else if (name == "phi-double-prime") {
    rows = {{1, 0}, {0, 1}, {2, 0}};
  } else {
    throw DomainError("unknown example table '" + std::string(name) + "'");
  }
  SolutionTable phi(2);
  const Sequence seqs[] = {Sequence{0}, Sequence{1}, Sequence{0, 1}};
  for (std::size_t k = 0; k < 3; ++k) {
    const Rational row[] = {rows[k].first, rows[k].second};
    phi.set(seqs[k], row);
  }
  const Rational star[] = {1, 2};
  phi.set(Sequence{1, 0}, star);
  return phi;
}

std::vector<std::string> example_table_names() { return {"phi", "phi-prime", "phi-double-prime"}; }

}  // namespace tcg
