#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcg/game.hpp"
#include "tcg/solution_table.hpp"

namespace tcg {

enum class GameClass { kMonotone, kConvex, kSimple };

/// "monotone", "convex", "simple".
std::string to_string(GameClass cls);
GameClass parse_game_class(std::string_view name);

struct GenSpec {
  std::size_t agents = 3;
  GameClass cls = GameClass::kMonotone;
  std::uint64_t seed = 0;
  /// Upper bound for each integer worth increment. 0 yields the zero game.
  std::uint64_t scale = 10;
  /// Convex class only: proposals tried before giving up.
  std::size_t max_attempts = 64;
};

/// A pure function of `spec`. Uses std::mt19937_64 seeded with `seed`; every
/// bounded draw is `engine() % (bound + 1)`.
///
/// monotone: worths assigned in canonical order as the parent's worth plus an
/// increment in [0, scale].
/// simple: 0/1 worths closed upward along prefixes; a sequence whose parent is
/// worth 0 becomes 1 with probability 1/4.
/// convex (n ≤ 6): rejection sampling. Each proposal makes the marginal of i at a
/// nonempty π a function of i and P(π) that grows with P(π); half the proposals
/// add sparse noise that may break this. Proposals are accepted only when
/// validate() confirms monotone and convex. Throws Error after max_attempts.
WorthTable generate(const GenSpec& spec);

/// Built-in example games: "basic-example", "sanchez", "counter-general" (needs a
/// and b: a = v(1 2 3) = v(3 1 2), b = v(2)), "margsol-i4oa", "counter-simple" and
/// "counter-simple-infeasible". Throws DomainError on an unknown name or
/// missing parameters.
WorthTable fixture(std::string_view name, std::optional<Rational> a = std::nullopt,
                   std::optional<Rational> b = std::nullopt);

std::vector<std::string> fixture_names();

/// The three hand-built tables on "basic-example": "phi" (zero except at the
/// optimal sequence), "phi-prime" and "phi-double-prime".
SolutionTable example_table(std::string_view name);

std::vector<std::string> example_table_names();

}  // namespace tcg
