#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tcg/axioms.hpp"
#include "tcg/basis.hpp"
#include "tcg/game.hpp"
#include "tcg/seqshare.hpp"
#include "tcg/shapley.hpp"
#include "tcg/solution_table.hpp"

namespace tcg {

struct ParseOptions {
  /// Accept negative worths (needed for differences of games and carrier coefficients).
  bool allow_negative = false;
};

/// Reads the game text format:
///
///   tcg 1
///   agents 2
///   1 = 1
///   2 = 1
///   1 2 = 2
///   2 1 = 3
///
/// One line per nonempty sequence in any order, 1-based ids, worths "p", "-p" or
/// "p/q". Blank lines and '#' comments are ignored. Throws FormatError with the
/// line and column of syntax errors and duplicates, and a list of any missing sequences.
WorthTable parse_game(std::string_view text, const ParseOptions& options = {});

/// Canonical form: header, then one line per sequence in canonical order.
std::string serialize_game(const WorthTable& v);

/// Same layout with header "tcg-solution 1" and n payoffs per line, zeros included.
SolutionTable parse_solution(std::string_view text);
std::string serialize_solution(const SolutionTable& phi);

/// FNV-1a 64 over the canonical serialization, as 16 lowercase hex digits.
std::string game_hash(const WorthTable& v);

using Json = nlohmann::json;

/// Rationals travel as "p/q" strings, never as JSON numbers.
Json to_json(const Rational& value);
Json to_json(std::span<const Rational> values);
Json to_json(const Sequence& seq);
Json to_json(const SolutionTable& phi);
Json to_json(const BasisSystem& system);
Json to_json(const InfeasibilityCertificate& certificate);
Json to_json(const BasisOutcome& outcome);
Json to_json(const AxiomReport& report);
Json to_json(const MembershipVerdict& verdict);
Json to_json(const CompatVerdict& verdict);
Json to_json(const CarrierDecomposition& decomposition);
Json to_json(const GameClassReport& report);

Rational rational_from_json(const Json& j);
std::vector<Rational> vector_from_json(const Json& j);
Sequence sequence_from_json(const Json& j);
SolutionTable solution_from_json(std::size_t n, const Json& j);

/// The envelope every CLI command prints: format tag, version, operation,
/// parameters, the game's hash and agent count, and the payload under "result".
Json result_document(std::string_view operation, const WorthTable* game, Json parameters, Json result);

/// Two-space indented, keys sorted, trailing newline.
std::string serialize_result(const Json& document);

}  // namespace tcg
