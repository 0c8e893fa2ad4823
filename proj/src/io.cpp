#include "tcg/io.hpp"

#include <cstdio>
#include <optional>
#include <sstream>

#include "tcg/error.hpp"

namespace tcg {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const char c = line[pos];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++pos;
    } else if (c == '=') {
      tokens.push_back({line.substr(pos, 1), pos + 1});
      ++pos;
    } else {
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r' &&
             line[pos] != '=') {
        ++pos;
      }
      tokens.push_back({line.substr(start, pos - start), start + 1});
    }
  }
  return tokens;
}

std::size_t parse_count(const Token& token, std::size_t line) {
  std::size_t value = 0;
  if (token.text.empty() || token.text.size() > 3) {
    throw FormatError("expected a small positive integer, got '" + std::string(token.text) + "'",
                      line, token.column);
  }
  for (char c : token.text) {
    if (c < '0' || c > '9') {
      throw FormatError("expected a positive integer, got '" + std::string(token.text) + "'", line,
                        token.column);
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

Rational parse_worth(const Token& token, std::size_t line) {
  try {
    return parse_rational(token.text);
  } catch (const FormatError& e) {
    throw FormatError(e.what(), line, token.column);
  }
}

/// Shared reader for the game and solution formats: header, agent count, then
/// "ids = values" lines with `values_for(n)` values each. `on_entry` receives the
/// sequence index and value tokens.
template <typename ValuesFor, typename OnEntry>
std::size_t read_table(std::string_view text, std::string_view tag, ValuesFor values_for,
                       OnEntry on_entry) {
  std::optional<std::size_t> agents;
  bool header = false;
  std::shared_ptr<const SequenceSpace> space;
  std::vector<std::size_t> seen_at;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!header) {
      if (tokens.size() != 2 || tokens[0].text != tag || tokens[1].text != "1") {
        throw FormatError("expected header '" + std::string(tag) + " 1'", line_no, tokens[0].column);
      }
      header = true;
      continue;
    }
    if (!agents) {
      if (tokens.size() != 2 || tokens[0].text != "agents") {
        throw FormatError("expected 'agents N'", line_no, tokens[0].column);
      }
      const std::size_t n = parse_count(tokens[1], line_no);
      if (n == 0) throw FormatError("agent count must be at least 1", line_no, tokens[1].column);
      try {
        space = SequenceSpace::of(n);
      } catch (const SizeError& e) {
        throw FormatError(e.what(), line_no, tokens[1].column);
      }
      agents = n;
      seen_at.assign(space->size(), 0);
      continue;
    }

    std::size_t eq = 0;
    while (eq < tokens.size() && tokens[eq].text != "=") ++eq;
    if (eq == tokens.size()) throw FormatError("expected '='", line_no, tokens.back().column);
    if (eq == 0) throw FormatError("expected a sequence of agent ids before '='", line_no, tokens[0].column);
    const std::size_t values_per_line = values_for(*agents);
    if (tokens.size() - eq - 1 != values_per_line) {
      const std::size_t col = eq + 1 < tokens.size() ? tokens[eq + 1].column : tokens[eq].column + 1;
      throw FormatError("expected " + std::to_string(values_per_line) + " value(s) after '='",
                        line_no, col);
    }
    Sequence seq;
    for (std::size_t k = 0; k < eq; ++k) {
      const std::size_t id = parse_count(tokens[k], line_no);
      if (id == 0 || id > *agents) {
        throw FormatError("agent id " + std::to_string(id) + " outside 1.." + std::to_string(*agents),
                          line_no, tokens[k].column);
      }
      if (seq.contains(id - 1)) {
        throw FormatError("agent " + std::to_string(id) + " repeated in sequence", line_no,
                          tokens[k].column);
      }
      seq = seq.extended(id - 1);
    }
    const std::size_t idx = space->index_of(seq);
    if (seen_at[idx] != 0) {
      throw FormatError("duplicate entry for sequence " + seq.to_string() + " (first on line " +
                            std::to_string(seen_at[idx]) + ")",
                        line_no, tokens[0].column);
    }
    seen_at[idx] = line_no;
    on_entry(*space, idx, std::span<const Token>(tokens).subspan(eq + 1), line_no);
  }
  if (!header) throw FormatError("empty input: expected header '" + std::string(tag) + " 1'");
  if (!agents) throw FormatError("missing 'agents N' line");

  std::vector<std::string> missing;
  for (std::size_t idx = 1; idx < space->size(); ++idx) {
    if (seen_at[idx] == 0) missing.push_back(space->at(idx).to_string());
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t k = 0; k < missing.size() && k < 10; ++k) list += (k ? "; " : "") + missing[k];
    if (missing.size() > 10) list += "; and " + std::to_string(missing.size() - 10) + " more";
    throw FormatError("missing " + std::to_string(missing.size()) + " sequence(s): " + list);
  }
  return *agents;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace

WorthTable parse_game(std::string_view text, const ParseOptions& options) {
  std::vector<std::pair<std::size_t, Rational>> entries;
  const std::size_t n = read_table(
      text, "tcg", [](std::size_t) { return std::size_t{1}; },
      [&](const SequenceSpace&, std::size_t idx, std::span<const Token> values, std::size_t line) {
        Rational worth = parse_worth(values[0], line);
        if (!options.allow_negative && worth < 0) {
          throw FormatError("negative worth " + to_string(worth) +
                                " (allowed only when validation is skipped)",
                            line, values[0].column);
        }
        entries.emplace_back(idx, std::move(worth));
      });
  WorthTable v(n);
  for (auto& [idx, worth] : entries) v.set_index(idx, std::move(worth));
  return v;
}

std::string serialize_game(const WorthTable& v) {
  std::string out = "tcg 1\nagents " + std::to_string(v.agents()) + "\n";
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    out += space.at(idx).to_string() + " = " + to_string(v.at_index(idx)) + "\n";
  }
  return out;
}

SolutionTable parse_solution(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows;
  const std::size_t agents = read_table(
      text, "tcg-solution", [](std::size_t n) { return n; },
      [&](const SequenceSpace&, std::size_t idx, std::span<const Token> values, std::size_t line) {
        std::vector<Rational> row;
        for (const Token& t : values) row.push_back(parse_worth(t, line));
        rows.emplace_back(idx, std::move(row));
      });
  SolutionTable phi(agents);
  for (auto& [idx, row] : rows) phi.set_index(idx, row);
  return phi;
}

std::string serialize_solution(const SolutionTable& phi) {
  std::string out = "tcg-solution 1\nagents " + std::to_string(phi.agents()) + "\n";
  const SequenceSpace& space = phi.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    out += space.at(idx).to_string() + " =";
    for (const Rational& p : phi.at_index(idx)) out += " " + to_string(p);
    out += "\n";
  }
  return out;
}

std::string game_hash(const WorthTable& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_game(v)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(std::span<const Rational> values) {
  Json arr = Json::array();
  for (const Rational& v : values) arr.push_back(to_json(v));
  return arr;
}

Json to_json(const Sequence& seq) {
  Json arr = Json::array();
  for (AgentId i : seq) arr.push_back(i + 1);
  return arr;
}

Json to_json(const SolutionTable& phi) {
  Json rows = Json::array();
  const SequenceSpace& space = phi.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    rows.push_back({{"sequence", to_json(space.at(idx))}, {"payoff", to_json(phi.at_index(idx))}});
  }
  return rows;
}

namespace {

Json mask_json(AgentMask mask) {
  Json arr = Json::array();
  for (AgentId i = 0; i < kMaxAgents; ++i) {
    if ((mask >> i) & 1U) arr.push_back(i + 1);
  }
  return arr;
}

Json pairs_json(const std::vector<std::pair<AgentId, AgentId>>& pairs) {
  Json arr = Json::array();
  for (auto [i, j] : pairs) arr.push_back(Json::array({i + 1, j + 1}));
  return arr;
}

}  // namespace

Json to_json(const BasisSystem& system) {
  Json rows = Json::array();
  for (const SubsetBound& b : system.inequalities) {
    rows.push_back({{"subset", mask_json(b.subset)}, {"bound", to_json(b.bound)},
                    {"witness", to_json(b.witness)}});
  }
  return {{"inequalities", rows},
          {"equality", {{"sequence", to_json(system.optimal)}, {"total", to_json(system.total)}}}};
}

Json to_json(const InfeasibilityCertificate& certificate) {
  Json terms = Json::array();
  for (const CertificateTerm& t : certificate.terms) {
    terms.push_back({{"subset", mask_json(t.subset)},
                     {"weight", to_json(t.weight)},
                     {"bound", to_json(t.bound)},
                     {"kind", t.floor ? "floor" : "worth"}});
  }
  return {{"terms", terms},
          {"weighted_sum", to_json(certificate.weighted_sum)},
          {"total", to_json(certificate.total)},
          {"summary", certificate.to_string()}};
}

Json to_json(const BasisOutcome& outcome) {
  if (auto* f = std::get_if<Feasible>(&outcome)) return {{"status", "feasible"}, {"x", to_json(f->x)}};
  return {{"status", "infeasible"},
          {"certificate", to_json(std::get<Infeasible>(outcome).certificate)}};
}

Json to_json(const AxiomReport& report) {
  Json witnesses = Json::array();
  for (const Witness& w : report.witnesses) {
    Json seqs = Json::array();
    for (const Sequence& s : w.sequences) seqs.push_back(to_json(s));
    Json agents = Json::array();
    for (AgentId i : w.agents) agents.push_back(i + 1);
    witnesses.push_back({{"sequences", seqs},
                         {"agents", agents},
                         {"lhs", to_json(w.lhs)},
                         {"rhs", to_json(w.rhs)},
                         {"relation", w.relation == Witness::Relation::kEqual ? "=" : "<="},
                         {"description", w.description}});
  }
  Json out = {{"axiom", to_string(report.axiom)},
              {"holds", report.holds},
              {"vacuous", report.vacuous},
              {"violation_count", report.violation_count},
              {"witnesses", witnesses}};
  if (report.axiom == Axiom::kSNP || report.axiom == Axiom::kENP) {
    Json null = Json::array();
    for (AgentId i : report.null_players) null.push_back(i + 1);
    out["null_players"] = null;
  }
  if (report.axiom == Axiom::kSS || report.axiom == Axiom::kES) {
    out["checked_pairs"] = pairs_json(report.checked_pairs);
    out["skipped_pairs"] = pairs_json(report.skipped_pairs);
  }
  return out;
}

Json to_json(const MembershipVerdict& verdict) {
  if (auto* c = std::get_if<Certified>(&verdict)) return {{"status", "certified"}, {"x", to_json(c->x)}};
  const Rejected& r = std::get<Rejected>(verdict);
  Json seqs = Json::array();
  for (const Sequence& s : r.sequences) seqs.push_back(to_json(s));
  Json out = {{"status", "rejected"},
              {"condition", to_string(r.condition)},
              {"sequences", seqs},
              {"detail", r.detail}};
  out["agent"] = r.agent ? Json(*r.agent + 1) : Json(nullptr);
  return out;
}

Json to_json(const CompatVerdict& verdict) {
  if (auto* c = std::get_if<Compatible>(&verdict)) return {{"status", "compatible"}, {"x", to_json(c->x)}};
  if (auto* n = std::get_if<CompatNoBasis>(&verdict)) {
    return {{"status", "no-basis"}, {"certificate", to_json(n->certificate)}};
  }
  const CompatViolation& v = std::get<CompatViolation>(verdict);
  return {{"status", "violation"},
          {"agent", v.agent + 1},
          {"cap", to_json(v.cap)},
          {"extshap", to_json(v.extshap)},
          {"joint", v.joint},
          {"certificate", to_json(v.certificate)}};
}

Json to_json(const CarrierDecomposition& decomposition) {
  Json rows = Json::array();
  const SequenceSpace& space = decomposition.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    rows.push_back({{"sequence", to_json(space.at(idx))}, {"alpha", to_json(decomposition.at_index(idx))}});
  }
  return rows;
}

Json to_json(const GameClassReport& report) {
  Json violations = Json::array();
  for (const ClassViolation& v : report.violations) {
    violations.push_back({{"property", to_string(v.property)},
                          {"first", to_json(v.first)},
                          {"second", to_json(v.second)},
                          {"description", v.description}});
  }
  return {{"monotone", report.monotone},
          {"convex", report.convex},
          {"simple", report.simple},
          {"violations", violations}};
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw FormatError("rational must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

std::vector<Rational> vector_from_json(const Json& j) {
  std::vector<Rational> out;
  for (const Json& e : j) out.push_back(rational_from_json(e));
  return out;
}

Sequence sequence_from_json(const Json& j) {
  std::vector<std::size_t> ids = j.get<std::vector<std::size_t>>();
  return Sequence::from_one_based(ids);
}

SolutionTable solution_from_json(std::size_t n, const Json& j) {
  SolutionTable phi(n);
  for (const Json& row : j) phi.set(sequence_from_json(row.at("sequence")), vector_from_json(row.at("payoff")));
  return phi;
}

Json result_document(std::string_view operation, const WorthTable* game, Json parameters, Json result) {
  Json doc = {{"format", "tcg-result"},
              {"version", 1},
              {"operation", std::string(operation)},
              {"parameters", std::move(parameters)},
              {"result", std::move(result)}};
  if (game != nullptr) doc["game"] = {{"hash", game_hash(*game)}, {"agents", game->agents()}};
  return doc;
}

std::string serialize_result(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace tcg
