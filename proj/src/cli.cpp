#include "tcg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tcg/axioms.hpp"
#include "tcg/basis.hpp"
#include "tcg/error.hpp"
#include "tcg/generators.hpp"
#include "tcg/io.hpp"
#include "tcg/repro.hpp"
#include "tcg/seqshare.hpp"
#include "tcg/shapley.hpp"

namespace tcg {

namespace {

struct Options {
  std::string input;
  std::string a;
  std::string b;
  std::string policy = "newcomer-first";
  std::string check;
  std::string table;
  std::string concept_name = "margsol";
  std::string ext_concept;
  std::string partner;
  std::string order;
  std::string oir_mode = "immediate";
  std::uint64_t seed = 0;
  std::size_t agents = 3;
  std::string cls = "monotone";
  std::uint64_t scale = 10;
  std::string out;
  bool assert_positive = false;
  bool no_validate = false;
};

/// Output of one command: the text to print and whether the verdict was positive.
struct Outcome {
  std::string text;
  bool positive = true;
};

std::string read_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open '" + path + "'");
  return read_stream(file);
}

std::optional<Rational> optional_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_rational(text);
}

WorthTable load_game(const std::string& source, const Options& o, std::istream& in) {
  constexpr std::string_view kFixture = "fixture:";
  if (source.starts_with(kFixture)) {
    return fixture(std::string_view(source).substr(kFixture.size()), optional_rational(o.a),
                   optional_rational(o.b));
  }
  const ParseOptions parse{.allow_negative = o.no_validate};
  return parse_game(source == "-" ? read_stream(in) : read_file(source), parse);
}

void require_monotone(const WorthTable& v, const Options& o) {
  if (o.no_validate) return;
  const GameClassReport report = validate(v);
  if (report.monotone) return;
  for (const ClassViolation& w : report.violations) {
    if (w.property == GameProperty::kMonotone) {
      throw DomainError("game is not monotone (" + w.description + "); pass --no-validate to skip this check");
    }
  }
}

SolutionTable load_table(const std::string& source, std::istream& in) {
  constexpr std::string_view kExample = "example:";
  if (source.starts_with(kExample)) return example_table(std::string_view(source).substr(kExample.size()));
  return parse_solution(source == "-" ? read_stream(in) : read_file(source));
}

Json base_parameters(const Options& o) {
  Json p = {{"input", o.input}};
  if (!o.a.empty()) p["a"] = to_json(parse_rational(o.a));
  if (!o.b.empty()) p["b"] = to_json(parse_rational(o.b));
  return p;
}

Outcome document(std::string_view op, const WorthTable& v, Json params, Json result, bool positive = true) {
  return {serialize_result(result_document(op, &v, std::move(params), std::move(result))), positive};
}

std::vector<AgentId> parse_order(const std::string& text, std::size_t n) {
  std::vector<AgentId> order;
  if (text.empty()) return order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t id = 0;
    try {
      id = std::stoul(item);
    } catch (const std::exception&) {
      throw DomainError("--order expects comma-separated agent ids, got '" + item + "'");
    }
    if (id == 0 || id > n) throw DomainError("--order mentions agent " + item + " outside 1.." + std::to_string(n));
    order.push_back(id - 1);
  }
  return order;
}

Outcome cmd_validate(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  const GameClassReport r = validate(v);
  return document("validate", v, base_parameters(o), to_json(r), r.monotone);
}

Outcome cmd_basis(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  require_monotone(v, o);
  const BasisSystem s = build_system(v);
  const BasisOutcome r = solve(s, parse_order(o.order, v.agents()));
  Json params = base_parameters(o);
  if (!o.order.empty()) params["order"] = o.order;
  Json result = to_json(r);
  result["system"] = to_json(s);
  return document("basis", v, params, result, std::holds_alternative<Feasible>(r));
}

Outcome cmd_seqshare(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  require_monotone(v, o);
  const ImprovizePolicy policy = parse_policy(o.policy);
  const SeqShareOutcome r = run_seqshare(v, policy);
  Json params = base_parameters(o);
  params["policy"] = to_string(policy);
  if (auto* none = std::get_if<NoBasis>(&r)) {
    return document("seqshare", v, params, {{"status", "no-basis"}, {"certificate", to_json(none->certificate)}},
                    false);
  }
  const SolutionTable& t = std::get<SolutionTable>(r);
  return document("seqshare", v, params, {{"status", "table"}, {"table", to_json(t)}});
}

Outcome cmd_membership(const Options& o, std::istream& in) {
  if (o.table.empty()) throw DomainError("membership needs --table <file|example:name>");
  const WorthTable v = load_game(o.input, o, in);
  require_monotone(v, o);
  const MembershipVerdict r = check_membership(v, load_table(o.table, in));
  Json params = base_parameters(o);
  params["table"] = o.table;
  return document("membership", v, params, to_json(r), std::holds_alternative<Certified>(r));
}

Outcome cmd_margsol(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  return document("margsol", v, base_parameters(o), {{"table", to_json(margsol(v))}});
}

Outcome cmd_extshap(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  return document("extshap", v, base_parameters(o), {{"extshap", to_json(ext_shap(v))}});
}

SequentialConcept concept_for(const Options& o) {
  return sequential_concept(o.concept_name == "seqshare" ? "seqshare:" + o.policy : o.concept_name);
}

Outcome cmd_reduce(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  Json params = base_parameters(o);
  SolutionTable phi(v.agents());
  if (!o.table.empty()) {
    phi = load_table(o.table, in);
    if (phi.agents() != v.agents()) throw DomainError("table and game have different agent counts");
    params["table"] = o.table;
  } else {
    phi = concept_for(o)(v);
    params["concept"] = o.concept_name;
  }
  return document("reduce", v, params, {{"reduced", to_json(reduce(phi))}});
}

Outcome cmd_decompose(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  return document("decompose", v, base_parameters(o), {{"coefficients", to_json(decompose(v))}});
}

std::vector<Axiom> selected_axioms(const std::string& list) {
  std::vector<Axiom> out;
  if (list.empty()) return {std::begin(kAllAxioms), std::end(kAllAxioms)};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_axiom(item));
  }
  return out;
}

Outcome cmd_axioms(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  const std::vector<Axiom> axioms = selected_axioms(o.check);
  Json params = base_parameters(o);
  params["check"] = o.check.empty() ? "all" : o.check;

  std::optional<SequentialConcept> seq_concept;
  std::optional<ExtendedConcept> ext_concept;
  SolutionTable phi(v.agents());
  if (!o.table.empty()) {
    phi = load_table(o.table, in);
    if (phi.agents() != v.agents()) throw DomainError("table and game have different agent counts");
    params["table"] = o.table;
  } else {
    seq_concept = concept_for(o);
    const std::string seq_name = o.concept_name == "seqshare" ? "seqshare:" + o.policy : o.concept_name;
    ext_concept = extended_concept(o.ext_concept.empty() ? "reduce:" + seq_name : o.ext_concept);
    phi = (*seq_concept)(v);
    params["concept"] = seq_name;
    params["extended_concept"] = o.ext_concept.empty() ? "reduce:" + seq_name : o.ext_concept;
  }
  const ExtendedVector psi = ext_concept ? (*ext_concept)(v) : reduce(phi);
  const OirMode mode = o.oir_mode == "all-prefixes" ? OirMode::kAllPrefixes : OirMode::kImmediate;
  if (o.oir_mode != "immediate" && o.oir_mode != "all-prefixes") {
    throw DomainError("--oir-mode must be immediate or all-prefixes");
  }

  std::optional<WorthTable> partner;
  auto partner_game = [&]() -> const WorthTable& {
    if (!partner) {
      if (!o.partner.empty()) {
        partner = load_game(o.partner, o, in);
        params["partner"] = o.partner;
      } else {
        partner = generate({.agents = v.agents(), .cls = GameClass::kMonotone, .seed = o.seed, .scale = 10});
        params["partner"] = "generated monotone game, seed " + std::to_string(o.seed);
      }
      if (partner->agents() != v.agents()) throw DomainError("partner game has a different agent count");
    }
    return *partner;
  };

  Json reports = Json::array();
  bool all_hold = true;
  for (Axiom a : axioms) {
    std::optional<AxiomReport> report;
    switch (a) {
      case Axiom::kOIR: report = check_OIR(v, phi, mode); break;
      case Axiom::kSE: report = check_SE(v, phi); break;
      case Axiom::kI4OA: report = check_I4OA(v, phi); break;
      case Axiom::kSNP: report = check_SNP(v, phi); break;
      case Axiom::kSS: report = check_SS(v, phi); break;
      case Axiom::kEE: report = check_EE(v, psi); break;
      case Axiom::kENP: report = check_ENP(v, psi); break;
      case Axiom::kES: report = check_ES(v, psi); break;
      case Axiom::kSA:
        if (seq_concept) report = check_SA(*seq_concept, v, partner_game());
        break;
      case Axiom::kEA:
        if (ext_concept) report = check_EA(*ext_concept, v, partner_game());
        break;
    }
    if (!report) {
      reports.push_back({{"axiom", to_string(a)}, {"skipped", "additivity needs a concept, not a fixed table"}});
      continue;
    }
    all_hold = all_hold && report->holds;
    reports.push_back(to_json(*report));
  }
  return document("axioms", v, params, {{"reports", reports}, {"all_hold", all_hold}}, all_hold);
}

Outcome cmd_compat(const Options& o, std::istream& in) {
  const WorthTable v = load_game(o.input, o, in);
  require_monotone(v, o);
  const CompatVerdict r = check_extshap_compat(v);
  Json result = to_json(r);
  result["extshap"] = to_json(ext_shap(v));
  return document("compat", v, base_parameters(o), result, std::holds_alternative<Compatible>(r));
}

Outcome cmd_gen(const Options& o) {
  const GenSpec spec{.agents = o.agents, .cls = parse_game_class(o.cls), .seed = o.seed, .scale = o.scale};
  return {serialize_game(generate(spec)), true};
}

Outcome cmd_fixture(const Options& o) {
  return {serialize_game(fixture(o.input, optional_rational(o.a), optional_rational(o.b))), true};
}

Outcome cmd_repro() {
  std::string text;
  std::size_t passed = 0;
  const std::vector<ClaimResult> results = run_fixture_claims();
  for (const ClaimResult& r : results) {
    text += std::string(r.passed ? "PASS " : "FAIL ") + r.id + ": " + r.claim + " [" + r.observed + "]\n";
    passed += r.passed ? 1 : 0;
  }
  text += "repro: " + std::to_string(passed) + "/" + std::to_string(results.size()) + " claims pass\n";
  return {text, passed == results.size()};
}

void add_game_input(CLI::App* sub, Options& o) {
  sub->add_option("input", o.input, "game file, '-' for standard input, or fixture:<name>")->required();
  sub->add_option("--a", o.a, "parameter a of counter-general (rational)");
  sub->add_option("--b", o.b, "parameter b of counter-general (rational)");
  sub->add_flag("--no-validate", o.no_validate, "accept negative worths and skip the monotonicity check");
}

void add_output(CLI::App* sub, Options& o, bool with_assert) {
  sub->add_option("--out", o.out, "write the result to this path instead of standard output");
  if (with_assert) sub->add_flag("--assert", o.assert_positive, "exit with status 3 on a negative verdict");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solution concepts and axiom checks for temporal cooperative games", "tcg"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    CLI::App* app;
    std::function<Outcome()> run;
  };
  std::vector<Command> commands;
  auto game_command = [&](const std::string& name, const std::string& help, bool asserts,
                          Outcome (*fn)(const Options&, std::istream&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_game_input(sub, o);
    add_output(sub, o, asserts);
    commands.push_back({sub, [&o, &in, fn] { return fn(o, in); }});
    return sub;
  };

  game_command("validate", "report monotone, convex and simple with witnesses", true, cmd_validate);
  game_command("basis", "decide the basis conditions; print x or a certificate", true, cmd_basis)
      ->add_option("--order", o.order, "lexicographic minimization order, e.g. 3,1,2");
  game_command("seqshare", "build a SeqShare table", true, cmd_seqshare)
      ->add_option("--policy", o.policy, "newcomer-first, earliest-first or proportional-headroom");
  game_command("membership", "decide whether a table lies in SeqShare", true, cmd_membership)
      ->add_option("--table", o.table, "solution table file or example:<name>");
  game_command("margsol", "the marginal-contribution table", false, cmd_margsol);
  game_command("extshap", "average marginal contribution over all full orders", false, cmd_extshap);
  {
    CLI::App* sub = game_command("reduce", "average a table over full-length sequences", false, cmd_reduce);
    sub->add_option("--table", o.table, "solution table file or example:<name>");
    sub->add_option("--concept", o.concept_name, "margsol or seqshare (with --policy)");
    sub->add_option("--policy", o.policy, "policy for --concept seqshare");
  }
  game_command("decompose", "carrier-game coefficients", false, cmd_decompose);
  {
    CLI::App* sub = game_command("axioms", "check axioms for a table or a named concept", true, cmd_axioms);
    sub->add_option("--check", o.check, "comma-separated axioms (default: all ten)");
    sub->add_option("--table", o.table, "solution table file or example:<name>");
    sub->add_option("--concept", o.concept_name, "margsol or seqshare (with --policy)");
    sub->add_option("--ext-concept", o.ext_concept, "extshap or reduce:<concept> (default: reduce of --concept)");
    sub->add_option("--policy", o.policy, "policy for --concept seqshare");
    sub->add_option("--partner", o.partner, "second game for SA and EA (default: generated from --seed)");
    sub->add_option("--seed", o.seed, "seed of the generated partner game");
    sub->add_option("--oir-mode", o.oir_mode, "immediate or all-prefixes");
  }
  game_command("compat", "whether some basis solution dominates Ext-Shap", true, cmd_compat);
  {
    CLI::App* sub = app.add_subcommand("gen", "generate a random game in the text format");
    sub->add_option("--n", o.agents, "agent count")->check(CLI::Range(1, 8));
    sub->add_option("--class", o.cls, "monotone, convex or simple");
    sub->add_option("--seed", o.seed, "64-bit seed");
    sub->add_option("--scale", o.scale, "largest worth increment");
    add_output(sub, o, false);
    commands.push_back({sub, [&o] { return cmd_gen(o); }});
  }
  {
    CLI::App* sub = app.add_subcommand("fixture", "print a built-in example game");
    sub->add_option("name", o.input, "fixture name")->required();
    sub->add_option("--a", o.a, "parameter a of counter-general");
    sub->add_option("--b", o.b, "parameter b of counter-general");
    add_output(sub, o, false);
    commands.push_back({sub, [&o] { return cmd_fixture(o); }});
  }
  {
    CLI::App* sub = app.add_subcommand("repro", "recompute every fixture claim and print PASS/FAIL lines");
    add_output(sub, o, false);
    commands.push_back({sub, [] { return cmd_repro(); }});
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const Command& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      const Outcome result = c.run();
      if (o.out.empty()) {
        out << result.text;
      } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw DomainError("cannot write '" + o.out + "'");
        file << result.text;
      }
      const bool is_repro = c.app->get_name() == "repro";
      if (!result.positive && (o.assert_positive || is_repro)) return kExitAssert;
      return kExitOk;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }
  }
  return kExitUsage;
}

}  // namespace tcg
