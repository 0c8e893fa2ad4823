#include "tcg/axioms.hpp"

#include <algorithm>
#include <cctype>

#include "tcg/error.hpp"
#include "tcg/seqshare.hpp"

namespace tcg {

namespace {

using Relation = Witness::Relation;

Rational share(const SolutionTable& phi, std::size_t index, AgentId agent) {
  return phi.space().at(index).contains(agent) ? phi.at_index(index)[agent] : Rational(0);
}

std::string who(AgentId i) { return "agent " + std::to_string(i + 1); }

std::string seq_name(const Sequence& seq) { return "(" + seq.to_string() + ")"; }

void require_same_agents(const WorthTable& v, std::size_t n) {
  if (v.agents() != n) throw DomainError("game and solution have different agent counts");
}

AxiomReport report_for(Axiom axiom) {
  AxiomReport report;
  report.axiom = axiom;
  return report;
}

}  // namespace

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::kOIR: return "OIR";
    case Axiom::kSE: return "SE";
    case Axiom::kI4OA: return "I4OA";
    case Axiom::kSA: return "SA";
    case Axiom::kSNP: return "SNP";
    case Axiom::kSS: return "SS";
    case Axiom::kEE: return "EE";
    case Axiom::kEA: return "EA";
    case Axiom::kENP: return "ENP";
    case Axiom::kES: return "ES";
  }
  return "unknown";
}

Axiom parse_axiom(std::string_view tag) {
  std::string upper(tag);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Axiom a : kAllAxioms) {
    if (to_string(a) == upper) return a;
  }
  throw DomainError("unknown axiom '" + std::string(tag) + "'");
}

void AxiomReport::record(Witness witness) {
  holds = false;
  ++violation_count;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
}

AxiomReport check_OIR(const WorthTable& v, const SolutionTable& phi, OirMode mode) {
  require_same_agents(v, phi.agents());
  const SequenceSpace& space = phi.space();
  AxiomReport report = report_for(Axiom::kOIR);
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const Sequence& later = space.at(idx);
    const std::size_t shortest = mode == OirMode::kImmediate ? later.size() - 1 : 0;
    for (std::size_t len = shortest; len < later.size(); ++len) {
      const Sequence earlier = later.prefix(len);
      const std::size_t earlier_idx = space.index_of(earlier);
      for (AgentId i : later) {
        Rational before = share(phi, earlier_idx, i);
        Rational after = share(phi, idx, i);
        if (before <= after) continue;
        report.record({{earlier, later}, {i}, before, after, Relation::kLessEqual,
                       who(i) + " falls from " + to_string(before) + " at " + seq_name(earlier) +
                           " to " + to_string(after) + " at " + seq_name(later)});
      }
    }
  }
  return report;
}

AxiomReport check_SE(const WorthTable& v, const SolutionTable& phi) {
  require_same_agents(v, phi.agents());
  const SequenceSpace& space = v.space();
  AxiomReport report = report_for(Axiom::kSE);
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    Rational sum = 0;
    for (AgentId i : space.at(idx)) sum += phi.at_index(idx)[i];
    if (sum == v.at_index(idx)) continue;
    report.record({{space.at(idx)}, {}, sum, v.at_index(idx), Relation::kEqual,
                   "payoffs at " + seq_name(space.at(idx)) + " sum to " + to_string(sum) +
                       " but its worth is " + to_string(v.at_index(idx))});
  }
  return report;
}

AxiomReport check_I4OA(const WorthTable& v, const SolutionTable& phi) {
  require_same_agents(v, phi.agents());
  const SequenceSpace& space = v.space();
  const Sequence star = optimal_sequence(v);
  const std::size_t star_idx = space.index_of(star);
  AxiomReport report = report_for(Axiom::kI4OA);
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    for (AgentId i = 0; i < v.agents(); ++i) {
      Rational here = share(phi, idx, i);
      Rational best = share(phi, star_idx, i);
      if (here <= best) continue;
      report.record({{space.at(idx), star}, {i}, here, best, Relation::kLessEqual,
                     who(i) + " receives " + to_string(here) + " at " + seq_name(space.at(idx)) +
                         " but only " + to_string(best) + " at the optimal sequence " +
                         seq_name(star)});
    }
  }
  return report;
}

AxiomReport check_SA(const SequentialConcept& concept_fn, const WorthTable& u, const WorthTable& w) {
  if (u.agents() != w.agents()) throw DomainError("additivity needs games on the same agents");
  const SolutionTable pu = concept_fn(u);
  const SolutionTable pw = concept_fn(w);
  const SolutionTable psum = concept_fn(u + w);
  const SequenceSpace& space = u.space();
  AxiomReport report = report_for(Axiom::kSA);
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    for (AgentId i = 0; i < u.agents(); ++i) {
      Rational separate = pu.at_index(idx)[i] + pw.at_index(idx)[i];
      const Rational& joint = psum.at_index(idx)[i];
      if (separate == joint) continue;
      report.record({{space.at(idx)}, {i}, separate, joint, Relation::kEqual,
                     who(i) + " at " + seq_name(space.at(idx)) + ": " + to_string(separate) +
                         " from the two games separately, " + to_string(joint) + " from their sum"});
    }
  }
  return report;
}

AxiomReport check_EA(const ExtendedConcept& concept_fn, const WorthTable& u, const WorthTable& w) {
  if (u.agents() != w.agents()) throw DomainError("additivity needs games on the same agents");
  const ExtendedVector pu = concept_fn(u);
  const ExtendedVector pw = concept_fn(w);
  const ExtendedVector psum = concept_fn(u + w);
  AxiomReport report = report_for(Axiom::kEA);
  for (AgentId i = 0; i < u.agents(); ++i) {
    Rational separate = pu[i] + pw[i];
    if (separate == psum[i]) continue;
    report.record({{}, {i}, separate, psum[i], Relation::kEqual,
                   who(i) + ": " + to_string(separate) + " from the two games separately, " +
                       to_string(psum[i]) + " from their sum"});
  }
  return report;
}

std::vector<AgentId> find_null_players(const WorthTable& v) {
  const SequenceSpace& space = v.space();
  std::vector<AgentId> null;
  for (AgentId i = 0; i < v.agents(); ++i) {
    bool is_null = true;
    for (std::size_t idx = 0; idx < space.size() && is_null; ++idx) {
      const std::size_t next = space.child(idx, i);
      if (next != SequenceSpace::npos && v.at_index(next) != v.at_index(idx)) is_null = false;
    }
    if (is_null) null.push_back(i);
  }
  return null;
}

AxiomReport check_SNP(const WorthTable& v, const SolutionTable& phi) {
  require_same_agents(v, phi.agents());
  AxiomReport report = report_for(Axiom::kSNP);
  report.null_players = find_null_players(v);
  report.vacuous = report.null_players.empty();
  const SequenceSpace& space = v.space();
  for (AgentId i : report.null_players) {
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
      Rational paid = share(phi, idx, i);
      if (sgn(paid) == 0) continue;
      report.record({{space.at(idx)}, {i}, paid, Rational(0), Relation::kEqual,
                     "null " + who(i) + " receives " + to_string(paid) + " at " +
                         seq_name(space.at(idx))});
    }
  }
  return report;
}

AxiomReport check_ENP(const WorthTable& v, std::span<const Rational> psi) {
  require_same_agents(v, psi.size());
  AxiomReport report = report_for(Axiom::kENP);
  report.null_players = find_null_players(v);
  report.vacuous = report.null_players.empty();
  for (AgentId i : report.null_players) {
    if (sgn(psi[i]) == 0) continue;
    report.record({{}, {i}, psi[i], Rational(0), Relation::kEqual,
                   "null " + who(i) + " receives " + to_string(psi[i])});
  }
  return report;
}

bool swap_invariant(const WorthTable& v, AgentId i, AgentId j) {
  const SequenceSpace& space = v.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    if (v.at_index(idx) != v(swap(space.at(idx), i, j))) return false;
  }
  return true;
}

AxiomReport check_SS(const WorthTable& v, const SolutionTable& phi) {
  require_same_agents(v, phi.agents());
  const SequenceSpace& space = v.space();
  AxiomReport report = report_for(Axiom::kSS);
  for (AgentId i = 0; i < v.agents(); ++i) {
    for (AgentId j = i + 1; j < v.agents(); ++j) {
      if (!swap_invariant(v, i, j)) {
        report.skipped_pairs.emplace_back(i, j);
        continue;
      }
      report.checked_pairs.emplace_back(i, j);
      for (std::size_t idx = 0; idx < space.size(); ++idx) {
        const Sequence mirrored = swap(space.at(idx), i, j);
        Rational mine = share(phi, idx, i);
        Rational theirs = share(phi, space.index_of(mirrored), j);
        if (mine == theirs) continue;
        report.record({{space.at(idx), mirrored}, {i, j}, mine, theirs, Relation::kEqual,
                       who(i) + " receives " + to_string(mine) + " at " + seq_name(space.at(idx)) +
                           " but " + who(j) + " receives " + to_string(theirs) + " at " +
                           seq_name(mirrored)});
      }
    }
  }
  report.vacuous = report.checked_pairs.empty();
  return report;
}

AxiomReport check_ES(const WorthTable& v, std::span<const Rational> psi) {
  require_same_agents(v, psi.size());
  AxiomReport report = report_for(Axiom::kES);
  for (AgentId i = 0; i < v.agents(); ++i) {
    for (AgentId j = i + 1; j < v.agents(); ++j) {
      if (!swap_invariant(v, i, j)) {
        report.skipped_pairs.emplace_back(i, j);
        continue;
      }
      report.checked_pairs.emplace_back(i, j);
      if (psi[i] == psi[j]) continue;
      report.record({{}, {i, j}, psi[i], psi[j], Relation::kEqual,
                     who(i) + " receives " + to_string(psi[i]) + " but the interchangeable " +
                         who(j) + " receives " + to_string(psi[j])});
    }
  }
  report.vacuous = report.checked_pairs.empty();
  return report;
}

AxiomReport check_EE(const WorthTable& v, std::span<const Rational> psi) {
  require_same_agents(v, psi.size());
  AxiomReport report = report_for(Axiom::kEE);
  Rational sum = 0;
  for (const Rational& p : psi) sum += p;
  const Rational average = average_full_worth(v);
  if (sum != average) {
    report.record({{}, {}, sum, average, Relation::kEqual,
                   "payoffs sum to " + to_string(sum) + " but the average full-sequence worth is " +
                       to_string(average)});
  }
  return report;
}

SequentialConcept sequential_concept(std::string_view name) {
  if (name == "margsol") return [](const WorthTable& v) { return margsol(v); };
  constexpr std::string_view kSeqShare = "seqshare:";
  if (name.starts_with(kSeqShare)) {
    const ImprovizePolicy policy = parse_policy(name.substr(kSeqShare.size()));
    return [policy](const WorthTable& v) {
      SeqShareOutcome out = run_seqshare(v, policy);
      if (auto* none = std::get_if<NoBasis>(&out)) {
        throw DomainError("game has no basis solution: " + none->certificate.to_string());
      }
      return std::get<SolutionTable>(std::move(out));
    };
  }
  throw DomainError("unknown sequential concept '" + std::string(name) + "'");
}

ExtendedConcept extended_concept(std::string_view name) {
  if (name == "extshap") return [](const WorthTable& v) { return ext_shap(v); };
  constexpr std::string_view kReduce = "reduce:";
  if (name.starts_with(kReduce)) {
    SequentialConcept inner = sequential_concept(name.substr(kReduce.size()));
    return [inner](const WorthTable& v) { return reduce(inner(v)); };
  }
  throw DomainError("unknown extended concept '" + std::string(name) + "'");
}

CompatVerdict check_extshap_compat(const WorthTable& v) {
  const BasisSystem system = build_system(v);
  BasisOutcome plain = solve(system);
  if (auto* none = std::get_if<Infeasible>(&plain)) return CompatNoBasis{none->certificate};

  const ExtendedVector shap = ext_shap(v);
  std::vector<std::optional<Rational>> floors(shap.begin(), shap.end());
  BasisOutcome raised = solve(system, {}, floors);
  if (auto* ok = std::get_if<Feasible>(&raised)) return Compatible{ok->x};
  const InfeasibilityCertificate& cert = std::get<Infeasible>(raised).certificate;

  std::vector<Rational> caps;
  for (AgentId i = 0; i < v.agents(); ++i) {
    std::optional<Rational> cap = max_coordinate(system, i);
    if (!cap) throw InvariantError("basis became infeasible while computing agent caps");
    if (*cap < shap[i]) return CompatViolation{i, *cap, shap[i], false, cert};
    caps.push_back(*cap);
  }
  for (const CertificateTerm& term : cert.terms) {
    if (!term.floor) continue;
    const AgentId i = static_cast<AgentId>(__builtin_ctz(term.subset));
    return CompatViolation{i, caps[i], shap[i], true, cert};
  }
  throw InvariantError("compatibility certificate names no Ext-Shap floor");
}

}  // namespace tcg
