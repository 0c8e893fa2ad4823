#include "tcg/game.hpp"

#include <optional>

#include "tcg/error.hpp"

namespace tcg {

WorthTable::WorthTable(std::size_t n)
    : space_(SequenceSpace::of(n)), worth_(space_->size(), Rational(0)) {}

WorthTable WorthTable::from_function(std::size_t n,
                                     const std::function<Rational(const Sequence&)>& worth) {
  WorthTable v(n);
  for (std::size_t idx = 1; idx < v.space().size(); ++idx) {
    v.worth_[idx] = worth(v.space().at(idx));
  }
  return v;
}

void WorthTable::set(const Sequence& seq, Rational worth) {
  set_index(space_->index_of(seq), std::move(worth));
}

void WorthTable::set_index(std::size_t index, Rational worth) {
  if (index == SequenceSpace::kEmpty) throw DomainError("v(∅) is fixed at 0");
  worth_.at(index) = std::move(worth);
}

WorthTable operator+(const WorthTable& a, const WorthTable& b) {
  if (a.agents() != b.agents()) throw DomainError("games over different agent counts");
  WorthTable out = a;
  for (std::size_t idx = 0; idx < out.worth_.size(); ++idx) out.worth_[idx] += b.worth_[idx];
  return out;
}

WorthTable operator-(const WorthTable& a, const WorthTable& b) {
  if (a.agents() != b.agents()) throw DomainError("games over different agent counts");
  WorthTable out = a;
  for (std::size_t idx = 0; idx < out.worth_.size(); ++idx) out.worth_[idx] -= b.worth_[idx];
  return out;
}

WorthTable WorthTable::scaled(const Rational& factor) const {
  WorthTable out = *this;
  for (Rational& w : out.worth_) w *= factor;
  return out;
}

std::string to_string(GameProperty property) {
  switch (property) {
    case GameProperty::kMonotone: return "monotone";
    case GameProperty::kConvex: return "convex";
    case GameProperty::kSimple: return "simple";
  }
  return "?";
}

namespace {

// Extremal marginal of agent i over all sequences with a given member set.
struct MarginalExtremes {
  std::optional<Rational> max;
  std::size_t argmax = 0;
  std::optional<Rational> min;
  std::size_t argmin = 0;
};

void check_convex(const WorthTable& v, GameClassReport& report) {
  const SequenceSpace& space = v.space();
  const std::size_t n = space.agents();
  const std::size_t subsets = std::size_t{1} << n;
  // extremes[i * subsets + S] over nonempty π with P(π) = S, i ∉ S.
  std::vector<MarginalExtremes> extremes(n * subsets);
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const Sequence& pi = space.at(idx);
    for (AgentId i = 0; i < n; ++i) {
      const std::size_t child = space.child(idx, i);
      if (child == SequenceSpace::npos) continue;
      Rational marginal = v.at_index(child) - v.at_index(idx);
      MarginalExtremes& e = extremes[i * subsets + pi.members()];
      if (!e.max || marginal > *e.max) {
        e.max = marginal;
        e.argmax = idx;
      }
      if (!e.min || marginal < *e.min) {
        e.min = marginal;
        e.argmin = idx;
      }
    }
  }
  std::size_t found = 0;
  for (AgentId i = 0; i < n; ++i) {
    const AgentMask bit = AgentMask{1} << i;
    for (AgentMask small = 1; small < subsets; ++small) {
      if (small & bit) continue;
      const MarginalExtremes& lo = extremes[i * subsets + small];
      if (!lo.max) continue;
      // Enumerate supersets of `small` not containing i.
      const AgentMask free = static_cast<AgentMask>(subsets - 1) & ~small & ~bit;
      for (AgentMask extra = free;; extra = (extra - 1) & free) {
        const MarginalExtremes& hi = extremes[i * subsets + (small | extra)];
        if (hi.min && *lo.max > *hi.min) {
          report.convex = false;
          if (found++ < GameClassReport::kMaxWitnessesPerProperty) {
            const Sequence& a = space.at(lo.argmax);
            const Sequence& b = space.at(hi.argmin);
            report.violations.push_back(
                {GameProperty::kConvex, a, b,
                 "marginal of agent " + std::to_string(i + 1) + " after (" + a.to_string() +
                     ") is " + to_string(*lo.max) + " > " + to_string(*hi.min) + " after (" +
                     b.to_string() + ")"});
          }
        }
        if (extra == 0) break;
      }
    }
  }
}

}  // namespace

GameClassReport validate(const WorthTable& v) {
  GameClassReport report;
  const SequenceSpace& space = v.space();
  std::size_t monotone_found = 0;
  std::size_t simple_found = 0;
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const Rational& w = v.at_index(idx);
    const std::size_t parent = space.parent(idx);
    if (v.at_index(parent) > w) {
      report.monotone = false;
      if (monotone_found++ < GameClassReport::kMaxWitnessesPerProperty) {
        report.violations.push_back(
            {GameProperty::kMonotone, space.at(parent), space.at(idx),
             "v(" + space.at(parent).to_string() + ") = " + to_string(v.at_index(parent)) +
                 " > " + to_string(w) + " = v(" + space.at(idx).to_string() + ")"});
      }
    }
    if (w != 0 && w != 1) {
      report.simple = false;
      if (simple_found++ < GameClassReport::kMaxWitnessesPerProperty) {
        report.violations.push_back({GameProperty::kSimple, space.at(idx), space.at(idx),
                                     "v(" + space.at(idx).to_string() + ") = " + to_string(w) +
                                         " is not 0 or 1"});
      }
    }
  }
  check_convex(v, report);
  return report;
}

Sequence optimal_sequence(const WorthTable& v) {
  const SequenceSpace& space = v.space();
  std::size_t best = space.full_sequences().front();
  for (std::size_t idx : space.full_sequences()) {
    if (v.at_index(idx) > v.at_index(best)) best = idx;
  }
  return space.at(best);
}

Rational average_full_worth(const WorthTable& v) {
  Rational total = 0;
  for (std::size_t idx : v.space().full_sequences()) total += v.at_index(idx);
  return total / factorial(static_cast<unsigned>(v.agents()));
}

}  // namespace tcg
