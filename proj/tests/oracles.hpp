#pragma once

// Independent reference computations used to cross-check the library. Each one
// takes the slow, literal route from the definitions and shares no code with the
// routine it checks beyond the basic Sequence/WorthTable containers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tcg/game.hpp"
#include "tcg/rational.hpp"
#include "tcg/sequence.hpp"
#include "tcg/solution_table.hpp"

namespace oracle {

using tcg::AgentId;
using tcg::AgentMask;
using tcg::Rational;
using tcg::Sequence;
using tcg::WorthTable;

/// n!/(n−k)! summed over k = 1..n.
inline std::size_t sequence_count(std::size_t n) {
  std::size_t total = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t term = 1;
    for (std::size_t f = n - k + 1; f <= n; ++f) term *= f;
    total += term;
  }
  return total;
}

/// Every nonempty sequence, built by recursive extension and then sorted.
inline std::vector<Sequence> all_sequences(std::size_t n) {
  std::vector<Sequence> out;
  std::vector<Sequence> frontier{Sequence{}};
  while (!frontier.empty()) {
    std::vector<Sequence> next;
    for (const Sequence& s : frontier) {
      for (AgentId i = 0; i < n; ++i) {
        if (!s.contains(i)) next.push_back(s.extended(i));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Sequence& a, const Sequence& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.agents() < b.agents();
  });
  return out;
}

/// Convexity by the literal triple loop over (π, π′, i).
inline bool convex(const WorthTable& v) {
  const auto seqs = all_sequences(v.agents());
  for (const Sequence& p : seqs) {
    for (const Sequence& q : seqs) {
      if ((p.members() & ~q.members()) != 0) continue;
      for (AgentId i = 0; i < v.agents(); ++i) {
        if (p.contains(i) || q.contains(i)) continue;
        if (v(p.extended(i)) - v(p) > v(q.extended(i)) - v(q)) return false;
      }
    }
  }
  return true;
}

/// Every sequence constraint of the basis system checked one by one.
inline bool is_basis_point(const WorthTable& v, const std::vector<Rational>& x) {
  Rational best = -1;
  Rational best_sum = 0;
  for (const Sequence& s : all_sequences(v.agents())) {
    Rational sum = 0;
    for (AgentId i : s) sum += x[i];
    if (sum < v(s)) return false;
    if (s.size() == v.agents() && v(s) > best) {
      best = v(s);
      best_sum = sum;
    }
  }
  return best_sum == best;
}

/// Solves A y = b exactly; nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

/// All vertices of the basis polytope by brute force: every choice of n−1
/// subset rows made tight together with the equality, solved exactly, kept
/// when it satisfies the full sequence system. The polytope is bounded, so it
/// is empty exactly when this list is.
inline std::vector<std::vector<Rational>> basis_vertices(const WorthTable& v) {
  const std::size_t n = v.agents();
  Rational total = -1;
  for (const Sequence& s : all_sequences(n)) {
    if (s.size() == n) total = std::max(total, v(s));
  }
  std::vector<std::pair<AgentMask, Rational>> rows;  // proper subsets with their largest worth
  for (AgentMask m = 1; m + 1 < (AgentMask{1} << n); ++m) {
    Rational w = -1;
    for (const Sequence& s : all_sequences(n)) {
      if (s.members() == m) w = std::max(w, v(s));
    }
    rows.emplace_back(m, w);
  }
  std::vector<std::vector<Rational>> vertices;
  std::vector<std::size_t> pick(n - 1);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t from) {
    if (depth == n - 1) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (std::size_t k : pick) {
        std::vector<Rational> row(n, Rational(0));
        for (AgentId i = 0; i < n; ++i) row[i] = (rows[k].first >> i) & 1U;
        a.push_back(row);
        b.push_back(rows[k].second);
      }
      a.emplace_back(n, Rational(1));
      b.push_back(total);
      auto x = solve_linear(a, b);
      if (x && is_basis_point(v, *x) &&
          std::find(vertices.begin(), vertices.end(), *x) == vertices.end()) {
        vertices.push_back(*x);
      }
      return;
    }
    for (std::size_t k = from; k < rows.size(); ++k) {
      pick[depth] = k;
      choose(depth + 1, k + 1);
    }
  };
  choose(0, 0);
  return vertices;
}

/// MargSol_i(π) straight from the predecessor definition.
inline Rational marginal(const WorthTable& v, const Sequence& seq, AgentId i) {
  if (!seq.contains(i)) return 0;
  const Sequence before = tcg::predecessor(seq, i);
  return v(before.extended(i)) - v(before);
}

/// Ext-Shap from the marginal definition over every full-length sequence.
inline std::vector<Rational> ext_shap(const WorthTable& v) {
  const std::size_t n = v.agents();
  std::vector<Rational> sum(n, Rational(0));
  Rational count = 0;
  for (const Sequence& s : all_sequences(n)) {
    if (s.size() != n) continue;
    count += 1;
    for (AgentId i = 0; i < n; ++i) sum[i] += marginal(v, s, i);
  }
  for (Rational& x : sum) x /= count;
  return sum;
}

/// Σ_π α_π [π ⊑ π′] evaluated pairwise.
inline WorthTable reconstruct(std::size_t n, const std::function<Rational(const Sequence&)>& alpha) {
  const auto seqs = all_sequences(n);
  WorthTable v(n);
  for (const Sequence& target : seqs) {
    Rational sum = 0;
    for (const Sequence& carrier : seqs) {
      const bool prefix = carrier.size() <= target.size() &&
                          std::equal(carrier.begin(), carrier.end(), target.begin());
      if (prefix) sum += alpha(carrier);
    }
    v.set(target, sum);
  }
  return v;
}

/// A game with arbitrary signed rational worths, for algebraic identities that
/// do not need monotonicity.
inline WorthTable signed_game(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  WorthTable v(n);
  for (std::size_t idx = 1; idx < v.space().size(); ++idx) {
    const long num = static_cast<long>(rng() % 41) - 20;
    const long den = static_cast<long>(rng() % 6) + 1;
    v.set_index(idx, tcg::fraction(num, den));
  }
  return v;
}

}  // namespace oracle
