#include "tcg/shapley.hpp"

#include <algorithm>
#include <numeric>

#include "tcg/error.hpp"

namespace tcg {

namespace {

void require_carrier(std::size_t n, const Sequence& carrier) {
  if (carrier.empty()) throw DomainError("carrier sequence must be nonempty");
  for (AgentId i : carrier) {
    if (i >= n) throw DomainError("carrier sequence mentions an agent beyond the game");
  }
}

}  // namespace

SolutionTable margsol(const WorthTable& v) {
  const SequenceSpace& space = v.space();
  SolutionTable phi(v.agents());
  std::vector<Rational> row(v.agents());
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const std::size_t parent = space.parent(idx);
    const auto before = phi.at_index(parent);
    std::copy(before.begin(), before.end(), row.begin());
    row[space.at(idx).last()] = v.at_index(idx) - v.at_index(parent);
    phi.set_index(idx, row);
  }
  return phi;
}

ExtendedVector ext_shap(const WorthTable& v) {
  const std::size_t n = v.agents();
  std::vector<AgentId> order(n);
  std::iota(order.begin(), order.end(), AgentId{0});
  ExtendedVector total(n, Rational(0));
  do {
    Sequence seq;
    Rational previous = 0;
    for (AgentId i : order) {
      seq = seq.extended(i);
      const Rational& worth = v(seq);
      total[i] += worth - previous;
      previous = worth;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  const Rational orders = factorial(static_cast<unsigned>(n));
  for (Rational& t : total) t /= orders;
  return total;
}

ExtendedVector reduce(const SolutionTable& phi) {
  const std::size_t n = phi.agents();
  ExtendedVector avg(n, Rational(0));
  for (std::size_t idx : phi.space().full_sequences()) {
    const auto row = phi.at_index(idx);
    for (AgentId i = 0; i < n; ++i) avg[i] += row[i];
  }
  const Rational orders = factorial(static_cast<unsigned>(n));
  for (Rational& a : avg) a /= orders;
  return avg;
}

Rational carrier_worth(const Sequence& carrier, const Sequence& seq, const Rational& alpha) {
  return prefix_or_equal(carrier, seq) ? alpha : Rational(0);
}

WorthTable carrier_game(std::size_t n, const Sequence& carrier, const Rational& alpha) {
  require_carrier(n, carrier);
  return WorthTable::from_function(
      n, [&](const Sequence& seq) { return carrier_worth(carrier, seq, alpha); });
}

CarrierDecomposition::CarrierDecomposition(std::size_t n)
    : space_(SequenceSpace::of(n)), alpha_(space_->size(), Rational(0)) {}

void CarrierDecomposition::set_index(std::size_t index, Rational alpha) {
  if (index == SequenceSpace::kEmpty) throw DomainError("the empty sequence carries no coefficient");
  alpha_.at(index) = std::move(alpha);
}

WorthTable CarrierDecomposition::reconstruct() const {
  WorthTable v(agents());
  for (std::size_t idx = 1; idx < space_->size(); ++idx) {
    Rational sum = 0;
    for (std::size_t at = idx; at != SequenceSpace::kEmpty; at = space_->parent(at)) sum += alpha_[at];
    v.set_index(idx, sum);
  }
  return v;
}

CarrierDecomposition decompose(const WorthTable& v) {
  const SequenceSpace& space = v.space();
  CarrierDecomposition d(v.agents());
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    const Sequence& seq = space.at(idx);
    Rational alpha = v.at_index(idx);
    for (std::size_t len = 1; len < seq.size(); ++len) alpha -= d(seq.prefix(len));
    d.set_index(idx, std::move(alpha));
  }
  if (!(d.reconstruct() == v)) throw InvariantError("carrier decomposition does not reconstruct the game");
  return d;
}

SolutionTable carrier_solution_margsol(std::size_t n, const Sequence& carrier, const Rational& alpha) {
  require_carrier(n, carrier);
  SolutionTable phi(n);
  const SequenceSpace& space = phi.space();
  for (std::size_t idx = 1; idx < space.size(); ++idx) {
    if (prefix_or_equal(carrier, space.at(idx))) phi.set(space.at(idx), carrier.last(), alpha);
  }
  return phi;
}

ExtendedVector carrier_extshap(std::size_t n, const Sequence& carrier, const Rational& alpha) {
  require_carrier(n, carrier);
  ExtendedVector psi(n, Rational(0));
  psi[carrier.last()] = factorial(static_cast<unsigned>(n - carrier.size())) /
                        factorial(static_cast<unsigned>(n)) * alpha;
  return psi;
}

}  // namespace tcg
