#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tcg/rational.hpp"
#include "tcg/sequence.hpp"
#include "tcg/sequence_space.hpp"

namespace tcg {

/// A temporal cooperative game: a worth for every nonempty sequence over n
/// agents, with the empty sequence fixed at 0. Always total.
class WorthTable {
 public:
  /// The zero game on n agents.
  explicit WorthTable(std::size_t n);

  static WorthTable from_function(std::size_t n,
                                  const std::function<Rational(const Sequence&)>& worth);

  std::size_t agents() const noexcept { return space_->agents(); }
  const SequenceSpace& space() const noexcept { return *space_; }

  const Rational& operator()(const Sequence& seq) const { return worth_[space_->index_of(seq)]; }
  const Rational& at_index(std::size_t index) const { return worth_[index]; }
  std::span<const Rational> worths() const noexcept { return worth_; }

  /// Throws DomainError when asked to change the empty sequence.
  void set(const Sequence& seq, Rational worth);
  void set_index(std::size_t index, Rational worth);

  friend bool operator==(const WorthTable& a, const WorthTable& b) {
    return a.agents() == b.agents() && a.worth_ == b.worth_;
  }
  friend WorthTable operator+(const WorthTable& a, const WorthTable& b);
  friend WorthTable operator-(const WorthTable& a, const WorthTable& b);
  WorthTable scaled(const Rational& factor) const;

 private:
  std::shared_ptr<const SequenceSpace> space_;
  std::vector<Rational> worth_;
};

enum class GameProperty { kMonotone, kConvex, kSimple };

std::string to_string(GameProperty property);

struct ClassViolation {
  GameProperty property;
  Sequence first;
  Sequence second;
  std::string description;
};

struct GameClassReport {
  bool monotone = true;
  bool convex = true;
  bool simple = true;
  /// Concrete witnesses, at most `kMaxWitnessesPerProperty` per property.
  std::vector<ClassViolation> violations;

  static constexpr std::size_t kMaxWitnessesPerProperty = 16;
};

/// Checks monotonicity over every (immediate prefix, sequence) pair including
/// ∅ → (i); convexity over every (π, π′, i) with i ∉ P(π′), P(π) ⊆ P(π′), π and π′
/// nonempty; simplicity as worths in {0, 1}.
GameClassReport validate(const WorthTable& v);

/// π*(v): the canonical-order-first full-length sequence of maximum worth.
Sequence optimal_sequence(const WorthTable& v);

/// Σ of worths over full-length sequences, divided by n!.
Rational average_full_worth(const WorthTable& v);

}  // namespace tcg
