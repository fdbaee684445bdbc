#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqspace/rational.hpp"

namespace seqspace {

/// An infinite sequence of rationals given by a total rule on k >= 0.
///
/// Terms with negative index evaluate to 0. Evaluation is deterministic and
/// memoized; a Sequence is an immutable value and safe to share across
/// threads (the memo is the only mutable state and is internally locked).
class Sequence {
 public:
  using Rule = std::function<Rational(std::int64_t)>;

  /// The zero sequence.
  Sequence();

  explicit Sequence(Rule rule, std::string descriptor = {},
                    std::optional<std::size_t> cache_cap = std::nullopt);

  /// Sequence equal to `prefix` followed by the constant `tail`.
  static Sequence from_values(std::vector<Rational> prefix, Rational tail = 0,
                              std::string descriptor = {});

  Rational operator()(std::int64_t k) const;

  const std::string& descriptor() const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

// Stock sequences.
Sequence ones();                         // e = (1,1,1,...)
Sequence zero_sequence();
Sequence harmonic_sequence();            // 1/(k+1)
Sequence naturals();                     // (1,2,3,...)
Sequence geometric_sequence(Rational r); // r^k
Sequence unit_sequence(std::int64_t j);  // e^(j)

// Pointwise combinators. All results are lazily evaluated and memoized.
Sequence delta(const Sequence& s);                    // s_k - s_{k-1}
Sequence nabla(const Sequence& s);                    // s_i - s_{i+1}
Sequence shift(const Sequence& s, std::int64_t by);   // k -> s_{k-by}
Sequence operator+(const Sequence& a, const Sequence& b);
Sequence operator-(const Sequence& a, const Sequence& b);
Sequence operator*(const Rational& c, const Sequence& s);

/// Running sums P_n = sum_{i<=n} s_i, filled incrementally (no deep
/// recursion even for large n).
Sequence prefix_sums(const Sequence& s);

}  // namespace seqspace
