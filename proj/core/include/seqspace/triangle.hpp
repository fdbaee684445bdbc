#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "seqspace/expr.hpp"
#include "seqspace/rational.hpp"
#include "seqspace/sequence.hpp"
#include "seqspace/weights.hpp"

namespace seqspace {

enum class OperatorTag {
  Identity,
  Factorable,
  Difference,
  GwmDelta,
  GwmDeltaInverse,
  Composed,
  Inverted,
  Custom,
};

struct OperatorDescriptor {
  OperatorTag tag = OperatorTag::Custom;
  std::string detail;
};

/// An infinite lower-triangular matrix given by an entry rule.
///
/// Entries strictly above the diagonal are exactly zero regardless of the
/// rule. When `diagonal_nonzero` is set, a diagonal entry that evaluates to
/// zero is an error, discovered lazily at probe time. Immutable and safe for
/// concurrent probing.
class Triangle {
 public:
  using Rule = std::function<Rational(std::int64_t, std::int64_t)>;

  Triangle(Rule entry, bool diagonal_nonzero, OperatorDescriptor descriptor = {},
           bool memoize = true);

  /// Wraps a two-variable (n, k) expression as a triangle; entries above the
  /// diagonal are zeroed by the wrapper rather than trusted from the rule.
  static Triangle from_matrix_expr(const SeqExpr& expr,
                                   bool diagonal_nonzero = false);

  Rational entry(std::int64_t n, std::int64_t k) const;

  bool diagonal_nonzero() const;
  const OperatorDescriptor& descriptor() const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

Triangle identity_triangle();

/// G(u,v): entries u_n * v_k for k <= n.
Triangle factorable(const Weights& w);

/// Row rule (x_k - x_{k-1}): 1 on the diagonal, -1 on the subdiagonal.
Triangle difference_triangle();

/// Cumulative sums; the inverse of difference_triangle().
Triangle summation_triangle();

/// The combined operator G(u,v) * difference, in closed form:
/// entry(n,i) = u_n * (v_i - v_{i+1}) for i < n, and u_n * v_n at i = n.
Triangle gwm_delta(const Weights& w);

/// Closed-form inverse of gwm_delta(w):
/// entry(k,i) = (1/u_i) * (1/v_i - 1/v_{i+1}) for i < k, and 1/(u_k v_k)
/// at i = k.
Triangle gwm_delta_inverse(const Weights& w);

/// Row action: sum_{k<=n} entry(n,k) * x_k, exact.
Rational apply(const Triangle& a, const Sequence& x, std::int64_t n);

/// The transformed sequence n -> apply(a, x, n), lazily memoized.
Sequence apply(const Triangle& a, const Sequence& x);

/// Matrix product; entry(n,k) = sum_{j=k..n} a(n,j) * b(j,k).
Triangle compose(const Triangle& a, const Triangle& b);

/// Two-sided inverse by forward substitution with per-column memoization.
/// Requires diagonal_nonzero; a zero diagonal entry discovered while probing
/// throws DomainError.
Triangle invert(const Triangle& a);

}  // namespace seqspace
