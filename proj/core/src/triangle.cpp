#include "seqspace/triangle.hpp"

#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqspace/errors.hpp"

namespace seqspace {
namespace {

std::uint64_t entry_key(std::int64_t n, std::int64_t k) {
  return (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(k);
}

}  // namespace

struct Triangle::State {
  Rule rule;
  bool diagonal_nonzero = false;
  OperatorDescriptor descriptor;
  bool memoize = true;
  mutable std::mutex mutex;
  mutable std::unordered_map<std::uint64_t, Rational> memo;
};

Triangle::Triangle(Rule entry, bool diagonal_nonzero,
                   OperatorDescriptor descriptor, bool memoize) {
  auto state = std::make_shared<State>();
  state->rule = std::move(entry);
  state->diagonal_nonzero = diagonal_nonzero;
  state->descriptor = std::move(descriptor);
  state->memoize = memoize;
  state_ = std::move(state);
}

Triangle Triangle::from_matrix_expr(const SeqExpr& expr, bool diagonal_nonzero) {
  return Triangle(
      [expr](std::int64_t n, std::int64_t k) { return expr.eval(n, k); },
      diagonal_nonzero, {OperatorTag::Custom, expr.pretty()});
}

Rational Triangle::entry(std::int64_t n, std::int64_t k) const {
  if (k > n || n < 0 || k < 0) return Rational(0);
  const State& st = *state_;
  const std::uint64_t key = entry_key(n, k);
  if (st.memoize) {
    std::lock_guard lock(st.mutex);
    auto it = st.memo.find(key);
    if (it != st.memo.end()) return it->second;
  }
  Rational value = st.rule(n, k);
  if (st.diagonal_nonzero && n == k && value == 0)
    throw DomainError("zero diagonal entry at n=" + std::to_string(n) +
                      " in a triangle declared diagonal-nonzero");
  if (st.memoize) {
    std::lock_guard lock(st.mutex);
    st.memo.emplace(key, value);
  }
  return value;
}

bool Triangle::diagonal_nonzero() const { return state_->diagonal_nonzero; }

const OperatorDescriptor& Triangle::descriptor() const {
  return state_->descriptor;
}

Triangle identity_triangle() {
  return Triangle(
      [](std::int64_t n, std::int64_t k) {
        return n == k ? Rational(1) : Rational(0);
      },
      /*diagonal_nonzero=*/true, {OperatorTag::Identity, "identity"},
      /*memoize=*/false);
}

Triangle factorable(const Weights& w) {
  return Triangle(
      [w](std::int64_t n, std::int64_t k) { return w.u_at(n) * w.v_at(k); },
      /*diagonal_nonzero=*/true, {OperatorTag::Factorable, "G(u,v)"},
      /*memoize=*/false);
}

Triangle difference_triangle() {
  return Triangle(
      [](std::int64_t n, std::int64_t k) {
        if (k == n) return Rational(1);
        if (k == n - 1) return Rational(-1);
        return Rational(0);
      },
      /*diagonal_nonzero=*/true, {OperatorTag::Difference, "difference"},
      /*memoize=*/false);
}

Triangle summation_triangle() {
  return Triangle(
      [](std::int64_t, std::int64_t) { return Rational(1); },
      /*diagonal_nonzero=*/true, {OperatorTag::Custom, "summation"},
      /*memoize=*/false);
}

Triangle gwm_delta(const Weights& w) {
  return Triangle(
      [w](std::int64_t n, std::int64_t i) {
        if (i == n) return w.u_at(n) * w.v_at(n);
        return w.u_at(n) * (w.v()(i) - w.v()(i + 1));
      },
      /*diagonal_nonzero=*/true, {OperatorTag::GwmDelta, "G(u,v)*difference"},
      /*memoize=*/false);
}

Triangle gwm_delta_inverse(const Weights& w) {
  return Triangle(
      [w](std::int64_t k, std::int64_t i) {
        if (i == k) return Rational(1) / (w.u_at(k) * w.v_at(k));
        return (Rational(1) / w.u_at(i)) *
               (Rational(1) / w.v_at(i) - Rational(1) / w.v_at(i + 1));
      },
      /*diagonal_nonzero=*/true,
      {OperatorTag::GwmDeltaInverse, "inverse of G(u,v)*difference"},
      /*memoize=*/false);
}

Rational apply(const Triangle& a, const Sequence& x, std::int64_t n) {
  Rational sum(0);
  for (std::int64_t k = 0; k <= n; ++k) sum += a.entry(n, k) * x(k);
  return sum;
}

Sequence apply(const Triangle& a, const Sequence& x) {
  return Sequence([a, x](std::int64_t n) { return apply(a, x, n); },
                  a.descriptor().detail + "*" + x.descriptor());
}

Triangle compose(const Triangle& a, const Triangle& b) {
  const bool diag = a.diagonal_nonzero() && b.diagonal_nonzero();
  return Triangle(
      [a, b](std::int64_t n, std::int64_t k) {
        Rational sum(0);
        for (std::int64_t j = k; j <= n; ++j)
          sum += a.entry(n, j) * b.entry(j, k);
        return sum;
      },
      diag,
      {OperatorTag::Composed,
       a.descriptor().detail + "*" + b.descriptor().detail});
}

Triangle invert(const Triangle& a) {
  if (!a.diagonal_nonzero())
    throw DomainError("invert requires a diagonal-nonzero triangle");

  // Columns are memoized whole: column k holds T(k,k), T(k+1,k), ... and is
  // extended by forward substitution
  //   T(n,k) = -(1/a(n,n)) * sum_{j=k}^{n-1} a(n,j) T(j,k),  T(k,k) = 1/a(k,k).
  struct InverseState {
    Triangle source;
    std::mutex mutex;
    std::vector<std::vector<Rational>> columns;
    explicit InverseState(Triangle s) : source(std::move(s)) {}
  };
  auto st = std::make_shared<InverseState>(a);

  return Triangle(
      [st](std::int64_t n, std::int64_t k) -> Rational {
        std::lock_guard lock(st->mutex);
        if (st->columns.size() <= static_cast<std::size_t>(k))
          st->columns.resize(static_cast<std::size_t>(k) + 1);
        auto& column = st->columns[static_cast<std::size_t>(k)];
        while (static_cast<std::int64_t>(column.size()) <= n - k) {
          const std::int64_t row = k + static_cast<std::int64_t>(column.size());
          if (column.empty()) {
            column.push_back(Rational(1) / st->source.entry(row, row));
          } else {
            Rational sum(0);
            for (std::int64_t j = k; j < row; ++j)
              sum += st->source.entry(row, j) *
                     column[static_cast<std::size_t>(j - k)];
            column.push_back(-sum / st->source.entry(row, row));
          }
        }
        return column[static_cast<std::size_t>(n - k)];
      },
      /*diagonal_nonzero=*/true,
      {OperatorTag::Inverted, "inverse of " + a.descriptor().detail},
      /*memoize=*/false);
}

}  // namespace seqspace
