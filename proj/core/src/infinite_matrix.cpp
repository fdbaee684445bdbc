#include "seqspace/infinite_matrix.hpp"

#include <utility>

#include "seqspace/errors.hpp"
#include "seqspace/expr.hpp"

namespace seqspace {

struct InfiniteMatrix::State {
  Rule rule;
  std::optional<SupportRule> row_support;
  std::string descriptor;
};

InfiniteMatrix::InfiniteMatrix(Rule entry, std::optional<SupportRule> row_support,
                               std::string descriptor) {
  auto state = std::make_shared<State>();
  state->rule = std::move(entry);
  state->row_support = std::move(row_support);
  state->descriptor = std::move(descriptor);
  state_ = std::move(state);
}

Rational InfiniteMatrix::entry(std::int64_t n, std::int64_t k) const {
  if (n < 0 || k < 0) return Rational(0);
  if (state_->row_support && k > (*state_->row_support)(n)) return Rational(0);
  return state_->rule(n, k);
}

std::optional<std::int64_t> InfiniteMatrix::row_support(std::int64_t n) const {
  if (!state_->row_support) return std::nullopt;
  return (*state_->row_support)(n);
}

bool InfiniteMatrix::row_finite() const {
  return state_->row_support.has_value();
}

const std::string& InfiniteMatrix::descriptor() const {
  return state_->descriptor;
}

InfiniteMatrix from_triangle(const Triangle& t) {
  return InfiniteMatrix(
      [t](std::int64_t n, std::int64_t k) { return t.entry(n, k); },
      [](std::int64_t n) { return n; }, t.descriptor().detail);
}

InfiniteMatrix identity_matrix() {
  return InfiniteMatrix(
      [](std::int64_t n, std::int64_t k) {
        return n == k ? Rational(1) : Rational(0);
      },
      [](std::int64_t n) { return n; }, "identity");
}

InfiniteMatrix cesaro_matrix() {
  return InfiniteMatrix(
      [](std::int64_t n, std::int64_t k) {
        return k <= n ? Rational(1, n + 1) : Rational(0);
      },
      [](std::int64_t n) { return n; }, "cesaro");
}

InfiniteMatrix zero_matrix() {
  return InfiniteMatrix(
      [](std::int64_t, std::int64_t) { return Rational(0); },
      [](std::int64_t) { return std::int64_t{-1}; }, "zero");
}

InfiniteMatrix diagonal_matrix(const Sequence& d) {
  return InfiniteMatrix(
      [d](std::int64_t n, std::int64_t k) {
        return n == k ? d(n) : Rational(0);
      },
      [](std::int64_t n) { return n; }, "diagonal(" + d.descriptor() + ")");
}

InfiniteMatrix matrix_from_text(const std::string& text) {
  if (text == "identity") return identity_matrix();
  if (text == "cesaro") return cesaro_matrix();
  if (text == "zero") return zero_matrix();
  if (text.rfind("diagonal(", 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(9, text.size() - 10);
    return diagonal_matrix(sequence_from_expr(inner));
  }
  // Anything else is a two-variable entry rule, triangular by convention.
  return from_triangle(Triangle::from_matrix_expr(SeqExpr::parse_matrix(text)));
}

}  // namespace seqspace
