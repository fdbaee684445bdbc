#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "seqspace/rational.hpp"
#include "seqspace/sequence.hpp"
#include "seqspace/triangle.hpp"

namespace seqspace {

/// A general infinite matrix given by an entry rule, with an optional
/// declared per-row support bound r(n): entries beyond r(n) are exactly 0.
/// Rows without a support declaration can only be summed approximately.
class InfiniteMatrix {
 public:
  using Rule = std::function<Rational(std::int64_t, std::int64_t)>;
  using SupportRule = std::function<std::int64_t(std::int64_t)>;

  InfiniteMatrix(Rule entry, std::optional<SupportRule> row_support,
                 std::string descriptor = {});

  Rational entry(std::int64_t n, std::int64_t k) const;

  /// Largest column index that may be nonzero in row n, when declared.
  std::optional<std::int64_t> row_support(std::int64_t n) const;

  bool row_finite() const;
  const std::string& descriptor() const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

InfiniteMatrix from_triangle(const Triangle& t);
InfiniteMatrix identity_matrix();
InfiniteMatrix cesaro_matrix();   // entries 1/(n+1) for k <= n
InfiniteMatrix zero_matrix();
InfiniteMatrix diagonal_matrix(const Sequence& d);

/// Resolves a CLI matrix description: one of the builtin names (identity,
/// cesaro, zero, diagonal(EXPR)) or a two-variable (n,k) expression, which
/// declares a triangular rule for k <= n.
InfiniteMatrix matrix_from_text(const std::string& text);

}  // namespace seqspace
