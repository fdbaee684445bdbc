#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "seqspace/rational.hpp"
#include "seqspace/sequence.hpp"

namespace seqspace {

namespace detail {
struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;
}  // namespace detail

/// Parsed arithmetic expression over rationals and index variables.
///
/// Grammar:
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-' factor | base ('^' factor)?
///   base    := integer | variable | builtin | '(' expr ')'
///   builtin := 'e' | 'harmonic' | 'enumerate' | 'geometric' '(' const ')'
///            | 'unit' '(' const ')'
///
/// Sequence expressions use the variable k; matrix expressions use n and k.
/// Exponents may be arbitrary subexpressions but must evaluate to an integer.
/// Builtin arguments are constant-folded at parse time.
class SeqExpr {
 public:
  /// Parses a one-variable (k) expression. Throws ParseError with position.
  static SeqExpr parse(std::string_view text);

  /// Parses a two-variable (n, k) expression for matrix entry rules.
  static SeqExpr parse_matrix(std::string_view text);

  Rational eval(std::int64_t k) const;
  Rational eval(std::int64_t n, std::int64_t k) const;

  /// Canonical text form; parsing it yields a structurally equal expression.
  std::string pretty() const;

  bool same_structure(const SeqExpr& other) const;

  /// True when the expression references the row variable n.
  bool uses_n() const;

  /// One-variable expressions as a lazy sequence (descriptor = pretty()).
  Sequence to_sequence() const;

 private:
  explicit SeqExpr(detail::ExprNodePtr root) : root_(std::move(root)) {}
  detail::ExprNodePtr root_;
};

/// Shorthand: parse `text` as a k-expression and wrap it as a Sequence.
Sequence sequence_from_expr(std::string_view text);

}  // namespace seqspace
