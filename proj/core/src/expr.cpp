#include "seqspace/expr.hpp"

#include <cctype>
#include <utility>
#include <variant>

#include "seqspace/errors.hpp"

namespace seqspace {
namespace detail {

enum class BuiltinKind { E, Harmonic, Enumerate, Geometric, Unit };

struct ExprNode {
  struct Literal { Rational value; };
  struct Var { char name; };
  struct Negate { ExprNodePtr operand; };
  struct Binary { char op; ExprNodePtr lhs; ExprNodePtr rhs; };
  struct Builtin { BuiltinKind kind; Rational arg; };

  std::variant<Literal, Var, Negate, Binary, Builtin> node;
};

namespace {

constexpr std::int64_t kMaxExponent = 1'000'000;

struct Env {
  std::int64_t k = 0;
  std::int64_t n = 0;
  bool has_n = false;
};

Rational eval_node(const ExprNode& e, const Env& env);

std::int64_t integer_exponent(const Rational& r) {
  if (denominator(r) != 1) throw EvalError("exponent must be an integer");
  const BigInt num = numerator(r);
  if (num > kMaxExponent || num < -kMaxExponent)
    throw EvalError("exponent magnitude exceeds " + std::to_string(kMaxExponent));
  return num.convert_to<std::int64_t>();
}

bool references_variable(const ExprNode& e) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExprNode::Var>) {
          return true;
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return references_variable(*node.operand);
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          return references_variable(*node.lhs) || references_variable(*node.rhs);
        } else {
          return false;
        }
      },
      e.node);
}

Rational eval_builtin(const ExprNode::Builtin& b, std::int64_t k) {
  switch (b.kind) {
    case BuiltinKind::E: return Rational(1);
    case BuiltinKind::Harmonic: return Rational(1, k + 1);
    case BuiltinKind::Enumerate: return Rational(k + 1);
    case BuiltinKind::Geometric: return rational_pow(b.arg, k);
    case BuiltinKind::Unit:
      return Rational(k) == b.arg ? Rational(1) : Rational(0);
  }
  throw EvalError("unhandled builtin");
}

Rational eval_node(const ExprNode& e, const Env& env) {
  return std::visit(
      [&](const auto& node) -> Rational {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExprNode::Literal>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, ExprNode::Var>) {
          return node.name == 'k' ? Rational(env.k) : Rational(env.n);
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return -eval_node(*node.operand, env);
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          if (node.op == '^') {
            const Rational base = eval_node(*node.lhs, env);
            const std::int64_t exp = integer_exponent(eval_node(*node.rhs, env));
            return rational_pow(base, exp);
          }
          const Rational lhs = eval_node(*node.lhs, env);
          const Rational rhs = eval_node(*node.rhs, env);
          switch (node.op) {
            case '+': return lhs + rhs;
            case '-': return lhs - rhs;
            case '*': return lhs * rhs;
            case '/':
              if (rhs == 0) {
                std::string where = "k=" + std::to_string(env.k);
                if (env.has_n) where += ", n=" + std::to_string(env.n);
                throw EvalError("division by zero (" + where + ")");
              }
              return lhs / rhs;
          }
          throw EvalError("unhandled operator");
        } else {
          return eval_builtin(node, env.k);
        }
      },
      e.node);
}

class Parser {
 public:
  Parser(std::string_view text, bool allow_n) : text_(text), allow_n_(allow_n) {}

  ExprNodePtr run() {
    ExprNodePtr root = parse_expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprNodePtr parse_expr() {
    ExprNodePtr lhs = parse_term();
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      ExprNodePtr rhs = parse_term();
      lhs = make(ExprNode::Binary{c, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprNodePtr parse_term() {
    ExprNodePtr lhs = parse_factor();
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') break;
      ++pos_;
      ExprNodePtr rhs = parse_factor();
      lhs = make(ExprNode::Binary{c, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprNodePtr parse_factor() {
    if (consume('-')) return make(ExprNode::Negate{parse_factor()});
    ExprNodePtr base = parse_base();
    if (consume('^')) {
      ExprNodePtr exponent = parse_factor();
      return make(ExprNode::Binary{'^', std::move(base), std::move(exponent)});
    }
    return base;
  }

  ExprNodePtr parse_base() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprNodePtr inner = parse_expr();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_integer();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    throw ParseError("expected a number, name or '('", pos_);
  }

  ExprNodePtr parse_integer() {
    skip_space();
    BigInt value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return make(ExprNode::Literal{Rational(value)});
  }

  ExprNodePtr parse_name() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    if (name == "k") return make(ExprNode::Var{'k'});
    if (name == "n") {
      if (!allow_n_)
        throw ParseError("variable 'n' is only available in matrix expressions",
                         start);
      return make(ExprNode::Var{'n'});
    }
    if (name == "e") return make(ExprNode::Builtin{BuiltinKind::E, 0});
    if (name == "harmonic")
      return make(ExprNode::Builtin{BuiltinKind::Harmonic, 0});
    if (name == "enumerate")
      return make(ExprNode::Builtin{BuiltinKind::Enumerate, 0});
    if (name == "geometric")
      return make(ExprNode::Builtin{BuiltinKind::Geometric, constant_argument(name)});
    if (name == "unit") {
      const Rational j = constant_argument(name);
      if (denominator(j) != 1)
        throw ParseError("unit() takes an integer index", start);
      return make(ExprNode::Builtin{BuiltinKind::Unit, j});
    }
    throw ParseError("unknown builtin '" + name + "'", start);
  }

  // Builtin arguments are constant subexpressions, folded here.
  Rational constant_argument(const std::string& name) {
    if (!consume('('))
      throw ParseError("builtin '" + name + "' expects '('", pos_);
    ExprNodePtr arg = parse_expr();
    if (!consume(')')) throw ParseError("expected ')'", pos_);
    if (references_variable(*arg))
      throw ParseError("argument of '" + name + "' must be constant", pos_);
    try {
      Env env;
      return eval_node(*arg, env);
    } catch (const EvalError& e) {
      throw ParseError(
          "argument of '" + name + "' must be a constant: " + e.what(), pos_);
    }
  }

  template <typename Node>
  static ExprNodePtr make(Node&& node) {
    auto e = std::make_shared<ExprNode>();
    e->node = std::forward<Node>(node);
    return e;
  }

  std::string_view text_;
  bool allow_n_;
  std::size_t pos_ = 0;
};

int precedence_of(const ExprNode& e) {
  return std::visit(
      [](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          switch (node.op) {
            case '+': case '-': return 1;
            case '*': case '/': return 2;
            default: return 4;  // '^'
          }
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return 3;
        } else if constexpr (std::is_same_v<T, ExprNode::Literal>) {
          return node.value < 0 || denominator(node.value) != 1 ? 0 : 5;
        } else {
          return 5;
        }
      },
      e.node);
}

void print_node(const ExprNode& e, std::string& out, int min_precedence) {
  const int prec = precedence_of(e);
  const bool parens = prec < min_precedence;
  if (parens) out += '(';
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExprNode::Literal>) {
          out += to_fraction_string(node.value);
        } else if constexpr (std::is_same_v<T, ExprNode::Var>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          out += '-';
          print_node(*node.operand, out, 3);
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          if (node.op == '^') {
            print_node(*node.lhs, out, 5);
            out += '^';
            print_node(*node.rhs, out, 5);
          } else {
            const int level = node.op == '+' || node.op == '-' ? 1 : 2;
            print_node(*node.lhs, out, level);
            out += node.op;
            // Left-associative: the right operand must bind tighter.
            print_node(*node.rhs, out, level + 1);
          }
        } else {
          switch (node.kind) {
            case BuiltinKind::E: out += "e"; break;
            case BuiltinKind::Harmonic: out += "harmonic"; break;
            case BuiltinKind::Enumerate: out += "enumerate"; break;
            case BuiltinKind::Geometric:
              out += "geometric(" + to_fraction_string(node.arg) + ")";
              break;
            case BuiltinKind::Unit:
              out += "unit(" + to_fraction_string(node.arg) + ")";
              break;
          }
        }
      },
      e.node);
  if (parens) out += ')';
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, ExprNode::Literal>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, ExprNode::Var>) {
          return lhs.name == rhs.name;
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return nodes_equal(*lhs.operand, *rhs.operand);
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          return lhs.op == rhs.op && nodes_equal(*lhs.lhs, *rhs.lhs) &&
                 nodes_equal(*lhs.rhs, *rhs.rhs);
        } else {
          return lhs.kind == rhs.kind && lhs.arg == rhs.arg;
        }
      },
      a.node);
}

bool node_uses_n(const ExprNode& e) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExprNode::Var>) {
          return node.name == 'n';
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return node_uses_n(*node.operand);
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          return node_uses_n(*node.lhs) || node_uses_n(*node.rhs);
        } else {
          return false;
        }
      },
      e.node);
}

}  // namespace
}  // namespace detail

SeqExpr SeqExpr::parse(std::string_view text) {
  return SeqExpr(detail::Parser(text, /*allow_n=*/false).run());
}

SeqExpr SeqExpr::parse_matrix(std::string_view text) {
  return SeqExpr(detail::Parser(text, /*allow_n=*/true).run());
}

Rational SeqExpr::eval(std::int64_t k) const {
  detail::Env env;
  env.k = k;
  return detail::eval_node(*root_, env);
}

Rational SeqExpr::eval(std::int64_t n, std::int64_t k) const {
  detail::Env env;
  env.k = k;
  env.n = n;
  env.has_n = true;
  return detail::eval_node(*root_, env);
}

std::string SeqExpr::pretty() const {
  std::string out;
  detail::print_node(*root_, out, 0);
  return out;
}

bool SeqExpr::same_structure(const SeqExpr& other) const {
  return detail::nodes_equal(*root_, *other.root_);
}

bool SeqExpr::uses_n() const { return detail::node_uses_n(*root_); }

Sequence SeqExpr::to_sequence() const {
  SeqExpr copy = *this;
  return Sequence([copy](std::int64_t k) { return copy.eval(k); }, pretty());
}

Sequence sequence_from_expr(std::string_view text) {
  return SeqExpr::parse(text).to_sequence();
}

}  // namespace seqspace
