#pragma once

// Scalar expression front-end.
//
// Grammar (whitespace-insensitive):
//
//   expr     := term   (('+' | '-') term)*
//   term     := unary  (('*' | '/') unary)*
//   unary    := ('-' | '+') unary | power
//   power    := primary ('^' exponent)?
//   exponent := ('-' | '+') exponent | power          (right-associative)
//   primary  := number | identifier | function '(' expr ')' | '(' expr ')'
//   number   := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//   function := sin | cos | tan | exp | log | sqrt | sinh | cosh | neg
//
// `pi` is the only named constant. Identifiers must belong to the variable
// set passed to parse(). Error positions are 0-based character offsets.

#include "helixgeom/errors.hpp"
#include "helixgeom/jet.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace helixgeom {

enum class Func { Neg, Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

inline const char* func_name(Func f) {
  switch (f) {
    case Func::Neg: return "neg";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
  }
  return "?";
}

struct ExprNode {
  enum class Kind { Constant, Variable, Call, Binary };

  Kind kind = Kind::Constant;
  double value = 0.0;   // Constant
  int var = -1;         // Variable: index into the declared set
  std::string name;     // Variable
  Func func = Func::Neg;  // Call
  char op = '+';        // Binary: + - * / ^
  std::shared_ptr<const ExprNode> lhs, rhs;  // Call uses lhs only
  bool has_vars = false;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace detail {

inline NodePtr make_constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Constant;
  n->value = v;
  return n;
}

inline NodePtr make_variable(int index, std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Variable;
  n->var = index;
  n->name = std::move(name);
  n->has_vars = true;
  return n;
}

inline NodePtr make_call(Func f, NodePtr arg) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Call;
  n->func = f;
  n->has_vars = arg->has_vars;
  n->lhs = std::move(arg);
  return n;
}

inline NodePtr make_binary(char op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Binary;
  n->op = op;
  n->has_vars = a->has_vars || b->has_vars;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      if (n.value < 0 || std::signbit(n.value)) {
        out += "(-";
        out += format_double(-n.value);
        out += ')';
      } else {
        out += format_double(n.value);
      }
      return;
    case ExprNode::Kind::Variable:
      out += n.name;
      return;
    case ExprNode::Kind::Call:
      if (n.func == Func::Neg) {
        out += "(-";
        print_node(*n.lhs, out);
        out += ')';
      } else {
        out += func_name(n.func);
        out += '(';
        print_node(*n.lhs, out);
        out += ')';
      }
      return;
    case ExprNode::Kind::Binary:
      out += '(';
      print_node(*n.lhs, out);
      out += ' ';
      out += n.op;
      out += ' ';
      print_node(*n.rhs, out);
      out += ')';
      return;
  }
}

inline bool same_tree(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::Constant: return a.value == b.value;
    case ExprNode::Kind::Variable: return a.var == b.var && a.name == b.name;
    case ExprNode::Kind::Call: return a.func == b.func && same_tree(*a.lhs, *b.lhs);
    case ExprNode::Kind::Binary:
      return a.op == b.op && same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
  return false;
}

}  // namespace detail

/// Immutable parsed expression together with its declared variable set.
class Expr {
 public:
  Expr() : root_(detail::make_constant(0.0)) {}
  Expr(NodePtr root, std::vector<std::string> vars) : root_(std::move(root)), vars_(std::move(vars)) {}

  static Expr constant(double v) { return Expr(detail::make_constant(v), {}); }

  const ExprNode& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }
  const std::vector<std::string>& variables() const noexcept { return vars_; }

  std::string to_string() const {
    std::string out;
    detail::print_node(*root_, out);
    return out;
  }

  friend bool structurally_equal(const Expr& a, const Expr& b) {
    return a.vars_ == b.vars_ && detail::same_tree(*a.root_, *b.root_);
  }

 private:
  NodePtr root_;
  std::vector<std::string> vars_;
};

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw SyntaxError(pos_, "unbalanced ')'");
      throw SyntaxError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary('+', lhs, parse_term());
      } else if (accept('-')) {
        lhs = make_binary('-', lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary('*', lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make_binary('/', lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_call(Func::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_exponent() {
    if (accept('-')) return make_call(Func::Neg, parse_exponent());
    if (accept('+')) return parse_exponent();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make_binary('^', base, parse_exponent());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "expected operand, found end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      skip_ws();
      if (pos_ >= text_.size()) throw SyntaxError(pos_, "unbalanced '(': expected ')', found end of input");
      if (text_[pos_] != ')') throw SyntaxError(pos_, "unbalanced '(': expected ')'");
      ++pos_;
      return inner;
    }
    if (c == ')') throw SyntaxError(pos_, "expected operand before ')'");
    throw SyntaxError(pos_, std::string("expected operand, found '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    return make_constant(std::strtod(literal.c_str(), nullptr));
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string id(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      static const std::map<std::string, Func> funcs = {
          {"neg", Func::Neg}, {"sin", Func::Sin},   {"cos", Func::Cos},
          {"tan", Func::Tan}, {"exp", Func::Exp},   {"log", Func::Log},
          {"sqrt", Func::Sqrt}, {"sinh", Func::Sinh}, {"cosh", Func::Cosh}};
      auto it = funcs.find(id);
      if (it == funcs.end()) throw SyntaxError(start, "unknown function '" + id + "'");
      ++pos_;
      NodePtr arg = parse_expr();
      skip_ws();
      if (pos_ >= text_.size()) throw SyntaxError(pos_, "unbalanced '(': expected ')', found end of input");
      if (text_[pos_] != ')') throw SyntaxError(pos_, "unbalanced '(': expected ')'");
      ++pos_;
      return make_call(it->second, std::move(arg));
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == id) return make_variable(static_cast<int>(i), id);
    }
    if (id == "pi") return make_constant(std::numbers::pi);
    throw SyntaxError(start, "unknown identifier '" + id + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text` over the declared variable set `vars`.
inline Expr parse(std::string_view text, std::vector<std::string> vars) {
  for (const auto& v : vars) {
    if (v.empty() || v == "pi") throw std::invalid_argument("invalid variable name '" + v + "'");
  }
  detail::Parser p(text, vars);
  NodePtr root = p.parse();
  return Expr(std::move(root), std::move(vars));
}

namespace detail {

inline std::string subexpr_text(const ExprNode& n) {
  std::string out;
  print_node(n, out);
  return out;
}

template <class S>
constexpr bool is_plain_double = std::is_same_v<S, double>;

inline double eval_constant(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Constant: return n.value;
    case ExprNode::Kind::Variable: throw std::logic_error("variable in constant subtree");
    case ExprNode::Kind::Call: {
      const double a = eval_constant(*n.lhs);
      switch (n.func) {
        case Func::Neg: return -a;
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Tan: return std::tan(a);
        case Func::Exp: return std::exp(a);
        case Func::Log:
          if (a <= 0) throw DomainError("log of non-positive value", subexpr_text(n));
          return std::log(a);
        case Func::Sqrt:
          if (a < 0) throw DomainError("sqrt of negative value", subexpr_text(n));
          return std::sqrt(a);
        case Func::Sinh: return std::sinh(a);
        case Func::Cosh: return std::cosh(a);
      }
      break;
    }
    case ExprNode::Kind::Binary: {
      const double a = eval_constant(*n.lhs);
      const double b = eval_constant(*n.rhs);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (b == 0) throw DomainError("division by zero", subexpr_text(n));
          return a / b;
        case '^': {
          if (b == std::floor(b) && std::abs(b) < 9.0e15) {
            if (a == 0 && b < 0) throw DomainError("division by zero", subexpr_text(n));
            return ipow(a, static_cast<long long>(b));
          }
          if (a < 0) throw DomainError("non-integer power of negative base", subexpr_text(n));
          return std::pow(a, b);
        }
      }
      break;
    }
  }
  throw std::logic_error("malformed expression node");
}

template <class S>
S eval_node(const ExprNode& n, std::span<const S> env, const S& proto) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;

  if (!n.has_vars) {
    S out = zero_like(proto);
    add_scalar(out, eval_constant(n));
    return out;
  }
  switch (n.kind) {
    case ExprNode::Kind::Constant: break;  // handled above
    case ExprNode::Kind::Variable: return env[static_cast<std::size_t>(n.var)];
    case ExprNode::Kind::Call: {
      S a = eval_node(*n.lhs, env, proto);
      switch (n.func) {
        case Func::Neg: return -a;
        case Func::Sin: return sin(a);
        case Func::Cos: return cos(a);
        case Func::Tan: return tan(a);
        case Func::Exp: return exp(a);
        case Func::Log:
          if (scalar_value(a) <= 0) throw DomainError("log of non-positive value", subexpr_text(n));
          return log(a);
        case Func::Sqrt:
          if (scalar_value(a) < 0) throw DomainError("sqrt of negative value", subexpr_text(n));
          if constexpr (!is_plain_double<S>) {
            if (scalar_value(a) == 0)
              throw DomainError("sqrt is not differentiable at zero", subexpr_text(n));
          }
          return sqrt(a);
        case Func::Sinh: return sinh(a);
        case Func::Cosh: return cosh(a);
      }
      break;
    }
    case ExprNode::Kind::Binary: {
      if (n.op == '^' && !n.rhs->has_vars) {
        S base = eval_node(*n.lhs, env, proto);
        const double p = eval_constant(*n.rhs);
        const double b0 = scalar_value(base);
        if (p == std::floor(p) && std::abs(p) < 9.0e15) {
          if (b0 == 0 && p < 0) throw DomainError("division by zero", subexpr_text(n));
          return ipow(base, static_cast<long long>(p));
        }
        if (b0 < 0) throw DomainError("non-integer power of negative base", subexpr_text(n));
        if (b0 == 0) {
          if constexpr (is_plain_double<S>) return 0.0;
          throw DomainError("non-integer power is not differentiable at zero", subexpr_text(n));
        }
        return exp(log(base) * p);
      }
      // One constant operand: scalar arithmetic instead of jet products.
      if (!n.lhs->has_vars || !n.rhs->has_vars) {
        const bool left_const = !n.lhs->has_vars;
        const double c = eval_constant(left_const ? *n.lhs : *n.rhs);
        S x = eval_node(left_const ? *n.rhs : *n.lhs, env, proto);
        switch (n.op) {
          case '+':
            add_scalar(x, c);
            return x;
          case '-':
            if (left_const) {
              x = -x;
              add_scalar(x, c);
            } else {
              add_scalar(x, -c);
            }
            return x;
          case '*':
            return x * c;
          case '/':
            if (!left_const) {
              if (c == 0) throw DomainError("division by zero", subexpr_text(n));
              return x / c;
            }
            break;
          default:
            break;
        }
      }
      S a = eval_node(*n.lhs, env, proto);
      S b = eval_node(*n.rhs, env, proto);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (scalar_value(b) == 0) throw DomainError("division by zero", subexpr_text(n));
          return a / b;
        case '^':
          if (scalar_value(a) <= 0)
            throw DomainError("variable exponent needs a positive base", subexpr_text(n));
          return exp(log(a) * b);
      }
      break;
    }
  }
  throw std::logic_error("malformed expression node");
}

}  // namespace detail

/// Evaluates `e` with variable i bound to env[i]. S is double or a
/// (possibly nested) Jet; all jets in `env` must share one order.
template <class S>
S evaluate(const Expr& e, std::span<const S> env) {
  if (env.size() < e.variables().size())
    throw std::invalid_argument("not every variable of the expression is bound");
  const S proto = env.empty() ? S{} : env[0];
  return detail::eval_node<S>(e.root(), env, proto);
}

template <class S>
S evaluate(const Expr& e, const std::vector<S>& env) {
  return evaluate<S>(e, std::span<const S>(env.data(), env.size()));
}

/// Name-keyed bindings; every declared variable must be present.
template <class S>
S evaluate(const Expr& e, const std::map<std::string, S>& bindings) {
  std::vector<S> env;
  env.reserve(e.variables().size());
  for (const auto& v : e.variables()) {
    auto it = bindings.find(v);
    if (it == bindings.end()) throw std::invalid_argument("variable '" + v + "' is not bound");
    env.push_back(it->second);
  }
  if (env.empty() && !bindings.empty()) env.push_back(bindings.begin()->second);
  return evaluate<S>(e, std::span<const S>(env.data(), env.size()));
}

inline Jet<double> eval_jet(const Expr& e, const std::map<std::string, Jet<double>>& bindings) {
  return evaluate<Jet<double>>(e, bindings);
}

}  // namespace helixgeom
