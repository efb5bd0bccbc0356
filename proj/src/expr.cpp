#include "delayspec/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <utility>

namespace delayspec {

ParseError::ParseError(Kind kind, std::size_t offset, std::string expected, const std::string& message)
    : std::runtime_error(message), kind_(kind), offset_(offset), expected_(std::move(expected)) {}

EvalError::EvalError(std::string subexpression, double x, const std::string& what)
    : std::runtime_error(what + " in '" + subexpression + "' at x = " + std::to_string(x)),
      subexpression_(std::move(subexpression)),
      x_(x) {}

namespace {

constexpr std::array<std::pair<const char*, Function>, 7> kFunctions{{
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"tan", Function::tan},
    {"exp", Function::exp},
    {"log", Function::log},
    {"sqrt", Function::sqrt},
    {"abs", Function::abs},
}};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::end, start, {}};

    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return {Tok::ident, start, src_.substr(start, pos_ - start)};
    }
    ++pos_;
    switch (c) {
      case '+': return {Tok::plus, start, src_.substr(start, 1)};
      case '-': return {Tok::minus, start, src_.substr(start, 1)};
      case '*': return {Tok::star, start, src_.substr(start, 1)};
      case '/': return {Tok::slash, start, src_.substr(start, 1)};
      case '^': return {Tok::caret, start, src_.substr(start, 1)};
      case '(': return {Tok::lparen, start, src_.substr(start, 1)};
      case ')': return {Tok::rparen, start, src_.substr(start, 1)};
      default:
        throw ParseError(ParseError::Kind::syntax, start, "number, identifier, operator or parenthesis",
                         "unexpected character '" + std::string(1, c) + "' at offset " +
                             std::to_string(start));
    }
  }

 private:
  Token lex_number(std::size_t start) {
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0)
      throw ParseError(ParseError::Kind::syntax, start, "digit", "malformed number at offset " + std::to_string(start));
    // Exponent only if it is complete; otherwise leave 'e' for the next token.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    Token t{Tok::number, start, src_.substr(start, pos_ - start)};
    t.number = std::strtod(text.c_str(), nullptr);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := '-' unary | power
// power  := primary ('^' unary)?
// primary:= number | 'x' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    if (cur_.kind != Tok::end) fail("end of input or operator");
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = cur_.kind == Tok::end ? "end of input" : "'" + std::string(cur_.text) + "'";
    throw ParseError(ParseError::Kind::syntax, cur_.offset, expected,
                     "syntax error at offset " + std::to_string(cur_.offset) + ": expected " + expected +
                         ", found " + found);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      const BinaryOp op = cur_.kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_term());
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      const BinaryOp op = cur_.kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (cur_.kind == Tok::minus) {
      advance();
      return make_negate(parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (cur_.kind == Tok::caret) {
      advance();
      return make_binary(BinaryOp::pow, std::move(base), parse_unary());
    }
    return base;
  }

  NodePtr parse_primary() {
    switch (cur_.kind) {
      case Tok::number: {
        const double v = cur_.number;
        advance();
        return make_number(v);
      }
      case Tok::lparen: {
        advance();
        NodePtr inner = parse_expr();
        if (cur_.kind != Tok::rparen) fail("')'");
        advance();
        return inner;
      }
      case Tok::ident: return parse_identifier();
      default: fail("number, identifier or '('");
    }
  }

  NodePtr parse_identifier() {
    const Token id = cur_;
    advance();
    if (id.text == "x") return make_variable();
    if (id.text == "pi") return make_constant(Constant::pi);
    if (id.text == "e") return make_constant(Constant::e);
    for (const auto& [name, fn] : kFunctions) {
      if (id.text == name) {
        if (cur_.kind != Tok::lparen) fail("'(' after function name");
        advance();
        NodePtr arg = parse_expr();
        if (cur_.kind != Tok::rparen) fail("')'");
        advance();
        return make_call(fn, std::move(arg));
      }
    }
    throw ParseError(ParseError::Kind::unknown_identifier, id.offset, "x, pi, e or a function name",
                     "unknown identifier '" + std::string(id.text) + "' at offset " + std::to_string(id.offset));
  }

  Lexer lex_;
  Token cur_{Tok::end, 0, {}};
};

void unparse_into(const Node& n, std::string& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Number>) {
          out += format_number(v.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += 'x';
        } else if constexpr (std::is_same_v<T, NamedConstant>) {
          out += v.which == Constant::pi ? "pi" : "e";
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += "(-";
          unparse_into(*v.operand, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Binary>) {
          static constexpr const char* ops[] = {" + ", " - ", " * ", " / ", " ^ "};
          out += '(';
          unparse_into(*v.lhs, out);
          out += ops[static_cast<int>(v.op)];
          unparse_into(*v.rhs, out);
          out += ')';
        } else {
          out += function_name(v.fn);
          out += '(';
          unparse_into(*v.arg, out);
          out += ')';
        }
      },
      n.data);
}

std::string unparse_node(const Node& n) {
  std::string s;
  unparse_into(n, s);
  return s;
}

double checked(double value, const Node& n, double x, const char* what) {
  if (!std::isfinite(value)) throw EvalError(unparse_node(n), x, what);
  return value;
}

double eval_node(const Node& n, double x) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Number>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return x;
        } else if constexpr (std::is_same_v<T, NamedConstant>) {
          return v.which == Constant::pi ? std::numbers::pi : std::numbers::e;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval_node(*v.operand, x);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = eval_node(*v.lhs, x);
          const double b = eval_node(*v.rhs, x);
          switch (v.op) {
            case BinaryOp::add: return checked(a + b, n, x, "overflow");
            case BinaryOp::sub: return checked(a - b, n, x, "overflow");
            case BinaryOp::mul: return checked(a * b, n, x, "overflow");
            case BinaryOp::div:
              if (b == 0.0) throw EvalError(unparse_node(n), x, "division by zero");
              return checked(a / b, n, x, "overflow");
            case BinaryOp::pow: return checked(std::pow(a, b), n, x, "invalid power");
          }
          return 0.0;
        } else {
          const double a = eval_node(*v.arg, x);
          switch (v.fn) {
            case Function::sin: return std::sin(a);
            case Function::cos: return std::cos(a);
            case Function::tan: return checked(std::tan(a), n, x, "tan pole");
            case Function::exp: return checked(std::exp(a), n, x, "overflow");
            case Function::log:
              if (a < 0.0) throw EvalError(unparse_node(n), x, "log of a negative argument");
              return checked(std::log(a), n, x, "log of zero");
            case Function::sqrt:
              if (a < 0.0) throw EvalError(unparse_node(n), x, "sqrt of a negative argument");
              return std::sqrt(a);
            case Function::abs: return std::fabs(a);
          }
          return 0.0;
        }
      },
      n.data);
}

bool references_x(const Node& n) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Variable>) return true;
        else if constexpr (std::is_same_v<T, Negate>) return references_x(*v.operand);
        else if constexpr (std::is_same_v<T, Binary>) return references_x(*v.lhs) || references_x(*v.rhs);
        else if constexpr (std::is_same_v<T, Call>) return references_x(*v.arg);
        else return false;
      },
      n.data);
}

}  // namespace

const char* function_name(Function fn) { return kFunctions[static_cast<std::size_t>(fn)].first; }

NodePtr make_number(double v) { return std::make_shared<const Node>(Node{Number{v}}); }
NodePtr make_variable() { return std::make_shared<const Node>(Node{Variable{}}); }
NodePtr make_constant(Constant c) { return std::make_shared<const Node>(Node{NamedConstant{c}}); }
NodePtr make_negate(NodePtr operand) { return std::make_shared<const Node>(Node{Negate{std::move(operand)}}); }
NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  return std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}});
}
NodePtr make_call(Function fn, NodePtr arg) { return std::make_shared<const Node>(Node{Call{fn, std::move(arg)}}); }

bool same_tree(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const auto& vb = std::get<T>(b.data);
        if constexpr (std::is_same_v<T, Number>) return va.value == vb.value;
        else if constexpr (std::is_same_v<T, Variable>) return true;
        else if constexpr (std::is_same_v<T, NamedConstant>) return va.which == vb.which;
        else if constexpr (std::is_same_v<T, Negate>) return same_tree(*va.operand, *vb.operand);
        else if constexpr (std::is_same_v<T, Binary>)
          return va.op == vb.op && same_tree(*va.lhs, *vb.lhs) && same_tree(*va.rhs, *vb.rhs);
        else return va.fn == vb.fn && same_tree(*va.arg, *vb.arg);
      },
      a.data);
}

Expr::Expr() : root_(make_number(0.0)) {}
Expr::Expr(NodePtr root) : root_(std::move(root)) {}

Expr Expr::parse(std::string_view source) {
  bool blank = true;
  for (char c : source) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw ParseError(ParseError::Kind::syntax, 0, "expression", "empty expression");
  return Expr(Parser(source).parse_all());
}

double Expr::eval(double x) const { return eval_node(*root_, x); }

std::string Expr::unparse() const { return unparse_node(*root_); }

bool Expr::is_constant() const { return !references_x(*root_); }

bool operator==(const Expr& a, const Expr& b) { return same_tree(*a.root_, *b.root_); }

}  // namespace delayspec
