#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace delayspec {

// Coefficient expressions in x: literals, x, pi, e, unary minus, + - * / ^,
// and the single-argument functions sin cos tan exp log sqrt abs.

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_identifier };

  ParseError(Kind kind, std::size_t offset, std::string expected, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::string expected_;
};

class EvalError : public std::runtime_error {
 public:
  EvalError(std::string subexpression, double x, const std::string& what);

  const std::string& subexpression() const noexcept { return subexpression_; }
  double x() const noexcept { return x_; }

 private:
  std::string subexpression_;
  double x_;
};

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, tan, exp, log, sqrt, abs };
enum class Constant { pi, e };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
  double value;
};
struct Variable {};
struct NamedConstant {
  Constant which;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Function fn;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Variable, NamedConstant, Negate, Binary, Call> data;
};

/// Immutable expression tree. Copies share the same nodes, so an Expr can be
/// evaluated concurrently from any number of threads.
class Expr {
 public:
  Expr();  // the constant 0
  explicit Expr(NodePtr root);

  static Expr parse(std::string_view source);

  /// Throws EvalError on log/sqrt of a negative, division by zero, or any
  /// other non-finite intermediate.
  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  /// Fully parenthesised text that parses back to the same tree.
  std::string unparse() const;

  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  /// True when the tree does not reference x.
  bool is_constant() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
};

bool same_tree(const Node& a, const Node& b);

// Builders, mostly for tests and generators.
NodePtr make_number(double v);
NodePtr make_variable();
NodePtr make_constant(Constant c);
NodePtr make_negate(NodePtr operand);
NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs);
NodePtr make_call(Function fn, NodePtr arg);

const char* function_name(Function fn);

}  // namespace delayspec
