#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nambu/rational.hpp"

namespace nambu {

enum class Function { kSin, kCos, kExp, kSqrt };

std::string_view function_name(Function f);
std::optional<Function> function_from_name(std::string_view name);

// Immutable symbolic expression. Copies share the underlying tree, so an Expr
// is cheap to pass by value and safe to read from many threads.
class Expr {
 public:
  enum class Kind {
    kConstant,
    kVariable,
    kParameter,
    kNeg,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kPow,
    kFunction,
  };

  // The constant 0.
  Expr();

  static Expr constant(Rational value);
  static Expr constant(long value) { return constant(Rational(value)); }
  static Expr variable(std::string name);
  static Expr parameter(std::string name);

  // Raw node builders; no simplification is applied.
  static Expr neg(Expr operand);
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  // Throws std::invalid_argument when `rhs` is the literal constant 0.
  static Expr div(Expr lhs, Expr rhs);
  static Expr pow(Expr base, unsigned exponent);
  static Expr apply(Function f, Expr argument);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::kConstant; }
  bool is_constant(const Rational& value) const;

  // Valid for kConstant.
  const Rational& value() const;
  // The constant converted to double once, at construction.
  double numeric_value() const;
  // Valid for kVariable and kParameter.
  const std::string& name() const;
  // Valid for kPow.
  unsigned exponent() const;
  // Valid for kFunction.
  Function function() const;
  // First operand of unary/binary nodes (base of kPow, argument of
  // kFunction).
  Expr lhs() const;
  // Second operand of binary nodes.
  Expr rhs() const;

  // Structural identity of the trees.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  const Node& node() const { return *node_; }

  std::shared_ptr<const Node> node_;

};

// Simplifying arithmetic; the results are passed through the local rewrite
// rules of simplify().
Expr operator-(const Expr& e);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, unsigned exponent);

using Binding = std::map<std::string, double, std::less<>>;
using ExactBinding = std::map<std::string, Rational, std::less<>>;

// Names a parser may resolve, split by role.
struct NameTable {
  std::vector<std::string> variables;
  std::vector<std::string> parameters;

  bool is_variable(std::string_view name) const;
  bool is_parameter(std::string_view name) const;
};

// expr := term (('+'|'-') term)*
// term := factor (('*'|'/') factor)*
// factor := ('-')? atom ('^' uint)?
// atom := number | ident | ident '(' expr ')' | '(' expr ')'
Expr parse(std::string_view text, const NameTable& names);
// Every declared name is treated as a variable.
Expr parse(std::string_view text, const std::set<std::string>& declared_names);

// Output is accepted by parse() and evaluates identically.
std::string to_string(const Expr& e);

// Throws DomainError on sqrt of a negative number or division by zero, and
// std::invalid_argument if a free name is missing from `binding`.
double eval(const Expr& e, const Binding& binding);

// Exact evaluation of expressions built from rational operations only.
// Returns nullopt if an elementary function is present. Throws DomainError on
// division by zero.
std::optional<Rational> eval_exact(const Expr& e, const ExactBinding& binding);

Expr differentiate(const Expr& e, std::string_view var);

// Bottom-up constant folding and 0/1 identities. Terminating, evaluation
// preserving, not a normal form.
Expr simplify(const Expr& e);

// Replaces every Variable/Parameter whose name is a key of `replacements`.
Expr substitute(const Expr& e,
                const std::map<std::string, Expr, std::less<>>& replacements);

std::set<std::string> free_names(const Expr& e);

bool contains_function(const Expr& e);

}  // namespace nambu
