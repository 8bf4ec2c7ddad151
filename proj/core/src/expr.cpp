#include "nambu/expr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nambu/errors.hpp"

namespace nambu {

struct Expr::Node {
  Kind kind = Kind::kConstant;
  Rational value;
  double numeric = 0.0;
  std::string name;
  unsigned exponent = 0;
  Function function = Function::kSin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

std::string_view function_name(Function f) {
  switch (f) {
    case Function::kSin: return "sin";
    case Function::kCos: return "cos";
    case Function::kExp: return "exp";
    case Function::kSqrt: return "sqrt";
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
  if (name == "sin") return Function::kSin;
  if (name == "cos") return Function::kCos;
  if (name == "exp") return Function::kExp;
  if (name == "sqrt") return Function::kSqrt;
  return std::nullopt;
}

Expr::Expr() : Expr(constant(0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(Rational value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kConstant;
  value.canonicalize();
  node->numeric = value.get_d();
  node->value = std::move(value);
  return Expr(std::move(node));
}

Expr Expr::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kVariable;
  node->name = std::move(name);
  return Expr(std::move(node));
}

Expr Expr::parameter(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kParameter;
  node->name = std::move(name);
  return Expr(std::move(node));
}

Expr Expr::neg(Expr operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kNeg;
  node->lhs = std::move(operand.node_);
  return Expr(std::move(node));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->lhs = std::move(lhs.node_);
  node->rhs = std::move(rhs.node_);
  return Expr(std::move(node));
}

Expr Expr::add(Expr lhs, Expr rhs) { return binary(Kind::kAdd, std::move(lhs), std::move(rhs)); }
Expr Expr::sub(Expr lhs, Expr rhs) { return binary(Kind::kSub, std::move(lhs), std::move(rhs)); }
Expr Expr::mul(Expr lhs, Expr rhs) { return binary(Kind::kMul, std::move(lhs), std::move(rhs)); }

Expr Expr::div(Expr lhs, Expr rhs) {
  if (rhs.is_constant(0)) {
    throw std::invalid_argument("division by the literal constant 0");
  }
  return binary(Kind::kDiv, std::move(lhs), std::move(rhs));
}

Expr Expr::pow(Expr base, unsigned exponent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPow;
  node->lhs = std::move(base.node_);
  node->exponent = exponent;
  return Expr(std::move(node));
}

Expr Expr::apply(Function f, Expr argument) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kFunction;
  node->function = f;
  node->lhs = std::move(argument.node_);
  return Expr(std::move(node));
}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_constant(const Rational& value) const {
  return node_->kind == Kind::kConstant && node_->value == value;
}

const Rational& Expr::value() const { return node_->value; }
double Expr::numeric_value() const { return node_->numeric; }
const std::string& Expr::name() const { return node_->name; }
unsigned Expr::exponent() const { return node_->exponent; }
Function Expr::function() const { return node_->function; }

Expr Expr::lhs() const { return Expr(node_->lhs); }
Expr Expr::rhs() const { return Expr(node_->rhs); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::kConstant: return a.value() == b.value();
    case Expr::Kind::kVariable:
    case Expr::Kind::kParameter: return a.name() == b.name();
    case Expr::Kind::kNeg: return a.lhs() == b.lhs();
    case Expr::Kind::kPow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    case Expr::Kind::kFunction: return a.function() == b.function() && a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

bool NameTable::is_variable(std::string_view name) const {
  return std::find(variables.begin(), variables.end(), name) != variables.end();
}

bool NameTable::is_parameter(std::string_view name) const {
  return std::find(parameters.begin(), parameters.end(), name) != parameters.end();
}

// Printing. Each node has a binding level; a child is parenthesized when its
// level is below what the grammar requires at that position.
namespace {

enum Level : int {
  kSumLevel = 1,
  kProductLevel = 2,
  kUnaryLevel = 3,
  kPowerLevel = 4,
  kAtomLevel = 5,
};

struct Printed {
  std::string text;
  int level;
};

Printed print(const Expr& e);

std::string at_least(const Expr& e, int level) {
  Printed p = print(e);
  if (p.level >= level) return p.text;
  return "(" + p.text + ")";
}

// Right operands of binary operators additionally may not start with a sign.
std::string right_operand(const Expr& e, int level) {
  Printed p = print(e);
  if (p.level > level && p.level != kUnaryLevel) return p.text;
  return "(" + p.text + ")";
}

Printed print(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kConstant: {
      const Rational& v = e.value();
      if (is_integer(v)) {
        if (v >= 0) return {v.get_str(), kAtomLevel};
        return {v.get_str(), kUnaryLevel};
      }
      return {v.get_str(), kProductLevel};
    }
    case Expr::Kind::kVariable:
    case Expr::Kind::kParameter: return {e.name(), kAtomLevel};
    case Expr::Kind::kNeg: return {"-" + at_least(e.lhs(), kPowerLevel), kUnaryLevel};
    case Expr::Kind::kAdd:
      return {at_least(e.lhs(), kSumLevel) + " + " + right_operand(e.rhs(), kSumLevel),
              kSumLevel};
    case Expr::Kind::kSub:
      return {at_least(e.lhs(), kSumLevel) + " - " + right_operand(e.rhs(), kSumLevel),
              kSumLevel};
    case Expr::Kind::kMul:
      return {at_least(e.lhs(), kProductLevel) + "*" + right_operand(e.rhs(), kProductLevel),
              kProductLevel};
    case Expr::Kind::kDiv:
      return {at_least(e.lhs(), kProductLevel) + "/" + right_operand(e.rhs(), kProductLevel),
              kProductLevel};
    case Expr::Kind::kPow:
      return {at_least(e.lhs(), kAtomLevel) + "^" + std::to_string(e.exponent()), kPowerLevel};
    case Expr::Kind::kFunction:
      return {std::string(function_name(e.function())) + "(" + print(e.lhs()).text + ")",
              kAtomLevel};
  }
  return {"?", kAtomLevel};
}

}  // namespace

std::string to_string(const Expr& e) { return print(e).text; }

double eval(const Expr& e, const Binding& binding) {
  switch (e.kind()) {
    case Expr::Kind::kConstant: return e.numeric_value();
    case Expr::Kind::kVariable:
    case Expr::Kind::kParameter: {
      auto it = binding.find(e.name());
      if (it == binding.end()) {
        throw std::invalid_argument("no value bound for '" + e.name() + "'");
      }
      return it->second;
    }
    case Expr::Kind::kNeg: return -eval(e.lhs(), binding);
    case Expr::Kind::kAdd: return eval(e.lhs(), binding) + eval(e.rhs(), binding);
    case Expr::Kind::kSub: return eval(e.lhs(), binding) - eval(e.rhs(), binding);
    case Expr::Kind::kMul: return eval(e.lhs(), binding) * eval(e.rhs(), binding);
    case Expr::Kind::kDiv: {
      double num = eval(e.lhs(), binding);
      double den = eval(e.rhs(), binding);
      if (den == 0.0) throw DomainError("division by zero");
      return num / den;
    }
    case Expr::Kind::kPow: {
      double base = eval(e.lhs(), binding);
      double result = 1.0;
      for (unsigned i = 0; i < e.exponent(); ++i) result *= base;
      return result;
    }
    case Expr::Kind::kFunction: {
      double x = eval(e.lhs(), binding);
      switch (e.function()) {
        case Function::kSin: return std::sin(x);
        case Function::kCos: return std::cos(x);
        case Function::kExp: return std::exp(x);
        case Function::kSqrt:
          if (x < 0.0) throw DomainError("sqrt of a negative number");
          return std::sqrt(x);
      }
    }
  }
  return 0.0;
}

std::optional<Rational> eval_exact(const Expr& e, const ExactBinding& binding) {
  switch (e.kind()) {
    case Expr::Kind::kConstant: return e.value();
    case Expr::Kind::kVariable:
    case Expr::Kind::kParameter: {
      auto it = binding.find(e.name());
      if (it == binding.end()) {
        throw std::invalid_argument("no value bound for '" + e.name() + "'");
      }
      return it->second;
    }
    case Expr::Kind::kNeg: {
      auto a = eval_exact(e.lhs(), binding);
      if (!a) return std::nullopt;
      return Rational(-*a);
    }
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv: {
      auto a = eval_exact(e.lhs(), binding);
      auto b = eval_exact(e.rhs(), binding);
      if (!a || !b) return std::nullopt;
      switch (e.kind()) {
        case Expr::Kind::kAdd: return Rational(*a + *b);
        case Expr::Kind::kSub: return Rational(*a - *b);
        case Expr::Kind::kMul: return Rational(*a * *b);
        default:
          if (*b == 0) throw DomainError("division by zero");
          return Rational(*a / *b);
      }
    }
    case Expr::Kind::kPow: {
      auto a = eval_exact(e.lhs(), binding);
      if (!a) return std::nullopt;
      Rational result = 1;
      for (unsigned i = 0; i < e.exponent(); ++i) result *= *a;
      return result;
    }
    case Expr::Kind::kFunction: return std::nullopt;
  }
  return std::nullopt;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements) {
  switch (e.kind()) {
    case Expr::Kind::kConstant: return e;
    case Expr::Kind::kVariable:
    case Expr::Kind::kParameter: {
      auto it = replacements.find(e.name());
      return it == replacements.end() ? e : it->second;
    }
    case Expr::Kind::kNeg: return Expr::neg(substitute(e.lhs(), replacements));
    case Expr::Kind::kAdd:
      return Expr::add(substitute(e.lhs(), replacements), substitute(e.rhs(), replacements));
    case Expr::Kind::kSub:
      return Expr::sub(substitute(e.lhs(), replacements), substitute(e.rhs(), replacements));
    case Expr::Kind::kMul:
      return Expr::mul(substitute(e.lhs(), replacements), substitute(e.rhs(), replacements));
    case Expr::Kind::kDiv: {
      Expr den = substitute(e.rhs(), replacements);
      // A substituted literal zero denominator keeps its original form so the
      // division stays a domain error at evaluation time.
      if (den.is_constant(0)) den = Expr::sub(Expr::constant(1), Expr::constant(1));
      return Expr::div(substitute(e.lhs(), replacements), den);
    }
    case Expr::Kind::kPow: return Expr::pow(substitute(e.lhs(), replacements), e.exponent());
    case Expr::Kind::kFunction:
      return Expr::apply(e.function(), substitute(e.lhs(), replacements));
  }
  return e;
}

namespace {

void collect_names(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::kConstant: return;
    case Expr::Kind::kVariable:
    case Expr::Kind::kParameter: out.insert(e.name()); return;
    case Expr::Kind::kNeg:
    case Expr::Kind::kPow:
    case Expr::Kind::kFunction: collect_names(e.lhs(), out); return;
    default:
      collect_names(e.lhs(), out);
      collect_names(e.rhs(), out);
  }
}

}  // namespace

std::set<std::string> free_names(const Expr& e) {
  std::set<std::string> names;
  collect_names(e, names);
  return names;
}

bool contains_function(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
    case Expr::Kind::kVariable:
    case Expr::Kind::kParameter: return false;
    case Expr::Kind::kFunction: return true;
    case Expr::Kind::kNeg:
    case Expr::Kind::kPow: return contains_function(e.lhs());
    default: return contains_function(e.lhs()) || contains_function(e.rhs());
  }
}

}  // namespace nambu
