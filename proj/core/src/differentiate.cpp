#include "nambu/expr.hpp"

namespace nambu {
namespace {

using Kind = Expr::Kind;

// Derivative built with the simplifying operators, so intermediate trees stay
// small; the caller applies one final simplify().
Expr derive(const Expr& e, std::string_view var) {
  switch (e.kind()) {
    case Kind::kConstant:
    case Kind::kParameter: return Expr::constant(0);
    case Kind::kVariable: return Expr::constant(e.name() == var ? 1 : 0);
    case Kind::kNeg: return -derive(e.lhs(), var);
    case Kind::kAdd: return derive(e.lhs(), var) + derive(e.rhs(), var);
    case Kind::kSub: return derive(e.lhs(), var) - derive(e.rhs(), var);
    case Kind::kMul: {
      const Expr a = e.lhs();
      const Expr b = e.rhs();
      return derive(a, var) * b + a * derive(b, var);
    }
    case Kind::kDiv: {
      const Expr a = e.lhs();
      const Expr b = e.rhs();
      const Expr db = derive(b, var);
      if (db.is_constant(0)) return derive(a, var) / b;
      return (derive(a, var) * b - a * db) / pow(b, 2);
    }
    case Kind::kPow: {
      const Expr base = e.lhs();
      const unsigned n = e.exponent();
      if (n == 0) return Expr::constant(0);
      return Expr::constant(static_cast<long>(n)) * pow(base, n - 1) * derive(base, var);
    }
    case Kind::kFunction: {
      const Expr a = e.lhs();
      const Expr da = derive(a, var);
      if (da.is_constant(0)) return da;
      switch (e.function()) {
        case Function::kSin: return Expr::apply(Function::kCos, a) * da;
        case Function::kCos: return -(Expr::apply(Function::kSin, a) * da);
        case Function::kExp: return e * da;
        case Function::kSqrt: return da / (Expr::constant(2) * e);
      }
    }
  }
  return Expr::constant(0);
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) { return simplify(derive(e, var)); }

}  // namespace nambu
