#include <gmpxx.h>

#include "nambu/expr.hpp"

namespace nambu {
namespace {

using Kind = Expr::Kind;

Expr simplify_neg(const Expr& a);
Expr simplify_add(const Expr& a, const Expr& b);
Expr simplify_sub(const Expr& a, const Expr& b);
Expr simplify_mul(const Expr& a, const Expr& b);
Expr simplify_div(const Expr& a, const Expr& b);
Expr simplify_pow(const Expr& base, unsigned exponent);
Expr simplify_function(Function f, const Expr& a);

Rational rational_power(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

Expr simplify_neg(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.kind() == Kind::kNeg) return a.lhs();
  return Expr::neg(a);
}

Expr simplify_add(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  if (a.is_constant(0)) return b;
  if (b.is_constant(0)) return a;
  if (b.kind() == Kind::kNeg) return simplify_sub(a, b.lhs());
  if (b.is_constant() && b.value() < 0) return Expr::sub(a, Expr::constant(-b.value()));
  return Expr::add(a, b);
}

// Structural equality up to the order of operands of + and *. Reordering is
// only explored near the root, which bounds the cost.
bool equivalent(const Expr& a, const Expr& b, int depth = 8) {
  if (a.kind() != b.kind()) return false;
  if (depth == 0) return a == b;
  switch (a.kind()) {
    case Kind::kAdd:
    case Kind::kMul:
      return (equivalent(a.lhs(), b.lhs(), depth - 1) && equivalent(a.rhs(), b.rhs(), depth - 1)) ||
             (equivalent(a.lhs(), b.rhs(), depth - 1) && equivalent(a.rhs(), b.lhs(), depth - 1));
    case Kind::kSub:
    case Kind::kDiv:
      return equivalent(a.lhs(), b.lhs(), depth - 1) && equivalent(a.rhs(), b.rhs(), depth - 1);
    case Kind::kNeg:
      return equivalent(a.lhs(), b.lhs(), depth - 1);
    case Kind::kPow:
      return a.exponent() == b.exponent() && equivalent(a.lhs(), b.lhs(), depth - 1);
    case Kind::kFunction:
      return a.function() == b.function() && equivalent(a.lhs(), b.lhs(), depth - 1);
    default:
      return a == b;
  }
}

Expr simplify_sub(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
  if (equivalent(a, b)) return Expr::constant(0);
  if (b.is_constant(0)) return a;
  if (a.is_constant(0)) return simplify_neg(b);
  if (b.kind() == Kind::kNeg) return simplify_add(a, b.lhs());
  if (b.is_constant() && b.value() < 0) return Expr::add(a, Expr::constant(-b.value()));
  return Expr::sub(a, b);
}

Expr simplify_mul(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  if (a.is_constant(0) || b.is_constant(0)) return Expr::constant(0);
  if (a.is_constant(1)) return b;
  if (b.is_constant(1)) return a;
  // Constants move to the left so they can meet and fold.
  if (b.is_constant()) return simplify_mul(b, a);
  if (a.is_constant(-1)) return simplify_neg(b);
  if (a.kind() == Kind::kNeg) return simplify_neg(simplify_mul(a.lhs(), b));
  if (b.kind() == Kind::kNeg) return simplify_neg(simplify_mul(a, b.lhs()));
  if (a.is_constant() && b.kind() == Kind::kMul && b.lhs().is_constant()) {
    return simplify_mul(Expr::constant(a.value() * b.lhs().value()), b.rhs());
  }
  if (b.kind() == Kind::kMul && b.lhs().is_constant()) {
    return simplify_mul(b.lhs(), simplify_mul(a, b.rhs()));
  }
  if (a.kind() == Kind::kMul && a.lhs().is_constant()) {
    return simplify_mul(a.lhs(), simplify_mul(a.rhs(), b));
  }
  if (!a.is_constant() && b.kind() == Kind::kDiv) {
    return simplify_div(simplify_mul(a, b.lhs()), b.rhs());
  }
  if (!b.is_constant() && a.kind() == Kind::kDiv) {
    return simplify_div(simplify_mul(a.lhs(), b), a.rhs());
  }
  return Expr::mul(a, b);
}

Expr simplify_div(const Expr& a, const Expr& b) {
  if (b.is_constant(0)) return Expr::div(a, Expr::sub(Expr::constant(1), Expr::constant(1)));
  if (b.is_constant(1)) return a;
  if (b.is_constant()) return simplify_mul(Expr::constant(1 / b.value()), a);
  if (a.is_constant(0)) return a;
  if (a.kind() == Kind::kNeg) return simplify_neg(simplify_div(a.lhs(), b));
  if (a.kind() == Kind::kMul && a.lhs().is_constant()) {
    return simplify_mul(a.lhs(), simplify_div(a.rhs(), b));
  }
  return Expr::div(a, b);
}

Expr simplify_pow(const Expr& base, unsigned exponent) {
  if (exponent == 0) return Expr::constant(1);
  if (exponent == 1) return base;
  if (base.is_constant()) return Expr::constant(rational_power(base.value(), exponent));
  if (base.kind() == Kind::kPow) return simplify_pow(base.lhs(), base.exponent() * exponent);
  return Expr::pow(base, exponent);
}

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  mpz_class num = v.get_num();
  mpz_class den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

Expr simplify_function(Function f, const Expr& a) {
  if (a.is_constant(0)) {
    switch (f) {
      case Function::kSin:
      case Function::kSqrt: return Expr::constant(0);
      case Function::kCos:
      case Function::kExp: return Expr::constant(1);
    }
  }
  if (f == Function::kSqrt && a.is_constant()) {
    if (auto root = exact_sqrt(a.value())) return Expr::constant(*root);
  }
  return Expr::apply(f, a);
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case Kind::kConstant:
    case Kind::kVariable:
    case Kind::kParameter: return e;
    case Kind::kNeg: return simplify_neg(simplify(e.lhs()));
    case Kind::kAdd: return simplify_add(simplify(e.lhs()), simplify(e.rhs()));
    case Kind::kSub: return simplify_sub(simplify(e.lhs()), simplify(e.rhs()));
    case Kind::kMul: return simplify_mul(simplify(e.lhs()), simplify(e.rhs()));
    case Kind::kDiv: {
      Expr den = simplify(e.rhs());
      // Keep a denominator that only folds to zero unevaluated.
      if (den.is_constant(0)) return Expr::div(simplify(e.lhs()), e.rhs());
      return simplify_div(simplify(e.lhs()), den);
    }
    case Kind::kPow: return simplify_pow(simplify(e.lhs()), e.exponent());
    case Kind::kFunction: return simplify_function(e.function(), simplify(e.lhs()));
  }
  return e;
}

Expr operator-(const Expr& e) { return simplify_neg(e); }
Expr operator+(const Expr& a, const Expr& b) { return simplify_add(a, b); }
Expr operator-(const Expr& a, const Expr& b) { return simplify_sub(a, b); }
Expr operator*(const Expr& a, const Expr& b) { return simplify_mul(a, b); }
Expr operator/(const Expr& a, const Expr& b) { return simplify_div(a, b); }
Expr pow(const Expr& base, unsigned exponent) { return simplify_pow(base, exponent); }

}  // namespace nambu
