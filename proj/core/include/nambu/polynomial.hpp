#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nambu/expr.hpp"
#include "nambu/rational.hpp"

namespace nambu {

using Exponents = std::vector<unsigned>;

// Graded lexicographic order: higher total degree is larger; ties are broken
// lexicographically with the first variable most significant.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// All exponent vectors in `num_vars` variables of total degree <= `degree`,
// ascending in graded lexicographic order.
std::vector<Exponents> monomials_up_to(std::size_t num_vars, unsigned degree);

// Multivariate polynomial with exact rational coefficients over an ordered
// list of variables. Zero coefficients are never stored, so two polynomials
// over the same variables are equal iff their term maps are.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables);

  static Polynomial constant(std::vector<std::string> variables,
                             const Rational& value);
  static Polynomial variable(std::vector<std::string> variables,
                             std::size_t index);
  static Polynomial monomial(std::vector<std::string> variables,
                             Exponents exponents, const Rational& coefficient);

  const std::vector<std::string>& variables() const { return variables_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponents& exponents) const;
  // Coefficient of the grlex-largest monomial; 0 for the zero polynomial.
  Rational leading_coefficient() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& scalar);
  Polynomial pow(unsigned exponent) const;

  Polynomial derivative(std::size_t variable_index) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  // Re-expresses the polynomial over `variables`, which must contain every
  // variable that occurs with a nonzero exponent.
  Polynomial over(std::vector<std::string> variables) const;

  // Terms in descending grlex order, e.g. "2*x*z^2 - 2*x*y^2"; "0" for zero.
  // The output is accepted by parse().
  std::string to_string() const;
  Expr to_expr(const std::set<std::string>& parameter_names = {}) const;

  // Equality after aligning both operands over the union of their variables.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void add_term(const Exponents& exponents, const Rational& coefficient);
  void check_compatible(const Polynomial& other) const;

  std::vector<std::string> variables_;
  Terms terms_;
};

// Canonical polynomial form of `e`, or nullopt if `e` contains an elementary
// function or a division by a non-constant. Variables are ordered as in
// `variable_order`; free names not listed there are appended in sorted order.
std::optional<Polynomial> to_polynomial(
    const Expr& e, const std::vector<std::string>& variable_order = {});

}  // namespace nambu
