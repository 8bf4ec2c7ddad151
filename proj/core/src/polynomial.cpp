#include "nambu/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nambu {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void exponents_of_degree(std::size_t num_vars, unsigned degree, std::size_t index,
                         Exponents& current, std::vector<Exponents>& out) {
  if (index + 1 == num_vars) {
    current[index] = degree;
    out.push_back(current);
    return;
  }
  for (unsigned e = 0; e <= degree; ++e) {
    current[index] = e;
    exponents_of_degree(num_vars, degree - e, index + 1, current, out);
  }
  current[index] = 0;
}

}  // namespace

std::vector<Exponents> monomials_up_to(std::size_t num_vars, unsigned degree) {
  std::vector<Exponents> out;
  if (num_vars == 0) {
    out.emplace_back();
    return out;
  }
  Exponents current(num_vars, 0);
  for (unsigned d = 0; d <= degree; ++d) {
    exponents_of_degree(num_vars, d, 0, current, out);
  }
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

Polynomial::Polynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

Polynomial Polynomial::constant(std::vector<std::string> variables, const Rational& value) {
  Polynomial p(std::move(variables));
  p.add_term(Exponents(p.variables_.size(), 0), value);
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> variables, std::size_t index) {
  Polynomial p(std::move(variables));
  Exponents e(p.variables_.size(), 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(std::vector<std::string> variables, Exponents exponents,
                                const Rational& coefficient) {
  Polynomial p(std::move(variables));
  if (exponents.size() != p.variables_.size()) {
    throw std::invalid_argument("monomial: exponent count does not match variables");
  }
  p.add_term(exponents, coefficient);
  return p;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (variables_ != other.variables_) {
    throw std::invalid_argument("polynomials over different variable lists");
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](unsigned e) { return e == 0; }));
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  const Exponents& top = terms_.rbegin()->first;
  return static_cast<int>(std::accumulate(top.begin(), top.end(), 0u));
}

Rational Polynomial::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.rbegin()->second;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(Polynomial a, const Rational& scalar) { return a *= scalar; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial result(a.variables_);
  Exponents sum(a.variables_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
      result.add_term(sum, ca * cb);
    }
  }
  return result;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(variables_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t variable_index) const {
  if (variable_index >= variables_.size()) {
    throw std::out_of_range("derivative: variable index out of range");
  }
  Polynomial result(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[variable_index] == 0) continue;
    Exponents d = e;
    --d[variable_index];
    result.add_term(d, c * e[variable_index]);
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != variables_.size()) {
    throw std::invalid_argument("evaluate: point dimension does not match variables");
  }
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != variables_.size()) {
    throw std::invalid_argument("evaluate: point dimension does not match variables");
  }
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::over(std::vector<std::string> variables) const {
  std::vector<std::size_t> map(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    auto it = std::find(variables.begin(), variables.end(), variables_[i]);
    map[i] = it == variables.end() ? variables.size() : static_cast<std::size_t>(it - variables.begin());
  }
  Polynomial result(std::move(variables));
  for (const auto& [e, c] : terms_) {
    Exponents mapped(result.variables_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] == result.variables_.size()) {
        throw std::invalid_argument("over: variable '" + variables_[i] + "' is not in the target list");
      }
      mapped[map[i]] += e[i];
    }
    result.add_term(mapped, c);
  }
  return result;
}

namespace {

std::string monomial_string(const std::vector<std::string>& variables, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += variables[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const std::string mono = monomial_string(variables_, e);
    const Rational magnitude = abs(c);
    std::string term;
    if (mono.empty()) {
      term = magnitude.get_str();
    } else if (magnitude == 1) {
      term = mono;
    } else {
      term = magnitude.get_str() + "*" + mono;
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

Expr Polynomial::to_expr(const std::set<std::string>& parameter_names) const {
  auto symbol = [&](std::size_t i) {
    return parameter_names.count(variables_[i]) ? Expr::parameter(variables_[i])
                                                : Expr::variable(variables_[i]);
  };
  Expr sum = Expr::constant(0);
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Expr term = Expr::constant(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term = term * nambu::pow(symbol(i), e[i]);
    }
    sum = sum + term;
  }
  return sum;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ == b.variables_) return a.terms_ == b.terms_;
  std::vector<std::string> all = a.variables_;
  for (const auto& v : b.variables_) {
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  }
  return a.over(all).terms_ == b.over(all).terms_;
}

namespace {

class PolynomialBuilder {
 public:
  explicit PolynomialBuilder(std::vector<std::string> variables) : variables_(std::move(variables)) {}

  std::optional<Polynomial> build(const Expr& e) const {
    using Kind = Expr::Kind;
    switch (e.kind()) {
      case Kind::kConstant: return Polynomial::constant(variables_, e.value());
      case Kind::kVariable:
      case Kind::kParameter: {
        auto it = std::find(variables_.begin(), variables_.end(), e.name());
        return Polynomial::variable(variables_, static_cast<std::size_t>(it - variables_.begin()));
      }
      case Kind::kNeg: {
        auto a = build(e.lhs());
        if (!a) return std::nullopt;
        return -*a;
      }
      case Kind::kAdd:
      case Kind::kSub:
      case Kind::kMul: {
        auto a = build(e.lhs());
        if (!a) return std::nullopt;
        auto b = build(e.rhs());
        if (!b) return std::nullopt;
        if (e.kind() == Kind::kAdd) return *a + *b;
        if (e.kind() == Kind::kSub) return *a - *b;
        return *a * *b;
      }
      case Kind::kDiv: {
        auto a = build(e.lhs());
        if (!a) return std::nullopt;
        auto b = build(e.rhs());
        if (!b || !b->is_constant() || b->is_zero()) return std::nullopt;
        return *a * Rational(1 / b->terms().begin()->second);
      }
      case Kind::kPow: {
        auto a = build(e.lhs());
        if (!a) return std::nullopt;
        return a->pow(e.exponent());
      }
      case Kind::kFunction: return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::string> variables_;
};

}  // namespace

std::optional<Polynomial> to_polynomial(const Expr& e, const std::vector<std::string>& variable_order) {
  std::vector<std::string> variables = variable_order;
  for (const std::string& name : free_names(e)) {
    if (std::find(variables.begin(), variables.end(), name) == variables.end()) {
      variables.push_back(name);
    }
  }
  // Names beyond variable_order come from a std::set and are therefore sorted.
  return PolynomialBuilder(std::move(variables)).build(e);
}

}  // namespace nambu
