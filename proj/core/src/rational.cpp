#include "nambu/rational.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <stdexcept>


namespace nambu {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational power_of_ten(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  return exponent >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    const mpz_class d{std::string(den), 10};
    if (d == 0) return std::nullopt;
    result = Rational(mpz_class{std::string(num), 10}, d);
    result.canonicalize();
  } else {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = text.substr(0, e);
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) return std::nullopt;
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    auto dot = mantissa.find('.');
    if (dot == std::string_view::npos) {
      if (!all_digits(mantissa)) return std::nullopt;
      digits = mantissa;
    } else {
      auto int_part = mantissa.substr(0, dot);
      auto frac_part = mantissa.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) return std::nullopt;
      if ((!int_part.empty() && !all_digits(int_part)) ||
          (!frac_part.empty() && !all_digits(frac_part))) {
        return std::nullopt;
      }
      digits = std::string(int_part) + std::string(frac_part);
      exponent -= static_cast<long>(frac_part.size());
    }
    result = Rational(mpz_class(digits, 10)) * power_of_ten(exponent);
    result.canonicalize();
  }
  if (negative) result = -result;
  return result;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("rational_from_double: non-finite value");
  }
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::invalid_argument("rational_from_double: to_chars failed");
  auto parsed = parse_rational(std::string_view(buffer, end - buffer));
  if (!parsed) throw std::invalid_argument("rational_from_double: unparseable value");
  return *parsed;
}

std::string to_string(const Rational& value) { return value.get_str(); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace nambu
