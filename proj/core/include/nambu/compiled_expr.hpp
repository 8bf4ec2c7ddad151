#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nambu/expr.hpp"

namespace nambu {

// Postfix program for repeated numeric evaluation of an Expr. Free names are
// resolved to slot indices at compile time; evaluation then touches only a
// flat array of doubles.
class CompiledExpr {
 public:
  CompiledExpr() = default;

  // Throws std::invalid_argument if a free name of `e` is not in `slots`.
  CompiledExpr(const Expr& e, std::span<const std::string> slots);

  // Same error behaviour as eval(). `values` is indexed like `slots`.
  double operator()(std::span<const double> values) const;

 private:
  enum class Op : unsigned char {
    kConstant,
    kSlot,
    kNeg,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kPow,
    kSin,
    kCos,
    kExp,
    kSqrt,
  };
  struct Instruction {
    Op op;
    unsigned argument = 0;
    double constant = 0.0;
  };

  void emit(const Expr& e, std::span<const std::string> slots);

  std::vector<Instruction> program_;
  std::size_t max_depth_ = 0;
};

}  // namespace nambu
