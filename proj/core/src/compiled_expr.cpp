#include "nambu/compiled_expr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nambu/errors.hpp"

namespace nambu {

CompiledExpr::CompiledExpr(const Expr& e, std::span<const std::string> slots) {
  emit(e, slots);
  // Stack depth of a postfix program.
  std::size_t depth = 0;
  for (const Instruction& ins : program_) {
    switch (ins.op) {
      case Op::kConstant:
      case Op::kSlot: ++depth; break;
      case Op::kAdd:
      case Op::kSub:
      case Op::kMul:
      case Op::kDiv: --depth; break;
      default: break;
    }
    max_depth_ = std::max(max_depth_, depth);
  }
}

void CompiledExpr::emit(const Expr& e, std::span<const std::string> slots) {
  using Kind = Expr::Kind;
  switch (e.kind()) {
    case Kind::kConstant:
      program_.push_back({Op::kConstant, 0, e.numeric_value()});
      return;
    case Kind::kVariable:
    case Kind::kParameter: {
      auto it = std::find(slots.begin(), slots.end(), e.name());
      if (it == slots.end()) {
        throw std::invalid_argument("no slot for '" + e.name() + "'");
      }
      program_.push_back({Op::kSlot, static_cast<unsigned>(it - slots.begin())});
      return;
    }
    case Kind::kNeg:
      emit(e.lhs(), slots);
      program_.push_back({Op::kNeg});
      return;
    case Kind::kPow:
      emit(e.lhs(), slots);
      program_.push_back({Op::kPow, e.exponent()});
      return;
    case Kind::kFunction: {
      emit(e.lhs(), slots);
      Op op = Op::kSin;
      switch (e.function()) {
        case Function::kSin: op = Op::kSin; break;
        case Function::kCos: op = Op::kCos; break;
        case Function::kExp: op = Op::kExp; break;
        case Function::kSqrt: op = Op::kSqrt; break;
      }
      program_.push_back({op});
      return;
    }
    default: {
      emit(e.lhs(), slots);
      emit(e.rhs(), slots);
      Op op = Op::kAdd;
      switch (e.kind()) {
        case Kind::kAdd: op = Op::kAdd; break;
        case Kind::kSub: op = Op::kSub; break;
        case Kind::kMul: op = Op::kMul; break;
        default: op = Op::kDiv; break;
      }
      program_.push_back({op});
    }
  }
}

double CompiledExpr::operator()(std::span<const double> values) const {
  if (program_.empty()) return 0.0;
  constexpr std::size_t kInline = 64;
  double inline_stack[kInline];
  std::vector<double> heap_stack;
  double* stack = inline_stack;
  if (max_depth_ > kInline) {
    heap_stack.resize(max_depth_);
    stack = heap_stack.data();
  }
  std::size_t top = 0;
  for (const Instruction& ins : program_) {
    switch (ins.op) {
      case Op::kConstant: stack[top++] = ins.constant; break;
      case Op::kSlot: stack[top++] = values[ins.argument]; break;
      case Op::kNeg: stack[top - 1] = -stack[top - 1]; break;
      case Op::kAdd: --top; stack[top - 1] += stack[top]; break;
      case Op::kSub: --top; stack[top - 1] -= stack[top]; break;
      case Op::kMul: --top; stack[top - 1] *= stack[top]; break;
      case Op::kDiv:
        --top;
        if (stack[top] == 0.0) throw DomainError("division by zero");
        stack[top - 1] /= stack[top];
        break;
      case Op::kPow: {
        double base = stack[top - 1];
        double result = 1.0;
        for (unsigned i = 0; i < ins.argument; ++i) result *= base;
        stack[top - 1] = result;
        break;
      }
      case Op::kSin: stack[top - 1] = std::sin(stack[top - 1]); break;
      case Op::kCos: stack[top - 1] = std::cos(stack[top - 1]); break;
      case Op::kExp: stack[top - 1] = std::exp(stack[top - 1]); break;
      case Op::kSqrt:
        if (stack[top - 1] < 0.0) throw DomainError("sqrt of a negative number");
        stack[top - 1] = std::sqrt(stack[top - 1]);
        break;
    }
  }
  return stack[0];
}

}  // namespace nambu
