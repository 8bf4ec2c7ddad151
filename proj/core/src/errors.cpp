#include "nambu/errors.hpp"

#include <string>

namespace nambu {

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : std::runtime_error("at position " + std::to_string(position) + ": " + message),
      position_(position) {}

UndeclaredName::UndeclaredName(std::string name)
    : std::runtime_error("undeclared name '" + name + "'"), name_(std::move(name)) {}

StepDivergence::StepDivergence(double last_good_time)
    : std::runtime_error("non-finite state after t = " + std::to_string(last_good_time)),
      last_good_time_(last_good_time) {}

MidpointNoConvergence::MidpointNoConvergence(double time)
    : std::runtime_error("implicit midpoint iteration did not converge at t = " +
                         std::to_string(time)),
      time_(time) {}

}  // namespace nambu
