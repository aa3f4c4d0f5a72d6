#pragma once

#include <stdexcept>
#include <string>

namespace lagdirac {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonLagrangianResult : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonLagrangianInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotStrong : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotOrthogonal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularForm : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularOperator : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotRegular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotFree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentMomentCondition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OddKernel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonUnitarySample : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WindowTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace lagdirac
