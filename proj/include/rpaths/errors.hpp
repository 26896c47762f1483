#pragma once

#include <stdexcept>

namespace rpaths {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateMaximum : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SignError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PrecisionLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooFewSamples : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Extinction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StiffnessFloor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rpaths
