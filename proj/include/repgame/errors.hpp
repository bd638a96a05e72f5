#pragma once

#include <stdexcept>
#include <string>

namespace repgame {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Normal equations of a predictor fit are numerically singular.
struct SingularRepresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix required to be (strictly) positive definite is too close to
// singular for the requested operation.
struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Marginal vector could not be written as a convex combination of 0/1
// vertices of the capped simplex.
struct DecompositionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteGradient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear program did not reach a verified optimum.
struct LpFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroRepresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace repgame
