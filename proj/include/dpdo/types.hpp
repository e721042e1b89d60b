#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace dpdo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Bad caller input: wrong dimension, parameter out of range, malformed config.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inner solver failed to reach its residual target, non-finite values, etc.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpdo
