#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace eivdesign {

// Every supported model has at most three parameters, so small vectors and
// matrices live on the stack.
inline constexpr int kMaxParams = 3;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxParams, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxParams, kMaxParams>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs outside a model's domain (pole at theta2 + x = 0, bad parameters).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A matrix that had to be inverted was rank-deficient or not positive definite.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class NoRootFound : public Error {
 public:
  using Error::Error;
};

// Malformed user input: designs, priors, scenario files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace eivdesign
