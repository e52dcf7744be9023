#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace conicfo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// Error taxonomy. The CLI maps these onto exit codes (see tools/conicfo.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: dimension mismatch, bad file contents.
class InputError : public Error {
 public:
  using Error::Error;
};

// A scalar parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Required instance data (f*, R_d, ...) is missing.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The objective lacks the oracle a method needs (gradient or prox).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a failed scalar root solve.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// An adaptive scheme exhausted its doubling cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct Counters {
  std::uint64_t proj_U = 0;
  std::uint64_t proj_K = 0;
  std::uint64_t proj_Kstar = 0;
  std::uint64_t matvec_G = 0;
  std::uint64_t matvec_Gt = 0;
  std::uint64_t grad_f = 0;

  std::uint64_t projections() const { return proj_U + proj_K + proj_Kstar; }
  std::uint64_t matvecs() const { return matvec_G + matvec_Gt; }
  void reset() { *this = Counters{}; }
};

}  // namespace conicfo
