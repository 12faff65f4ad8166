#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tau2 {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

// Input validation failures.
struct InvalidN : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SiteOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct DimMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical failures that invalidate downstream constructions.
struct ZeroPolynomial : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroRoot : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularLeading : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotScalar : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPeriodic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateBasis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration failures (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tau2
