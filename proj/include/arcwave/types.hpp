#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace arcwave {

using cd = std::complex<double>;
using Vec2c = Eigen::Matrix<cd, 2, 1>;
using Mat2c = Eigen::Matrix<cd, 2, 2>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr cd kI{0.0, 1.0};

// Bilinear dot product; no conjugation, so it stays holomorphic in both arguments.
template <typename A, typename B>
auto bdot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a.array() * b.array()).sum();
}

// Rotation by -90 degrees: (v1, v2) -> (v2, -v1).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> perp(const Eigen::Matrix<Scalar, 2, 1>& v) {
  return {v(1), -v(0)};
}

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Degenerate or non-admissible geometry: vanishing tangents, touching arcs, tube violations.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A kernel was asked for a value off its admissible domain (log branch cut, coincident points).
struct KernelError : GeometryError {
  using GeometryError::GeometryError;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace arcwave
