#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cvtele {

using Complex = std::complex<double>;

using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;
using Matrix4d = Eigen::Matrix4d;
using Vector4d = Eigen::Vector4d;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace cvtele
