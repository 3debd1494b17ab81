#ifndef NVWGM_TYPES_HPP
#define NVWGM_TYPES_HPP

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace nvwgm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kImag{0.0, 1.0};

// All internal frequencies and rates are angular (rad/s); times are seconds.
// The boundary convention follows the usual "2pi x MHz" notation: a quantity
// written as 2pi x f MHz is stored as 2*pi*f*1e6 rad/s.
namespace units {

inline double rad_per_s(double mhz_over_2pi) { return kTwoPi * mhz_over_2pi * 1e6; }
inline double mhz_over_2pi(double rad_s) { return rad_s / (kTwoPi * 1e6); }
inline double seconds(double ns) { return ns * 1e-9; }
inline double ns(double seconds) { return seconds * 1e9; }
inline double meters(double nm) { return nm * 1e-9; }
inline double cubic_meters(double um3) { return um3 * 1e-18; }

}  // namespace units

}  // namespace nvwgm

#endif  // NVWGM_TYPES_HPP
