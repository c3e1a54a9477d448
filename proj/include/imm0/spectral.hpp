#pragma once

// Fourier tools for samples of 2*pi-periodic functions on the uniform grid
// theta_j = 2*pi*j/N. Plane-valued data is carried as complex numbers x + iy.

#include <Eigen/Core>

#include <complex>

namespace imm0 {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

constexpr bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// Signed wave number of FFT bin `j` for length `n`; the Nyquist bin maps to +n/2.
constexpr Eigen::Index wave_number(Eigen::Index j, Eigen::Index n) { return j <= n / 2 ? j : j - n; }

/// Uniform grid theta_j = 2*pi*j/n.
Eigen::VectorXd parameter_grid(Eigen::Index n);

/// Coefficients c_k of z(theta) = sum_k c_k exp(i k theta), in FFT bin order.
Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXcd& samples);
Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXd& samples);

/// Inverse of fourier_coefficients.
Eigen::VectorXcd synthesize(const Eigen::VectorXcd& coefficients);

/// d/dtheta computed spectrally. The Nyquist mode is dropped.
Eigen::VectorXcd spectral_derivative(const Eigen::VectorXcd& samples);
Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& samples);

/// Periodic antiderivative of `integrand` with value 0 at theta_0.
/// The mean (zero mode) and the Nyquist mode of the integrand are ignored;
/// callers that need a closed result must check the mean themselves.
Eigen::VectorXcd spectral_antiderivative(const Eigen::VectorXcd& integrand);

/// Trigonometric interpolant of the samples evaluated at arbitrary parameters.
/// The Nyquist mode is split symmetrically so real data stays real.
Eigen::VectorXcd trig_interpolate(const Eigen::VectorXcd& samples, const Eigen::VectorXd& at);

/// Band-limited resampling onto a grid of `n` points (zero padding or truncation).
Eigen::VectorXcd resample(const Eigen::VectorXcd& samples, Eigen::Index n);

/// Uniform quadrature of a periodic function: (2*pi/N) * sum_j f_j, fixed summation order.
template <typename Derived>
typename Derived::Scalar periodic_integral(const Eigen::DenseBase<Derived>& f) {
  typename Derived::Scalar acc(0);
  for (Eigen::Index j = 0; j < f.size(); ++j) acc += f(j);
  return acc * (kTwoPi / static_cast<double>(f.size()));
}

}  // namespace imm0
