#include "imm0/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace imm0 {
namespace {

std::vector<Complex> to_std(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXcd from_std(const std::vector<Complex>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Eigen::VectorXd parameter_grid(Eigen::Index n) {
  Eigen::VectorXd grid(n);
  for (Eigen::Index j = 0; j < n; ++j) grid(j) = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  return grid;
}

Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXcd& samples) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, to_std(samples));
  return from_std(out) / static_cast<double>(samples.size());
}

Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXd& samples) {
  return fourier_coefficients(Eigen::VectorXcd(samples.cast<Complex>()));
}

Eigen::VectorXcd synthesize(const Eigen::VectorXcd& coefficients) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> out;
  fft.inv(out, to_std(coefficients));
  return from_std(out);
}

Eigen::VectorXcd spectral_derivative(const Eigen::VectorXcd& samples) {
  const Eigen::Index n = samples.size();
  Eigen::VectorXcd c = fourier_coefficients(samples);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index k = wave_number(j, n);
    c(j) = (n % 2 == 0 && j == n / 2) ? Complex(0.0) : c(j) * Complex(0.0, static_cast<double>(k));
  }
  return synthesize(c);
}

Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& samples) {
  return spectral_derivative(Eigen::VectorXcd(samples.cast<Complex>())).real();
}

Eigen::VectorXcd spectral_antiderivative(const Eigen::VectorXcd& integrand) {
  const Eigen::Index n = integrand.size();
  Eigen::VectorXcd c = fourier_coefficients(integrand);
  c(0) = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    const Eigen::Index k = wave_number(j, n);
    c(j) = (n % 2 == 0 && j == n / 2) ? Complex(0.0) : c(j) / Complex(0.0, static_cast<double>(k));
  }
  Eigen::VectorXcd z = synthesize(c);
  z.array() -= z(0);
  z(0) = 0.0;
  return z;
}

Eigen::VectorXcd trig_interpolate(const Eigen::VectorXcd& samples, const Eigen::VectorXd& at) {
  const Eigen::Index n = samples.size();
  const Eigen::VectorXcd c = fourier_coefficients(samples);
  Eigen::VectorXcd out(at.size());
  for (Eigen::Index m = 0; m < at.size(); ++m) {
    Complex acc(0.0);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (c(j) == Complex(0.0)) continue;
      if (n % 2 == 0 && j == n / 2) {
        acc += c(j) * std::cos(static_cast<double>(n / 2) * at(m));
        continue;
      }
      acc += c(j) * std::polar(1.0, static_cast<double>(wave_number(j, n)) * at(m));
    }
    out(m) = acc;
  }
  return out;
}

Eigen::VectorXcd resample(const Eigen::VectorXcd& samples, Eigen::Index n) {
  const Eigen::Index m = samples.size();
  if (m == n) return samples;
  const Eigen::VectorXcd c = fourier_coefficients(samples);
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n);
  auto bin = [n](Eigen::Index k) { return k >= 0 ? k : n + k; };
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index k = wave_number(j, m);
    if (m % 2 == 0 && j == m / 2 && n > m) {
      // The source Nyquist mode is a cosine; spread it over +k and -k.
      d(bin(k)) += 0.5 * c(j);
      d(bin(-k)) += 0.5 * c(j);
    } else if (2 * std::abs(k) < n) {
      d(bin(k)) += c(j);
    } else if (2 * std::abs(k) == n) {
      d(n / 2) += c(j);  // +-n/2 alias onto the target Nyquist bin
    }
  }
  return synthesize(d);
}

}  // namespace imm0
