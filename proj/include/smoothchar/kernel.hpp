#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smoothchar/error.hpp"

namespace smoothchar {

// Largest imaginary part tolerated when summing the conjugate-symmetric
// truncated series.
inline constexpr double kImaginaryResidue = 1e-9;

// Periodic indicator of (0, xi] mod 1.
inline int f_indicator(double u, double xi) {
  double v = u - std::floor(u);  // [0, 1)
  if (v == 0.0) v = 1.0;         // (0, 1]
  return v <= xi ? 1 : 0;
}

// Smoothed indicator: F_xi averaged over a window of half-width delta. It is a
// trapezoid equal to F_xi away from the cut points 0 and xi, ramping
// linearly across [-delta, delta] and [xi - delta, xi + delta], with Fourier
// coefficients
//   c_0 = xi,  c_j = (1 - e(-j xi)) / (2 pi i j) * sin(2 pi j delta) / (2 pi j delta).
class SmoothingKernel {
 public:
  SmoothingKernel(double delta, double xi, std::optional<std::int64_t> truncation = std::nullopt)
      : delta_(delta), xi_(xi) {
    if (!(delta > 0.0 && delta < 0.125)) {
      std::ostringstream os;
      os << "kernel requires 0 < delta < 1/8, got delta = " << delta;
      throw ParameterError(os.str());
    }
    if (!(xi > 0.0 && xi < 1.0)) {
      std::ostringstream os;
      os << "kernel requires 0 < xi < 1, got xi = " << xi;
      throw ParameterError(os.str());
    }
    if (!(delta <= 0.5 * std::min(xi, 1.0 - xi))) {
      std::ostringstream os;
      os << "kernel requires delta <= min{xi, 1 - xi}/2, got delta = " << delta
         << " > " << 0.5 * std::min(xi, 1.0 - xi);
      throw ParameterError(os.str());
    }
    J_ = truncation ? *truncation : default_truncation(delta);
    if (J_ < 0) throw ParameterError("truncation J must be >= 0");
    coeffs_.resize(static_cast<std::size_t>(J_) + 1);
    coeffs_[0] = {xi, 0.0};
    for (std::int64_t j = 1; j <= J_; ++j) coeffs_[j] = coefficient(j);
  }

  // ceil(delta^-2).
  static std::int64_t default_truncation(double delta) {
    return static_cast<std::int64_t>(std::ceil(1.0 / (delta * delta)));
  }

  double delta() const { return delta_; }
  double xi() const { return xi_; }
  std::int64_t truncation() const { return J_; }

  // c_j for |j| <= J; c_{-j} = conj(c_j).
  std::complex<double> coeff(std::int64_t j) const {
    if (j < -J_ || j > J_) throw RangeError("coefficient index " + std::to_string(j) + " beyond J");
    return j >= 0 ? coeffs_[j] : std::conj(coeffs_[-j]);
  }

  // The closed-form c_j at any j (not limited to the stored range).
  std::complex<double> coefficient(std::int64_t j) const {
    if (j == 0) return {xi_, 0.0};
    const double tj = 2.0 * std::numbers::pi * static_cast<double>(j);
    const std::complex<double> jump = 1.0 - std::polar(1.0, -tj * xi_);
    const double damp = std::sin(tj * delta_) / (tj * delta_);
    return jump / std::complex<double>(0.0, tj) * damp;
  }

  // min{1/(pi j), 1/(2 pi^2 j^2 delta)}, a bound for |c_j| with j >= 1.
  double coefficient_bound(std::int64_t j) const {
    const double jd = static_cast<double>(j);
    const double pi = std::numbers::pi;
    return std::min(1.0 / (pi * jd), 1.0 / (2.0 * pi * pi * jd * jd * delta_));
  }

  // Trapezoid value, piecewise on [0, 1). The plateau and the dead zone are
  // closed intervals and return exactly 1 and 0.
  double eval_exact(double u) const {
    const double v = u - std::floor(u);
    const double width = 2.0 * delta_;
    double f = 0.0;
    if (v >= delta_ && v <= xi_ - delta_)
      f = 1.0;
    else if (v >= xi_ + delta_ && v <= 1.0 - delta_)
      f = 0.0;
    else if (v < delta_)
      f = (v + delta_) / width;
    else if (v < xi_ + delta_)
      f = (xi_ + delta_ - v) / width;
    else
      f = (v - (1.0 - delta_)) / width;
    return std::clamp(f, 0.0, 1.0);
  }

  // sum_{|j| <= J} c_j e(j u).
  double eval_truncated(double u) const {
    std::complex<double> s = coeffs_[0];
    for (std::int64_t j = 1; j <= J_; ++j) {
      const double ju = static_cast<double>(j) * u;
      const double angle = 2.0 * std::numbers::pi * (ju - std::floor(ju));
      const std::complex<double> e(std::cos(angle), std::sin(angle));
      s += coeffs_[j] * e + std::conj(coeffs_[j]) * std::conj(e);
    }
    if (std::abs(s.imag()) >= kImaginaryResidue) {
      std::ostringstream os;
      os << "truncated series left imaginary residue " << s.imag();
      throw std::logic_error(os.str());
    }
    return s.real();
  }

  // Closed-form integral of f^2 over one period.
  double l2_norm_squared() const { return xi_ - 2.0 * delta_ / 3.0; }

 private:
  double delta_;
  double xi_;
  std::int64_t J_ = 0;
  std::vector<std::complex<double>> coeffs_;
};

inline SmoothingKernel build_kernel(double delta, double xi,
                                    std::optional<std::int64_t> J = std::nullopt) {
  return SmoothingKernel(delta, xi, J);
}

}  // namespace smoothchar
