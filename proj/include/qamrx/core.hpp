#pragma once

// Primitive math shared by every stage of the receiver model: complex
// amplitudes, coherent-state overlaps, Gaussian quadrature statistics and the
// click-count law of a sequentially re-targeted photon counter.
//
// Conventions: <x> = Re(alpha), <p> = Im(alpha), vacuum variance 1/4 per
// quadrature.  A constant residue gamma held over the unit symbol interval
// produces Poisson clicks with mean |gamma|^2.

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qamrx {

template <typename Scalar>
struct BasicAmplitude {
  Scalar re{0};
  Scalar im{0};

  constexpr BasicAmplitude() = default;
  constexpr BasicAmplitude(Scalar re_, Scalar im_ = Scalar(0)) : re(re_), im(im_) {}

  constexpr Scalar energy() const { return re * re + im * im; }
  std::complex<Scalar> as_complex() const { return {re, im}; }
  bool is_finite() const { return std::isfinite(re) && std::isfinite(im); }

  constexpr BasicAmplitude operator+(const BasicAmplitude& o) const { return {re + o.re, im + o.im}; }
  constexpr BasicAmplitude operator-(const BasicAmplitude& o) const { return {re - o.re, im - o.im}; }
  constexpr BasicAmplitude operator*(Scalar k) const { return {re * k, im * k}; }
  constexpr BasicAmplitude operator/(Scalar k) const { return {re / k, im / k}; }
  constexpr bool operator==(const BasicAmplitude&) const = default;
};

using Amplitude = BasicAmplitude<double>;

/// Expected clicks per symbol interval while candidate k (0-based) is nulled.
template <typename Scalar>
using BasicRates = Eigen::Matrix<Scalar, 4, 1>;
using RateSequence = BasicRates<double>;

/// P(N=0), P(N=1), P(N=2), P(N>=3) over one symbol interval.
struct ClickDistribution {
  std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

  double p0() const { return p[0]; }
  double p1() const { return p[1]; }
  double p2() const { return p[2]; }
  double p3plus() const { return p[3]; }
  double operator[](std::size_t n) const { return p[n]; }
  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

/// <a|b> = exp(-(|a|^2 + |b|^2)/2 + conj(a) b)
template <typename Scalar>
std::complex<Scalar> coherent_overlap(const BasicAmplitude<Scalar>& a, const BasicAmplitude<Scalar>& b) {
  const std::complex<Scalar> exponent =
      -(a.energy() + b.energy()) / Scalar(2) + std::conj(a.as_complex()) * b.as_complex();
  return std::exp(exponent);
}

/// Upper tail of the standard normal, P(Z > x).
inline double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

/// Standard normal CDF, P(Z <= x).
inline double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline constexpr double kQuadratureVariance = 0.25;

/// Density of a P-quadrature homodyne outcome for coherent state alpha.
inline double homodyne_pdf(const Amplitude& alpha, double x) {
  const double d = x - alpha.im;
  return std::exp(-d * d / (2.0 * kQuadratureVariance)) /
         std::sqrt(2.0 * std::numbers::pi * kQuadratureVariance);
}

/// Click-count law of a pure-birth counter whose rate is rates[k] after k
/// clicks.  States N >= 3 are lumped into one absorbing bucket, so the
/// generator is the 4x4 lower-bidiagonal matrix with a zero last column and
/// the law is exp(duration * Q) applied to the initial state e0.  Repeated
/// rates need no special casing on this path.
template <typename Scalar>
std::array<Scalar, 4> click_probabilities(const BasicRates<Scalar>& rates, Scalar duration) {
  if (!(duration > Scalar(0)) || !std::isfinite(duration))
    throw std::invalid_argument("click_distribution: duration must be positive and finite");
  for (int k = 0; k < 4; ++k)
    if (!(rates(k) >= Scalar(0)) || !std::isfinite(rates(k)))
      throw std::invalid_argument("click_distribution: rates must be finite and non-negative");

  Eigen::Matrix<Scalar, 4, 4> generator = Eigen::Matrix<Scalar, 4, 4>::Zero();
  for (int k = 0; k < 3; ++k) {
    generator(k, k) = -rates(k) * duration;
    generator(k + 1, k) = rates(k) * duration;
  }
  const Eigen::Matrix<Scalar, 4, 4> transition = generator.exp();

  std::array<Scalar, 4> out{};
  for (int n = 0; n < 4; ++n) out[n] = std::clamp(transition(n, 0), Scalar(0), Scalar(1));
  return out;
}

inline ClickDistribution click_distribution(const RateSequence& rates, double duration = 1.0) {
  ClickDistribution d;
  d.p = click_probabilities<double>(rates, duration);
  return d;
}

}  // namespace qamrx
