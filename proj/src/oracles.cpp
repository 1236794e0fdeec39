#include "qamrx/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qamrx::oracles {

namespace {

constexpr std::array<double, 8> kNodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                       -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                       0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                         0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                         0.2223810344533745, 0.1012285362903763};

double gaussian_density(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels < 1) throw std::invalid_argument("integrate: need at least one panel");
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double panel = 0.0;
    for (std::size_t k = 0; k < kNodes.size(); ++k) panel += kWeights[k] * f(mid + 0.5 * width * kNodes[k]);
    total += 0.5 * width * panel;
  }
  return total;
}

std::array<double, 4> hypoexponential_clicks(const RateSequence& rates, double duration) {
  std::array<double, 4> out{};
  double rest = 1.0;
  for (int n = 0; n < 3; ++n) {
    double prefactor = 1.0;
    for (int k = 0; k < n; ++k) prefactor *= rates(k);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      double denom = 1.0;
      for (int j = 0; j <= n; ++j)
        if (j != k) denom *= rates(j) - rates(k);
      if (denom == 0.0) throw std::invalid_argument("hypoexponential_clicks: rates must be distinct");
      sum += std::exp(-rates(k) * duration) / denom;
    }
    out[n] = prefactor * sum;
    rest -= out[n];
  }
  out[3] = rest;
  return out;
}

double binary_helstrom_error(const Amplitude& a0, const Amplitude& a1) {
  const double d = (a0 - a1).energy();
  return 0.5 * (1.0 - std::sqrt(1.0 - std::exp(-d)));
}

double sql_error_by_cells(double nbar) {
  const double s = std::sqrt(nbar / 10.0);
  const double sigma = std::sqrt(0.5);
  const double reach = 3.0 * s + 14.0 * sigma;
  // Cell edges along either quadrature: (-inf, -2s], (-2s, 0], (0, 2s], (2s, inf).
  const std::array<double, 5> edges{-reach, -2.0 * s, 0.0, 2.0 * s, reach};
  constexpr int kPanels = 24;

  double correct = 0.0;
  for (int row = 0; row < kLevels; ++row) {
    for (int col = 0; col < kLevels; ++col) {
      const double mx = s * kGridLevels[col];
      const double my = s * kGridLevels[row];
      if (edges[col + 1] <= edges[col] || edges[row + 1] <= edges[row]) continue;
      const double cell = integrate(
          [&](double y) {
            return integrate([&](double x) { return gaussian_density(x, mx, sigma) * gaussian_density(y, my, sigma); },
                             edges[col], edges[col + 1], kPanels);
          },
          edges[row], edges[row + 1], kPanels);
      correct += cell / kSymbols;
    }
  }
  return 1.0 - correct;
}

double brute_force_total_error(double nbar, double beta, NullingOrder order) {
  const double s = std::sqrt(nbar / 10.0);
  const double sigma = 0.5;
  const double inf = std::numeric_limits<double>::infinity();
  const double half = s / std::numbers::sqrt2;
  const std::array<double, 5> edges{-inf, -2.0 * half, 0.0, 2.0 * half, inf};

  double correct = 0.0;
  for (int m = 0; m < kSymbols; ++m) {
    const int true_row = m / kLevels;
    const int true_col = m % kLevels;
    const std::complex<double> arm(s * kGridLevels[true_col] / std::numbers::sqrt2,
                                   s * kGridLevels[true_row] / std::numbers::sqrt2);
    for (int r = 0; r < kLevels; ++r) {
      const double lo = edges[r], hi = edges[r + 1];
      if (!(hi > lo)) continue;
      const double z_lo = (lo - arm.imag()) / sigma, z_hi = (hi - arm.imag()) / sigma;
      const double p_row = 0.5 * (std::erfc(-z_hi / std::numbers::sqrt2) - std::erfc(-z_lo / std::numbers::sqrt2));

      RateSequence rates;
      std::array<int, 4> column_at_stage{};
      for (int k = 0; k < kLevels; ++k) {
        const int col = order == NullingOrder::Ascending ? k : kLevels - 1 - k;
        column_at_stage[k] = col;
        const std::complex<double> cand(s * kGridLevels[col] / std::numbers::sqrt2,
                                        s * kGridLevels[r] / std::numbers::sqrt2);
        rates(k) = std::norm(arm - cand + beta);
      }
      const auto clicks = click_distribution(rates);
      for (int n = 0; n < 4; ++n) {
        const bool right = r == true_row && column_at_stage[n] == true_col;
        if (right) correct += p_row * clicks[n] / kSymbols;
      }
    }
  }
  return 1.0 - correct;
}

}  // namespace qamrx::oracles
