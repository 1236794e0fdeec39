#include "qamrx/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qamrx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHomodyneSigma = 0.5;

// P(lo < Z <= hi) for a standard normal Z, evaluated on the tail that keeps
// precision when the interval sits far from the origin.
double normal_interval(double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (lo >= 0.0) return gaussian_tail(lo) - gaussian_tail(hi);
  return gaussian_cdf(hi) - gaussian_cdf(lo);
}

void check_nbar(double nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw std::invalid_argument("mean photon number must be finite and >= 0");
}

}  // namespace

void ReceiverConfig::validate() const {
  check_nbar(nbar);
  if (!std::isfinite(beta)) throw std::invalid_argument("ReceiverConfig: beta must be finite");
  if (mode == ReceiverMode::TypeI && beta != 0.0)
    throw std::invalid_argument("ReceiverConfig: Type I (exact nulling) requires beta = 0");
}

std::array<double, 3> row_thresholds(double scale) {
  const double step = scale * std::numbers::sqrt2;  // 2s / sqrt(2)
  return {-step, 0.0, step};
}

int decide_row(double outcome, const std::array<double, 3>& thresholds) {
  int row = 1;
  for (double t : thresholds)
    if (outcome > t) ++row;
  return row;
}

RowConfusion row_confusion(double nbar) {
  check_nbar(nbar);
  const Constellation c(nbar);
  const auto t = row_thresholds(c.scale());
  const std::array<double, 5> edges{-kInf, t[0], t[1], t[2], kInf};

  RowConfusion rc;
  for (int r = 0; r < kLevels; ++r) {
    const double mean = c.scale() * kGridLevels[r] / std::numbers::sqrt2;
    for (int d = 0; d < kLevels; ++d)
      rc.p(r, d) = normal_interval((edges[d] - mean) / kHomodyneSigma, (edges[d + 1] - mean) / kHomodyneSigma);
  }
  return rc;
}

RateSequence stage2_rates(const Amplitude& true_arm_amp, const std::array<Amplitude, kLevels>& candidates,
                          double beta) {
  RateSequence rates;
  for (int k = 0; k < kLevels; ++k) rates(k) = (true_arm_amp - candidates[k] + Amplitude(beta)).energy();
  return rates;
}

int decide_column(int clicks) {
  if (clicks < 0) throw std::invalid_argument("decide_column: click count must be >= 0");
  return std::min(clicks + 1, kLevels);
}

std::array<double, kLevels> column_success_given_correct_row(double nbar, double beta, NullingOrder order) {
  check_nbar(nbar);
  const auto arms = split(Constellation(nbar));
  const auto candidates = row_candidates(arms.nulling, 1, order);

  std::array<double, kLevels> success{};
  for (int stage = 0; stage < kLevels; ++stage) {
    const auto clicks = click_distribution(stage2_rates(candidates[stage], candidates, beta));
    // The true symbol is nulled at position `stage`, so it is decided iff N
    // lands on that position (N >= 3 for the last one).
    success[column_of_stage(stage, order) - 1] = clicks[stage];
  }
  return success;
}

double total_error(const ReceiverConfig& config) {
  config.validate();
  const double row_ok = row_confusion(config.nbar).mean_correct();
  const auto col = column_success_given_correct_row(config.nbar, config.beta, config.order);
  const double col_ok = (col[0] + col[1] + col[2] + col[3]) / kLevels;
  // A wrong row leaves only wrong-row candidates, so it is always an error.
  return 1.0 - row_ok * col_ok;
}

}  // namespace qamrx
