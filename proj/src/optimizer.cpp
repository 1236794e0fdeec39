#include "qamrx/optimizer.hpp"

#include "qamrx/receiver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qamrx {

namespace {

double type_two_error(double nbar, double beta) { return total_error(ReceiverConfig::type_two(nbar, beta)); }

void check_bracket(const BetaBracket& b) {
  if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
    throw std::invalid_argument("optimize_beta: bracket must be a non-empty finite interval");
  if (b.lo > 0.0 || b.hi < 0.0) throw std::invalid_argument("optimize_beta: bracket must contain 0");
}

bool better(double err, double beta, double best_err, double best_beta) {
  if (err != best_err) return err < best_err;
  if (std::abs(beta) != std::abs(best_beta)) return std::abs(beta) < std::abs(best_beta);
  return beta < best_beta;
}

}  // namespace

BetaBracket default_bracket(double nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0) throw std::invalid_argument("default_bracket: invalid nbar");
  const double reach = 3.0 * std::sqrt(nbar / 10.0) / std::numbers::sqrt2 + 2.0;
  return {-reach, reach};
}

GridPoint scan_beta_grid(double nbar, const BetaBracket& bracket, int points) {
  check_bracket(bracket);
  if (points < kMinGridPoints) throw std::invalid_argument("scan_beta_grid: need at least 41 grid points");

  const double step = (bracket.hi - bracket.lo) / (points - 1);
  GridPoint best{0.0, type_two_error(nbar, 0.0), step};
  for (int k = 0; k < points; ++k) {
    const double beta = k + 1 == points ? bracket.hi : bracket.lo + k * step;
    const double err = type_two_error(nbar, beta);
    if (better(err, beta, best.error, best.beta)) best = {beta, err, step};
  }
  return best;
}

BetaResult optimize_beta(double nbar, const BetaBracket& bracket, double tol, int points) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("optimize_beta: tol must be positive");
  const GridPoint grid = scan_beta_grid(nbar, bracket, points);

  // Golden-section search on the cell [beta - step, beta + step].
  constexpr double kInvPhi = 0.6180339887498949;
  double a = std::max(bracket.lo, grid.beta - grid.spacing);
  double b = std::min(bracket.hi, grid.beta + grid.spacing);
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = type_two_error(nbar, x1);
  double f2 = type_two_error(nbar, x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = type_two_error(nbar, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = type_two_error(nbar, x2);
    }
  }
  const double mid = 0.5 * (a + b);
  const double f_mid = type_two_error(nbar, mid);

  BetaResult out;
  out.beta_star = grid.beta;
  out.error_at_beta = grid.error;
  if (f_mid < out.error_at_beta) {
    out.beta_star = mid;
    out.error_at_beta = f_mid;
  }
  out.beta_star_sq = out.beta_star * out.beta_star;
  out.error_at_zero = type_two_error(nbar, 0.0);
  return out;
}

BetaResult optimize_beta(double nbar, double tol) { return optimize_beta(nbar, default_bracket(nbar), tol); }

}  // namespace qamrx
