#pragma once

#include "qamrx/constellation.hpp"

namespace qamrx {

struct BetaBracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct BetaResult {
  double beta_star = 0.0;
  double beta_star_sq = 0.0;
  double error_at_beta = 0.0;
  double error_at_zero = 0.0;
};

struct GridPoint {
  double beta = 0.0;
  double error = 0.0;
  double spacing = 0.0;  // distance to the neighbouring grid points
};

inline constexpr int kMinGridPoints = 41;

/// [-3s/sqrt(2) - 2, 3s/sqrt(2) + 2] for the constellation scale s at nbar.
BetaBracket default_bracket(double nbar);

/// Best point of a uniform scan (plus beta = 0) of the Type II error over the
/// bracket.  Ties keep the smallest |beta|, then the smaller beta.
GridPoint scan_beta_grid(double nbar, const BetaBracket& bracket, int points = kMinGridPoints);

/// Grid scan to locate the basin, then golden-section refinement of the
/// bracketing cell down to width <= tol.  The refined point replaces the grid
/// point only if it strictly lowers the error.
BetaResult optimize_beta(double nbar, const BetaBracket& bracket, double tol, int points = kMinGridPoints);
BetaResult optimize_beta(double nbar, double tol = 1e-8);

}  // namespace qamrx
