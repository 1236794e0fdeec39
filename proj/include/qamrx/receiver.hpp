#pragma once

// Analytic error model of the hybrid receiver: a homodyne P-quadrature row
// decision on one beam-splitter arm feeds forward into a sequential-nulling
// photon counter on the other arm.

#include "qamrx/constellation.hpp"
#include "qamrx/core.hpp"

#include <Eigen/Core>

#include <array>

namespace qamrx {

/// P(decide row r' | true row r), stored (r-1, r'-1).
struct RowConfusion {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();

  double operator()(int true_row, int decided_row) const { return p(true_row - 1, decided_row - 1); }
  double mean_correct() const { return p.trace() / kLevels; }
};

enum class ReceiverMode { TypeI, TypeII };

struct ReceiverConfig {
  double nbar = 0.0;
  double beta = 0.0;
  ReceiverMode mode = ReceiverMode::TypeI;
  NullingOrder order = NullingOrder::Ascending;

  static ReceiverConfig type_one(double nbar) { return {nbar, 0.0, ReceiverMode::TypeI}; }
  static ReceiverConfig type_two(double nbar, double beta) { return {nbar, beta, ReceiverMode::TypeII}; }

  /// Throws std::invalid_argument on a negative or non-finite nbar, a
  /// non-finite beta, or a TypeI config carrying beta != 0.
  void validate() const;
};

/// Homodyne decision thresholds (ascending) for the arm of a constellation of
/// scale s: s * {-2, 0, 2} / sqrt(2).
std::array<double, 3> row_thresholds(double scale);

/// Nearest-mean row decision for a homodyne outcome; a sample exactly on a
/// threshold goes to the lower row.
int decide_row(double outcome, const std::array<double, 3>& thresholds);

RowConfusion row_confusion(double nbar);

RateSequence stage2_rates(const Amplitude& true_arm_amp, const std::array<Amplitude, kLevels>& candidates,
                          double beta);

/// Hypothesis index (1-based position in the nulling sequence) for N clicks.
int decide_column(int clicks);

/// Success probability for each true column (1-based order) given a correct
/// row decision.  Row-independent: correct-row residues are purely real.
std::array<double, kLevels> column_success_given_correct_row(double nbar, double beta,
                                                             NullingOrder order = NullingOrder::Ascending);

double total_error(const ReceiverConfig& config);

}  // namespace qamrx
