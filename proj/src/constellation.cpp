#include "qamrx/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qamrx {

namespace {

// Mean of a^2 + b^2 over the 4x4 grid of levels.
constexpr double kGridMeanEnergy = 10.0;

}  // namespace

Constellation::Constellation(double nbar) : nbar_(nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw std::invalid_argument("build_qam16: mean photon number must be finite and >= 0");
  scale_ = std::sqrt(nbar / kGridMeanEnergy);
  for (int row = 0; row < kLevels; ++row)
    for (int col = 0; col < kLevels; ++col)
      amplitudes_[row * kLevels + col] = Amplitude(scale_ * kGridLevels[col], scale_ * kGridLevels[row]);
}

int Constellation::symbol_at(int row, int col) {
  if (row < 1 || row > kLevels || col < 1 || col > kLevels)
    throw std::out_of_range("Constellation::symbol_at: row/column must be in 1..4");
  return (row - 1) * kLevels + (col - 1);
}

double Constellation::mean_energy() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += a.energy();
  return sum / kSymbols;
}

double ArmView::mean_energy() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += a.energy();
  return sum / kSymbols;
}

Constellation build_qam16(double nbar) { return Constellation(nbar); }

SplitArms split(const Constellation& c) {
  // The reflected-port phase is absorbed into the amplitude definition.
  ArmView arm;
  for (int m = 0; m < kSymbols; ++m) arm.amplitudes[m] = c[m] / std::numbers::sqrt2;
  return {arm, arm};
}

int column_of_stage(int stage, NullingOrder order) {
  if (stage < 0 || stage >= kLevels) throw std::out_of_range("column_of_stage: stage must be in 0..3");
  return order == NullingOrder::Ascending ? stage + 1 : kLevels - stage;
}

std::array<Amplitude, kLevels> row_candidates(const ArmView& arm, int row, NullingOrder order) {
  if (row < 1 || row > kLevels) throw std::out_of_range("row_candidates: row must be in 1..4");
  std::array<Amplitude, kLevels> out;
  for (int k = 0; k < kLevels; ++k) out[k] = arm[Constellation::symbol_at(row, column_of_stage(k, order))];
  return out;
}

}  // namespace qamrx
