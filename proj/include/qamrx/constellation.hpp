#pragma once

#include "qamrx/core.hpp"

#include <array>

namespace qamrx {

inline constexpr int kSymbols = 16;
inline constexpr int kLevels = 4;

/// Grid levels a, b in {-3, -1, +1, +3}.  Level index 0..3 is ascending.
inline constexpr std::array<int, kLevels> kGridLevels{-3, -1, 1, 3};

/// Order in which the four candidates of a row are nulled.
enum class NullingOrder { Ascending, Descending };

/// 16-QAM coherent-state alphabet with uniform priors.  Symbol m sits in row
/// m / 4 and column m % 4 (both 0-based internally); rows ascend in Im,
/// columns ascend in Re.  Public row/column indices are 1-based.
class Constellation {
 public:
  explicit Constellation(double nbar);

  double nbar() const { return nbar_; }
  double scale() const { return scale_; }
  double prior(int /*symbol*/) const { return 1.0 / kSymbols; }

  const std::array<Amplitude, kSymbols>& amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](int symbol) const { return amplitudes_.at(symbol); }

  static int row_of(int symbol) { return symbol / kLevels + 1; }
  static int col_of(int symbol) { return symbol % kLevels + 1; }
  static int symbol_at(int row, int col);

  double mean_energy() const;

 private:
  double nbar_;
  double scale_;
  std::array<Amplitude, kSymbols> amplitudes_;
};

/// One output port of the balanced beam splitter.
struct ArmView {
  std::array<Amplitude, kSymbols> amplitudes;

  const Amplitude& operator[](int symbol) const { return amplitudes.at(symbol); }
  double mean_energy() const;
};

struct SplitArms {
  ArmView homodyne;
  ArmView nulling;
};

Constellation build_qam16(double nbar);

SplitArms split(const Constellation& c);

/// The four arm amplitudes of row r (1-based) in nulling order.
std::array<Amplitude, kLevels> row_candidates(const ArmView& arm, int row,
                                              NullingOrder order = NullingOrder::Ascending);

/// Column (1-based) of the k-th nulling target (0-based) under the given order.
int column_of_stage(int stage, NullingOrder order);

}  // namespace qamrx
