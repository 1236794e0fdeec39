#pragma once

// Independent reference computations used to cross-check the engine: closed
// forms, direct quadrature and exhaustive enumeration.  None of these share a
// code path with the quantity they check.

#include "qamrx/constellation.hpp"
#include "qamrx/core.hpp"

#include <array>
#include <functional>

namespace qamrx::oracles {

/// Composite Gauss-Legendre quadrature (8 nodes per panel).
double integrate(const std::function<double(double)>& f, double a, double b, int panels);

/// Click-count law from the hypoexponential sum; requires pairwise distinct
/// rates[0..2] (rates[3] never matters).
std::array<double, 4> hypoexponential_clicks(const RateSequence& rates, double duration = 1.0);

/// (1 - sqrt(1 - |<a0|a1>|^2)) / 2 for equiprobable pure states.
double binary_helstrom_error(const Amplitude& a0, const Amplitude& a1);

/// Heterodyne symbol error by 2-D quadrature of the Gaussian over each of the
/// 16 decision cells.
double sql_error_by_cells(double nbar);

/// Receiver error by enumerating true symbol x homodyne row decision x click
/// count, with wrong-row rates computed from the full complex residues.
double brute_force_total_error(double nbar, double beta, NullingOrder order = NullingOrder::Ascending);

}  // namespace qamrx::oracles
