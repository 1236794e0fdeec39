#pragma once

// Benchmark curves: the standard quantum limit of an ideal heterodyne
// receiver on the undivided input, and the Helstrom minimum-error bound for
// equiprobable pure coherent states.

#include "qamrx/constellation.hpp"
#include "qamrx/core.hpp"

#include <Eigen/Core>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qamrx {

/// Symbol error of ideal heterodyne detection (variance 1/2 per quadrature)
/// followed by per-quadrature nearest-level decisions.
double sql_error(double nbar);

/// G(i, j) = <alpha_i | alpha_j>.
struct GramMatrix {
  Eigen::MatrixXcd g;

  Eigen::Index size() const { return g.rows(); }
};

GramMatrix gram_matrix(std::span<const Amplitude> states);
GramMatrix gram_matrix(const Constellation& c);

/// Columns v_i with v_i^H v_j = G(i, j), from G = B^H B through the
/// eigendecomposition of G.  Eigenvalues down to -1e-6 are clipped to zero;
/// anything more negative throws std::domain_error.
Eigen::MatrixXcd embed_states(const GramMatrix& gram);

struct PovmSolution {
  std::vector<Eigen::MatrixXcd> operators;
  double success_probability = 0.0;
  double residual = 0.0;            // optimality residual at termination
  double completeness_error = 0.0;  // || sum_i Pi_i - I ||_2
  double min_eigenvalue = 0.0;      // smallest eigenvalue over all Pi_i
  long iterations = 0;
};

struct HelstromResult {
  double error = 1.0;
  PovmSolution povm;
};

struct HelstromOptions {
  double tol = 1e-8;
  long max_iterations = 100000;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

inline constexpr double kCompletenessTol = 1e-8;
inline constexpr double kPositivityTol = 1e-10;

/// Max over i of the negative part of Hermitian(Y) - p_i rho_i, with
/// Y = sum_j p_j rho_j Pi_j.  Zero exactly at the minimum-error measurement.
double optimality_residual(const Eigen::MatrixXcd& embedded, std::span<const double> priors,
                           const std::vector<Eigen::MatrixXcd>& operators);

/// Minimum-error discrimination of pure states |alpha_i> with priors p_i.
/// Iterates Pi_i <- R^-1 p_i rho_i Pi_i rho_i p_i R^-1 from the uniform
/// measurement until the optimality residual drops below tol.
/// Throws ConvergenceError at the iteration cap.
HelstromResult helstrom_bound(std::span<const Amplitude> states, std::span<const double> priors,
                              const HelstromOptions& options = {});

HelstromResult helstrom_bound(const Constellation& c, double tol = 1e-8);

}  // namespace qamrx
