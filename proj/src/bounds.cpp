#include "qamrx/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qamrx {

namespace {

constexpr double kEmbedFailThreshold = -1e-6;

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

double sql_error(double nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw std::invalid_argument("sql_error: mean photon number must be finite and >= 0");
  const double s = std::sqrt(nbar / 10.0);
  // Half level spacing s over sigma = 1/sqrt(2); inner levels err both ways.
  const double per_quadrature = 1.5 * gaussian_tail(s * std::numbers::sqrt2);
  return per_quadrature * (2.0 - per_quadrature);
}

GramMatrix gram_matrix(std::span<const Amplitude> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  GramMatrix gram{Eigen::MatrixXcd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) gram.g(i, j) = coherent_overlap(states[i], states[j]);
  return gram;
}

GramMatrix gram_matrix(const Constellation& c) { return gram_matrix(std::span<const Amplitude>(c.amplitudes())); }

Eigen::MatrixXcd embed_states(const GramMatrix& gram) {
  const Eigen::MatrixXcd hermitian = 0.5 * (gram.g + gram.g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian);
  if (es.info() != Eigen::Success) throw std::domain_error("embed_states: eigendecomposition failed");
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < kEmbedFailThreshold) {
    std::ostringstream msg;
    msg << "embed_states: Gram matrix is not positive semidefinite (min eigenvalue " << lowest << ")";
    throw std::domain_error(msg.str());
  }
  // Eigenvalues inside the rounding noise of the decomposition are zeros.
  const double noise = static_cast<double>(gram.size()) * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, es.eigenvalues().maxCoeff());
  const Eigen::VectorXd root =
      es.eigenvalues().unaryExpr([noise](double v) { return v > noise ? std::sqrt(v) : 0.0; });
  return root.asDiagonal() * es.eigenvectors().adjoint();
}

double optimality_residual(const Eigen::MatrixXcd& embedded, std::span<const double> priors,
                           const std::vector<Eigen::MatrixXcd>& operators) {
  const Eigen::Index dim = embedded.rows();
  Eigen::MatrixXcd upsilon = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t j = 0; j < operators.size(); ++j) {
    const auto psi = embedded.col(static_cast<Eigen::Index>(j));
    upsilon.noalias() += priors[j] * psi * (psi.adjoint() * operators[j]);
  }
  const Eigen::MatrixXcd hermitian = 0.5 * (upsilon + upsilon.adjoint());

  double residual = 0.0;
  for (std::size_t i = 0; i < operators.size(); ++i) {
    const auto psi = embedded.col(static_cast<Eigen::Index>(i));
    const Eigen::MatrixXcd gap = hermitian - priors[i] * psi * psi.adjoint();
    residual = std::max(residual, -min_hermitian_eigenvalue(gap));
  }
  return residual;
}

HelstromResult helstrom_bound(std::span<const Amplitude> states, std::span<const double> priors,
                              const HelstromOptions& options) {
  if (states.empty() || states.size() != priors.size())
    throw std::invalid_argument("helstrom_bound: need one prior per state and at least one state");
  if (!(options.tol > 0.0)) throw std::invalid_argument("helstrom_bound: tol must be positive");

  const Eigen::MatrixXcd psi = embed_states(gram_matrix(states));
  const Eigen::Index dim = psi.rows();
  const std::size_t n = states.size();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);

  std::vector<Eigen::MatrixXcd> povm(n, identity / static_cast<double>(n));
  Eigen::VectorXd weight(static_cast<Eigen::Index>(n));
  double residual = 0.0;

  for (long iter = 1; iter <= options.max_iterations; ++iter) {
    // For pure states rho_i Pi_i rho_i = <psi_i|Pi_i|psi_i> rho_i, so the
    // update only needs one scalar weight per state.
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = psi.col(static_cast<Eigen::Index>(i));
      weight(static_cast<Eigen::Index>(i)) = priors[i] * priors[i] * (v.adjoint() * povm[i] * v)(0, 0).real();
    }
    // With A = Psi diag(sqrt(w)), R = (A A^H)^(1/2) and sqrt(w_i) R^-1 psi_i is
    // column i of the unitary polar factor U V^H of A.  Taking the polar
    // factor from the SVD keeps sum_i Pi_i = I exact even where R is nearly
    // singular, and completes the measurement outside the span of the states.
    const Eigen::MatrixXcd a = psi * weight.cwiseSqrt().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXcd polar = svd.matrixU() * svd.matrixV().adjoint();
    for (std::size_t i = 0; i < n; ++i) {
      const auto m = polar.col(static_cast<Eigen::Index>(i));
      povm[i] = m * m.adjoint();
    }

    residual = optimality_residual(psi, priors, povm);
    if (residual <= options.tol) {
      HelstromResult result;
      double success = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto v = psi.col(static_cast<Eigen::Index>(i));
        success += priors[i] * (v.adjoint() * povm[i] * v)(0, 0).real();
      }
      Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
      double lowest = 1.0;
      for (const auto& op : povm) {
        total += op;
        lowest = std::min(lowest, min_hermitian_eigenvalue(0.5 * (op + op.adjoint())));
      }
      result.povm.completeness_error = (total - identity).operatorNorm();
      result.povm.min_eigenvalue = lowest;
      result.povm.success_probability = std::clamp(success, 0.0, 1.0);
      result.povm.residual = residual;
      result.povm.iterations = iter;
      result.povm.operators = std::move(povm);
      result.error = 1.0 - result.povm.success_probability;

      if (result.povm.completeness_error > kCompletenessTol || result.povm.min_eigenvalue < -kPositivityTol) {
        std::ostringstream msg;
        msg << "helstrom_bound: converged measurement violates POVM invariants (completeness error "
            << result.povm.completeness_error << ", min eigenvalue " << result.povm.min_eigenvalue << ")";
        throw ConvergenceError(msg.str(), residual);
      }
      return result;
    }
  }
  std::ostringstream msg;
  msg << "helstrom_bound: no convergence within " << options.max_iterations << " iterations (last residual "
      << residual << ", tol " << options.tol << ")";
  throw ConvergenceError(msg.str(), residual);
}

HelstromResult helstrom_bound(const Constellation& c, double tol) {
  std::array<double, kSymbols> priors;
  for (int m = 0; m < kSymbols; ++m) priors[m] = c.prior(m);
  return helstrom_bound(std::span<const Amplitude>(c.amplitudes()), priors, HelstromOptions{tol});
}

}  // namespace qamrx
