#include "qamrx/validate.hpp"

#include "qamrx/bounds.hpp"
#include "qamrx/montecarlo.hpp"
#include "qamrx/oracles.hpp"
#include "qamrx/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qamrx {

namespace {

std::string label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

class Suite {
 public:
  explicit Suite(double scale) : scale_(scale) {}

  void check(std::string name, double expected, double got, double tol) {
    const double scaled = tol * scale_;
    checks_.push_back({std::move(name), expected, got, scaled, std::abs(got - expected) <= scaled});
  }

  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  double scale_;
  std::vector<CheckResult> checks_;
};

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& options) {
  Suite suite(options.tolerance_scale);

  {
    const Amplitude a(0.5, 0.0);
    const std::array<Amplitude, 2> states{a, a * -1.0};
    const std::array<double, 2> priors{0.5, 0.5};
    suite.check("helstrom.binary_closed_form", oracles::binary_helstrom_error(states[0], states[1]),
                helstrom_bound(states, priors).error, 1e-9);
  }

  {
    const RateSequence rates(1.0, 2.0, 3.0, 4.0);
    const auto expected = oracles::hypoexponential_clicks(rates);
    const auto got = click_distribution(rates);
    for (int n = 0; n < 4; ++n)
      suite.check("clicks.hypoexponential.p" + std::to_string(n), expected[n], got[n], 1e-10);
  }

  for (double nbar : {1.0, 5.0, 10.0}) {
    const auto config = ReceiverConfig::type_one(nbar);
    const double analytic = total_error(config);
    const auto mc = estimate_error(config, options.trials, options.seed, options.threads);
    const double se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(mc.trials));
    suite.check("montecarlo.type1.nbar=" + label(nbar), analytic, mc.p_hat, 4.0 * se);
  }

  for (double nbar : {1.0, 5.0, 10.0}) {
    const auto h = helstrom_bound(Constellation(nbar), 1e-8);
    const std::string tag = ".nbar=" + label(nbar);
    suite.check("povm.residual" + tag, 0.0, h.povm.residual, 1e-8);
    suite.check("povm.completeness" + tag, 0.0, h.povm.completeness_error, kCompletenessTol);
    suite.check("povm.positivity" + tag, 0.0, std::max(0.0, -h.povm.min_eigenvalue), kPositivityTol);
    suite.check("povm.below_sql" + tag, 0.0, std::max(0.0, h.error - sql_error(nbar)), 1e-6);
  }

  for (double nbar : {1.0, 5.0, 10.0})
    suite.check("sql.cell_integration.nbar=" + label(nbar), oracles::sql_error_by_cells(nbar),
                sql_error(nbar), 1e-6);

  for (double beta : {0.0, 0.4})
    suite.check("receiver.enumeration.nbar=2.beta=" + label(beta),
                oracles::brute_force_total_error(2.0, beta), total_error(ReceiverConfig::type_two(2.0, beta)),
                1e-12);

  return suite.take();
}

void print_report(std::ostream& os, const std::vector<CheckResult>& checks) {
  const auto old_precision = os.precision(12);
  for (const auto& c : checks)
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " expected=" << c.expected << " got=" << c.got
       << " tol=" << c.tolerance << '\n';
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; });
  os << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
  os.precision(old_precision);
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

}  // namespace qamrx
