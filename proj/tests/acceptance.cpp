// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "qamrx/bounds.hpp"
#include "qamrx/montecarlo.hpp"
#include "qamrx/optimizer.hpp"
#include "qamrx/oracles.hpp"
#include "qamrx/receiver.hpp"
#include "qamrx/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

using namespace qamrx;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct GridRow {
  double nbar;
  double type1;
  double type2;
  double beta_sq;
  double sql;
  HelstromResult helstrom;
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// 40-point log grid on [0.1, 30], shared by several criteria.
const std::vector<GridRow>& sweep_grid() {
  static const std::vector<GridRow> rows = [] {
    SweepSpec spec;
    spec.nbar_min = 0.1;
    spec.nbar_max = 30.0;
    spec.points = 40;
    spec.spacing = Spacing::Log;
    std::vector<GridRow> out;
    for (double nbar : spec.grid()) {
      const auto beta = optimize_beta(nbar, 1e-8);
      out.push_back({nbar, beta.error_at_zero, beta.error_at_beta, beta.beta_star_sq, sql_error(nbar),
                     helstrom_bound(Constellation(nbar), 1e-8)});
    }
    return out;
  }();
  return rows;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Outcome degenerate_anchor() {
  const double t1 = total_error(ReceiverConfig::type_one(0.0));
  const double sql = sql_error(0.0);
  const double hel = helstrom_bound(Constellation(0.0), 1e-8).error;
  const double q = 15.0 / 16.0;
  const bool ok = std::abs(t1 - q) <= 1e-12 && std::abs(sql - q) <= 1e-12 && hel <= q + 1e-12;
  return {ok, "type1=" + format_number(t1) + " sql=" + format_number(sql) + " helstrom=" + format_number(hel)};
}

Outcome bound_ordering() {
  const auto start = std::chrono::steady_clock::now();
  const auto& grid = sweep_grid();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int bad = 0;
  for (const auto& r : grid) {
    const double hel = r.helstrom.error;
    if (!(hel <= r.type2 + 1e-6 && hel <= r.sql + 1e-6 && r.type2 <= r.type1 + 1e-12)) {
      ++bad;
      std::cout << "    violation at nbar=" << r.nbar << '\n';
    }
  }
  return {bad == 0 && secs < 300.0, std::to_string(grid.size()) + " points, " + std::to_string(bad) +
                                        " violations, grid computed in " + fmt(secs) + " s (limit 300 s)"};
}

Outcome type_one_crossover() {
  const auto& grid = sweep_grid();
  double lo = -1.0, hi = -1.0;
  for (const auto& r : grid)
    if (r.type1 > r.sql) {
      lo = r.nbar;
      break;
    }
  if (lo >= 0.0)
    for (const auto& r : grid)
      if (r.nbar > lo && r.type1 < r.sql) {
        hi = r.nbar;
        break;
      }
  return {lo >= 0.0 && hi > lo, "type1 > sql at nbar=" + fmt(lo) + ", type1 < sql at nbar=" + fmt(hi)};
}

Outcome wider_type_two_advantage() {
  const auto& grid = sweep_grid();
  bool superset = true;
  int only_type2 = 0;
  double first_type1 = INFINITY, first_type2 = INFINITY;
  for (const auto& r : grid) {
    const bool t1 = r.type1 < r.sql, t2 = r.type2 < r.sql;
    if (t1 && !t2) superset = false;
    if (t2 && !t1) ++only_type2;
    if (t1) first_type1 = std::min(first_type1, r.nbar);
    if (t2) first_type2 = std::min(first_type2, r.nbar);
  }
  const bool weak_side = first_type2 < first_type1;
  return {superset && only_type2 > 0 && weak_side,
          "superset=" + std::string(superset ? "yes" : "no") + ", extra points=" + std::to_string(only_type2) +
              ", beats SQL from nbar=" + fmt(first_type2) + " (type II) vs " + fmt(first_type1) + " (type I)"};
}

Outcome beta_decay() {
  const std::vector<double> nbars{0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> b2;
  for (double n : nbars) b2.push_back(optimize_beta(n, 1e-8).beta_star_sq);
  bool monotone = true;
  std::string detail = "beta*^2:";
  for (std::size_t i = 0; i < b2.size(); ++i) {
    detail += " " + fmt(b2[i]);
    if (i > 0 && b2[i] > 1.05 * b2[i - 1]) monotone = false;
  }
  const bool decayed = b2.back() < 0.2 * b2.front();
  return {monotone && decayed, detail};
}

Outcome type_convergence() {
  auto gap = [](double nbar) {
    const auto r = optimize_beta(nbar, 1e-8);
    return (r.error_at_zero - r.error_at_beta) / r.error_at_zero;
  };
  const double weak = gap(0.5), strong = gap(20.0);
  return {strong < 0.1 * weak,
          "relative gap " + fmt(strong) + " at nbar=20 vs " + fmt(weak) + " at nbar=0.5 (need < " + fmt(0.1 * weak) + ")"};
}

Outcome click_oracles() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 1000) {
    const RateSequence r(u(rng), u(rng), u(rng), u(rng));
    if (std::abs(r(0) - r(1)) < 0.1 || std::abs(r(0) - r(2)) < 0.1 || std::abs(r(1) - r(2)) < 0.1) continue;
    const auto closed = oracles::hypoexponential_clicks(r);
    const auto got = click_distribution(r);
    for (int n = 0; n < 4; ++n) worst = std::max(worst, std::abs(got[n] - closed[n]));
    ++tested;
  }

  constexpr std::uint64_t kSamples = 1000000;
  double worst_z = 0.0;
  for (const RateSequence& rates : {RateSequence(0.7, 1.9, 3.1, 0.5), RateSequence(2.0, 2.0, 2.0, 2.0),
                                    RateSequence(0.0, 1.0, 1.0, 1.0), RateSequence(0.4, 8.0, 0.05, 3.0)}) {
    Rng stream = block_stream(31415, 0);
    std::array<std::uint64_t, 4> hist{};
    for (std::uint64_t i = 0; i < kSamples; ++i) ++hist[sample_clicks(stream, rates)];
    const auto law = click_distribution(rates);
    for (int n = 0; n < 4; ++n) {
      const double se = std::sqrt(std::max(law[n] * (1.0 - law[n]), 1e-12) / kSamples);
      worst_z = std::max(worst_z, std::abs(static_cast<double>(hist[n]) / kSamples - law[n]) / se);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-10 && worst_z <= 4.0 && secs < 60.0,
          "closed-form max error " + fmt(worst) + " (tol 1e-10), Monte Carlo max |z| " + fmt(worst_z) +
              " (tol 4), " + fmt(secs) + " s"};
}

Outcome helstrom_oracles() {
  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const std::array<double, 2> half{0.5, 0.5};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::array<Amplitude, 2> states{Amplitude(u(rng), u(rng)), Amplitude(u(rng), u(rng))};
    worst = std::max(worst, std::abs(helstrom_bound(states, half).error -
                                     oracles::binary_helstrom_error(states[0], states[1])));
  }
  double completeness = 0.0, residual = 0.0, positivity = 0.0;
  for (const auto& r : sweep_grid()) {
    completeness = std::max(completeness, r.helstrom.povm.completeness_error);
    residual = std::max(residual, r.helstrom.povm.residual);
    positivity = std::max(positivity, -r.helstrom.povm.min_eigenvalue);
  }
  return {worst <= 1e-9 && completeness <= 1e-8 && positivity <= 1e-10 && residual <= 1e-8,
          "binary max error " + fmt(worst) + ", completeness " + fmt(completeness) + ", negativity " +
              fmt(positivity) + ", residual " + fmt(residual)};
}

Outcome analytic_vs_monte_carlo() {
  const auto start = std::chrono::steady_clock::now();
  constexpr std::uint64_t kTrials = 1000000;
  constexpr std::uint64_t kSeed = 20241015;
  const unsigned threads = worker_count();
  int misses = 0;
  std::string detail;
  for (double nbar : {0.5, 2.0, 5.0, 10.0}) {
    const double beta_star = optimize_beta(nbar, 1e-8).beta_star;
    for (double beta : {0.0, beta_star}) {
      const auto cfg = beta == 0.0 ? ReceiverConfig::type_one(nbar) : ReceiverConfig::type_two(nbar, beta);
      const double analytic = total_error(cfg);
      const auto mc = estimate_error(cfg, kTrials, kSeed, threads);
      const bool in = mc.ci_low <= analytic && analytic <= mc.ci_high;
      if (!in) {
        ++misses;
        detail += " miss(nbar=" + fmt(nbar) + ",beta=" + fmt(beta) + ": " + fmt(analytic) + " not in [" +
                  fmt(mc.ci_low) + "," + fmt(mc.ci_high) + "])";
      }
    }
  }
  const auto cfg = ReceiverConfig::type_one(2.0);
  const double analytic = total_error(cfg);
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto mc = estimate_error(cfg, kTrials, 5000 + seed, threads);
    covered += mc.ci_low <= analytic && analytic <= mc.ci_high;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {misses == 0 && covered >= 90,
          "8 interval checks, " + std::to_string(misses) + " misses;" + detail + " coverage " +
              std::to_string(covered) + "/100; " + fmt(secs) + " s"};
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("qamrx_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string base = std::string(QAMRX_CLI_PATH) +
                           " sweep --nbar-min 0.1 --nbar-max 30 --points 8 --spacing log --trials 20000 --seed 4242";
  auto run = [&](const std::string& name, int threads) {
    const fs::path out = dir / name;
    const std::string cmd = base + " --threads " + std::to_string(threads) + " --out " + out.string();
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return std::pair{rc, ss.str()};
  };
  const auto a = run("a.csv", 1);
  const auto b = run("b.csv", 1);
  const auto c = run("c.csv", 4);
  fs::remove_all(dir);
  const bool ok = a.first == 0 && b.first == 0 && c.first == 0 && !a.second.empty() && a.second == b.second &&
                  a.second == c.second;
  return {ok, std::to_string(a.second.size()) + " bytes; rerun identical=" + (a.second == b.second ? "yes" : "no") +
                  ", 1 vs 4 threads identical=" + (a.second == c.second ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"C1 degenerate anchor at nbar=0", degenerate_anchor},
      {"C2 bound ordering on 40-point log grid", bound_ordering},
      {"C3 type I crosses the SQL", type_one_crossover},
      {"C4 type II beats the SQL on a wider range", wider_type_two_advantage},
      {"C5 optimal displacement decays", beta_decay},
      {"C6 type I approaches type II", type_convergence},
      {"C7 click statistics oracles", click_oracles},
      {"C8 Helstrom oracles and POVM certificates", helstrom_oracles},
      {"C9 analytic vs Monte Carlo", analytic_vs_monte_carlo},
      {"C10 sweep determinism", cli_determinism},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " acceptance criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
