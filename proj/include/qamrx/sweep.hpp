#pragma once

// Photon-number sweeps and their CSV serialization.

#include "qamrx/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qamrx {

/// Invalid user input (bad spec, bad flag value).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Spacing { Linear, Log };

struct SweepSpec {
  double nbar_min = 0.1;
  double nbar_max = 30.0;
  int points = 40;
  Spacing spacing = Spacing::Log;
  std::uint64_t trials = 0;  // 0 = analytic only
  std::uint64_t seed = 1;
  double beta_tol = 1e-8;
  double helstrom_tol = 1e-8;
  std::filesystem::path out;  // empty = standard output
  unsigned threads = 1;

  /// Throws UsageError.
  void validate() const;
  std::vector<double> grid() const;
};

struct McTriple {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct SweepRecord {
  double nbar = 0.0;
  double type1_error = 0.0;
  double type2_error = 0.0;
  double beta_star = 0.0;
  double beta_star_sq = 0.0;
  double sql_error = 0.0;
  double helstrom_error = 0.0;
  std::optional<McTriple> mc_type1;
  std::optional<McTriple> mc_type2;

  /// Throws std::runtime_error if the bound ordering is violated.
  void check_invariants() const;
};

inline constexpr double kHelstromSlack = 1e-6;
inline constexpr double kTypeOrderSlack = 1e-12;

inline constexpr const char* kSweepHeader =
    "nbar,type1_error,type2_error,beta_star,beta_star_sq,sql_error,helstrom_error";
inline constexpr const char* kSweepMcHeader =
    ",mc_type1_phat,mc_type1_ci_low,mc_type1_ci_high,mc_type2_phat,mc_type2_ci_low,mc_type2_ci_high";
inline constexpr const char* kBoundsHeader = "nbar,sql_error,helstrom_error";
inline constexpr const char* kSimulateHeader =
    "nbar,beta_star,mc_type1_phat,mc_type1_ci_low,mc_type1_ci_high,mc_type2_phat,mc_type2_ci_low,mc_type2_ci_high";
inline constexpr const char* kOptimizeHeader = "nbar,beta_star,beta_star_sq,error_at_beta,error_at_zero";

/// 17 significant digits with '.' as decimal point, whatever the locale.
std::string format_number(double value);

SweepRecord compute_record(double nbar, const SweepSpec& spec);

/// One record per grid point, in grid order.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRecord>& records, bool with_mc);
std::string bounds_csv(const SweepSpec& spec);
std::string simulate_csv(const SweepSpec& spec);
std::string optimize_csv(double nbar, double tol);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed run never leaves a partial file behind.  Throws std::runtime_error.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace qamrx
