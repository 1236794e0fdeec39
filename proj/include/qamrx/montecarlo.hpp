#pragma once

// End-to-end stochastic simulation of the hybrid receiver.  Shares only the
// constellation geometry and the decision rules with the analytic engine;
// click counts come from sampled exponential inter-arrival times.

#include "qamrx/constellation.hpp"
#include "qamrx/receiver.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <utility>

namespace qamrx {

using Rng = std::mt19937_64;

struct TrialOutcome {
  int true_symbol = 0;
  int decided_symbol = 0;
  int clicks = 0;  // saturates at 3
  int row_decided = 1;
};

struct ErrorEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t seed = 0;
};

/// Trials per independently seeded block.  Block b of a run always draws from
/// the stream derived from (seed, b), whatever the thread count.
inline constexpr std::uint64_t kTrialsPerBlock = 1u << 16;

/// Stream for block `block` of a run seeded with `seed`.
Rng block_stream(std::uint64_t seed, std::uint64_t block);

/// Counts clicks in one unit interval of a birth process with rates[k] after
/// k clicks, stopping at the third click.
int sample_clicks(Rng& rng, const RateSequence& rates);

/// Precomputed geometry for repeated trials of one configuration.
class TrialSimulator {
 public:
  explicit TrialSimulator(const ReceiverConfig& config);

  TrialOutcome operator()(Rng& rng) const;
  /// Same trial with a fixed transmitted symbol.
  TrialOutcome run(Rng& rng, int true_symbol) const;

  const ReceiverConfig& config() const { return config_; }

 private:
  ReceiverConfig config_;
  SplitArms arms_;
  std::array<double, 3> thresholds_;
  std::array<std::array<Amplitude, kLevels>, kLevels> candidates_;  // by decided row
};

TrialOutcome simulate_trial(Rng& rng, const ReceiverConfig& config);

/// Wilson score interval at 95% confidence.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// Error rate over `trials` independent trials; a pure function of
/// (config, trials, seed).  `threads` only changes wall-clock time.
ErrorEstimate estimate_error(const ReceiverConfig& config, std::uint64_t trials, std::uint64_t seed,
                             unsigned threads = 1);

}  // namespace qamrx
