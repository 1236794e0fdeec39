#include "qamrx/montecarlo.hpp"

#include "qamrx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace qamrx {

namespace {

constexpr double kWilsonZ = 1.959963984540054;

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

Rng block_stream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(block), hi32(block)};
  return Rng(seq);
}

int sample_clicks(Rng& rng, const RateSequence& rates) {
  double elapsed = 0.0;
  int clicks = 0;
  while (clicks < 3) {
    const double rate = rates(clicks);
    if (rate <= 0.0) break;
    elapsed += std::exponential_distribution<double>(rate)(rng);
    if (elapsed > 1.0) break;
    ++clicks;
  }
  return clicks;
}

TrialSimulator::TrialSimulator(const ReceiverConfig& config) : config_(config) {
  config_.validate();
  const Constellation c(config_.nbar);
  arms_ = split(c);
  thresholds_ = row_thresholds(c.scale());
  for (int r = 1; r <= kLevels; ++r) candidates_[r - 1] = row_candidates(arms_.nulling, r, config_.order);
}

TrialOutcome TrialSimulator::operator()(Rng& rng) const {
  std::uniform_int_distribution<int> pick(0, kSymbols - 1);
  return run(rng, pick(rng));
}

TrialOutcome TrialSimulator::run(Rng& rng, int true_symbol) const {
  TrialOutcome out;
  out.true_symbol = true_symbol;

  std::normal_distribution<double> homodyne(arms_.homodyne[true_symbol].im, std::sqrt(kQuadratureVariance));
  out.row_decided = decide_row(homodyne(rng), thresholds_);

  // Wrong-row candidates keep their Im residue in the rates.
  const auto rates = stage2_rates(arms_.nulling[true_symbol], candidates_[out.row_decided - 1], config_.beta);
  out.clicks = sample_clicks(rng, rates);

  const int stage = decide_column(out.clicks) - 1;
  out.decided_symbol = Constellation::symbol_at(out.row_decided, column_of_stage(stage, config_.order));
  return out;
}

TrialOutcome simulate_trial(Rng& rng, const ReceiverConfig& config) { return TrialSimulator(config)(rng); }

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

ErrorEstimate estimate_error(const ReceiverConfig& config, std::uint64_t trials, std::uint64_t seed,
                             unsigned threads) {
  if (trials == 0) throw std::invalid_argument("estimate_error: need at least one trial");
  const TrialSimulator sim(config);
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<std::uint64_t> errors(blocks, 0);

  parallel_for(blocks, threads, [&](std::size_t b) {
    Rng rng = block_stream(seed, b);
    const std::uint64_t begin = b * kTrialsPerBlock;
    const std::uint64_t end = std::min(trials, begin + kTrialsPerBlock);
    std::uint64_t count = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto o = sim(rng);
      count += o.decided_symbol != o.true_symbol;
    }
    errors[b] = count;
  });

  ErrorEstimate est;
  est.trials = trials;
  est.seed = seed;
  for (auto e : errors) est.errors += e;
  est.p_hat = static_cast<double>(est.errors) / static_cast<double>(trials);
  std::tie(est.ci_low, est.ci_high) = wilson_interval(est.errors, trials);
  return est;
}

}  // namespace qamrx
