#include "qamrx/sweep.hpp"

#include "qamrx/bounds.hpp"
#include "qamrx/optimizer.hpp"
#include "qamrx/parallel.hpp"
#include "qamrx/receiver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace qamrx {

void SweepSpec::validate() const {
  if (!std::isfinite(nbar_min) || !std::isfinite(nbar_max)) throw UsageError("nbar range must be finite");
  if (nbar_min < 0.0) throw UsageError("--nbar-min must be >= 0");
  if (spacing == Spacing::Log && !(nbar_min > 0.0)) throw UsageError("log spacing requires --nbar-min > 0");
  if (!(nbar_max > nbar_min)) throw UsageError("--nbar-max must exceed --nbar-min");
  if (points < 2) throw UsageError("--points must be >= 2");
  if (!(beta_tol > 0.0)) throw UsageError("--beta-tol must be positive");
  if (!(helstrom_tol > 0.0)) throw UsageError("--helstrom-tol must be positive");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> g(static_cast<std::size_t>(points));
  const double last = points - 1;
  for (int k = 0; k < points; ++k) {
    const double t = k / last;
    g[k] = spacing == Spacing::Linear ? nbar_min + t * (nbar_max - nbar_min)
                                      : nbar_min * std::pow(nbar_max / nbar_min, t);
  }
  g.front() = nbar_min;
  g.back() = nbar_max;
  return g;
}

void SweepRecord::check_invariants() const {
  const double floor = std::min({type1_error, type2_error, sql_error});
  if (helstrom_error > floor + kHelstromSlack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "bound ordering violated at nbar=" << nbar << ": helstrom " << helstrom_error << " > min(type1, type2, sql) "
        << floor;
    throw std::runtime_error(msg.str());
  }
  if (type2_error > type1_error + kTypeOrderSlack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "type II error exceeds type I at nbar=" << nbar;
    throw std::runtime_error(msg.str());
  }
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

McTriple triple(const ErrorEstimate& e) { return {e.p_hat, e.ci_low, e.ci_high}; }

void append_triple(std::string& line, const McTriple& t) {
  line += ',' + format_number(t.p_hat) + ',' + format_number(t.ci_low) + ',' + format_number(t.ci_high);
}

}  // namespace

SweepRecord compute_record(double nbar, const SweepSpec& spec) {
  SweepRecord rec;
  rec.nbar = nbar;
  rec.type1_error = total_error(ReceiverConfig::type_one(nbar));
  const BetaResult beta = optimize_beta(nbar, spec.beta_tol);
  rec.type2_error = beta.error_at_beta;
  rec.beta_star = beta.beta_star;
  rec.beta_star_sq = beta.beta_star_sq;
  rec.sql_error = sql_error(nbar);
  rec.helstrom_error = helstrom_bound(Constellation(nbar), spec.helstrom_tol).error;
  if (spec.trials > 0) {
    rec.mc_type1 = triple(estimate_error(ReceiverConfig::type_one(nbar), spec.trials, spec.seed));
    rec.mc_type2 = triple(estimate_error(ReceiverConfig::type_two(nbar, beta.beta_star), spec.trials, spec.seed));
  }
  rec.check_invariants();
  return rec;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  const auto grid = spec.grid();
  std::vector<SweepRecord> records(grid.size());
  parallel_for(grid.size(), spec.threads, [&](std::size_t i) { records[i] = compute_record(grid[i], spec); });
  return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records, bool with_mc) {
  std::string out = kSweepHeader;
  if (with_mc) out += kSweepMcHeader;
  out += '\n';
  for (const auto& r : records) {
    std::string line = format_number(r.nbar);
    for (double v : {r.type1_error, r.type2_error, r.beta_star, r.beta_star_sq, r.sql_error, r.helstrom_error})
      line += ',' + format_number(v);
    if (with_mc) {
      append_triple(line, r.mc_type1.value_or(McTriple{}));
      append_triple(line, r.mc_type2.value_or(McTriple{}));
    }
    out += line + '\n';
  }
  return out;
}

std::string bounds_csv(const SweepSpec& spec) {
  const auto grid = spec.grid();
  std::vector<std::string> lines(grid.size());
  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    const double nbar = grid[i];
    lines[i] = format_number(nbar) + ',' + format_number(sql_error(nbar)) + ',' +
               format_number(helstrom_bound(Constellation(nbar), spec.helstrom_tol).error) + '\n';
  });
  std::string out = std::string(kBoundsHeader) + '\n';
  for (const auto& l : lines) out += l;
  return out;
}

std::string simulate_csv(const SweepSpec& spec) {
  if (spec.trials == 0) throw UsageError("simulate needs --trials > 0");
  const auto grid = spec.grid();
  std::vector<std::string> lines(grid.size());
  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    const double nbar = grid[i];
    const double beta = optimize_beta(nbar, spec.beta_tol).beta_star;
    std::string line = format_number(nbar) + ',' + format_number(beta);
    append_triple(line, triple(estimate_error(ReceiverConfig::type_one(nbar), spec.trials, spec.seed)));
    append_triple(line, triple(estimate_error(ReceiverConfig::type_two(nbar, beta), spec.trials, spec.seed)));
    lines[i] = line + '\n';
  });
  std::string out = std::string(kSimulateHeader) + '\n';
  for (const auto& l : lines) out += l;
  return out;
}

std::string optimize_csv(double nbar, double tol) {
  if (!std::isfinite(nbar) || nbar < 0.0) throw UsageError("--nbar must be finite and >= 0");
  if (!(tol > 0.0)) throw UsageError("--beta-tol must be positive");
  const BetaResult r = optimize_beta(nbar, tol);
  return std::string(kOptimizeHeader) + '\n' + format_number(nbar) + ',' + format_number(r.beta_star) + ',' +
         format_number(r.beta_star_sq) + ',' + format_number(r.error_at_beta) + ',' + format_number(r.error_at_zero) +
         '\n';
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::runtime_error("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace qamrx
