// qamrx: sweeps, optimization, bounds and Monte Carlo validation for the
// hybrid 16-QAM receiver.  Exit codes: 0 ok, 1 usage, 2 runtime, 3 validation.

#include "qamrx/bounds.hpp"
#include "qamrx/sweep.hpp"
#include "qamrx/validate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitValidation = 3;

// Plain key=value lines; '#' starts a comment.  Keys are long flag names
// without the leading dashes.
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qamrx::UsageError("cannot read config file " + path);
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw qamrx::UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto key = line.substr(0, eq);
    auto value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

// Config entries are spliced in right after the subcommand name so that any
// explicit flag given later on the command line takes precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (config_path.empty() || args.empty()) return args;
  const auto extra = read_config(config_path);
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

void add_grid_flags(CLI::App* cmd, qamrx::SweepSpec& spec, std::string& spacing) {
  cmd->add_option("--nbar-min", spec.nbar_min, "Smallest mean photon number")->capture_default_str();
  cmd->add_option("--nbar-max", spec.nbar_max, "Largest mean photon number")->capture_default_str();
  cmd->add_option("--points", spec.points, "Number of grid points")->capture_default_str();
  cmd->add_option("--spacing", spacing, "Grid spacing")->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
  cmd->add_option("--trials", spec.trials, "Monte Carlo trials per point (0 = analytic only)")->capture_default_str();
  cmd->add_option("--seed", spec.seed, "Monte Carlo seed")->capture_default_str();
  cmd->add_option("--beta-tol", spec.beta_tol, "Golden-section tolerance on beta")->capture_default_str();
  cmd->add_option("--helstrom-tol", spec.helstrom_tol, "Optimality residual tolerance")->capture_default_str();
  cmd->add_option("--out", spec.out, "Output CSV path (default: stdout)");
  cmd->add_option("--threads", spec.threads, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--config", "key=value file; explicit flags win");
}

void emit(const std::filesystem::path& out, const std::string& csv) {
  if (out.empty())
    std::cout << csv;
  else
    qamrx::write_atomically(out, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid homodyne + sequential-nulling 16-QAM receiver lab", "qamrx"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  qamrx::SweepSpec spec;
  std::string spacing = "log";

  auto* sweep = app.add_subcommand("sweep", "Type I/II errors, optimal beta, SQL and Helstrom over a grid");
  add_grid_flags(sweep, spec, spacing);
  auto* bounds = app.add_subcommand("bounds", "SQL and Helstrom bound over a grid");
  add_grid_flags(bounds, spec, spacing);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo Type I/II error estimates over a grid");
  add_grid_flags(simulate, spec, spacing);

  double nbar = 1.0;
  auto* optimize = app.add_subcommand("optimize", "Optimal displacement at one photon number");
  optimize->add_option("--nbar", nbar, "Mean photon number")->required();
  optimize->add_option("--beta-tol,--tol", spec.beta_tol, "Golden-section tolerance on beta")->capture_default_str();
  optimize->add_option("--out", spec.out, "Output CSV path (default: stdout)");
  optimize->add_option("--config", "key=value file; explicit flags win");

  qamrx::ValidateOptions vopts;
  auto* validate = app.add_subcommand("validate", "Run the built-in oracle suite");
  validate->add_option("--trials", vopts.trials, "Monte Carlo trials per check")->capture_default_str();
  validate->add_option("--seed", vopts.seed, "Monte Carlo seed")->capture_default_str();
  validate->add_option("--threads", vopts.threads, "Worker threads (0 = all cores)")->capture_default_str();
  validate->add_option("--tolerance-scale", vopts.tolerance_scale, "Multiply every tolerance")->group("");
  validate->add_option("--config", "key=value file; explicit flags win");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const qamrx::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  spec.spacing = spacing == "linear" ? qamrx::Spacing::Linear : qamrx::Spacing::Log;

  try {
    if (*sweep) {
      const auto records = qamrx::run_sweep(spec);
      emit(spec.out, qamrx::sweep_csv(records, spec.trials > 0));
    } else if (*bounds) {
      emit(spec.out, qamrx::bounds_csv(spec));
    } else if (*simulate) {
      emit(spec.out, qamrx::simulate_csv(spec));
    } else if (*optimize) {
      emit(spec.out, qamrx::optimize_csv(nbar, spec.beta_tol));
    } else if (*validate) {
      const auto checks = qamrx::run_validation(vopts);
      qamrx::print_report(std::cout, checks);
      return qamrx::all_passed(checks) ? 0 : kExitValidation;
    }
  } catch (const qamrx::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
