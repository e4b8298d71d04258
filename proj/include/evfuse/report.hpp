#ifndef EVFUSE_REPORT_HPP
#define EVFUSE_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "evfuse/config.hpp"
#include "evfuse/simulation.hpp"

namespace evfuse {

/// Per scan: truth, then for every rule (fixed order, empty cells when a rule
/// was not run) the mean singleton masses, mean m(Theta) and correct rate.
std::string summary_csv(const ExperimentConfig& config, const MonteCarloSummary& summary);

/// Per switch: position and window, then mean / median / censor rate per rule.
std::string latency_csv(const ExperimentConfig& config, const MonteCarloSummary& summary);

/// Config echo (re-readable as a config file) plus reproduction metadata as
/// comment lines.
std::string meta_text(const ExperimentConfig& config, const MonteCarloSummary& summary);

/// gnuplot script drawing one mean-mass panel per label from summary.csv.
std::string plot_script(const ExperimentConfig& config);

/// FNV-1a 64 of the canonical config echo.
std::uint64_t config_hash(const ExperimentConfig& config);

enum class ExitCode : int { Ok = 0, Validation = 1, Runtime = 2, Io = 3 };

struct ExperimentOutcome {
  ExitCode code = ExitCode::Ok;
  std::string message;
  MonteCarloSummary summary;
};

/// Runs the Monte-Carlo experiment and writes summary.csv, latency.csv,
/// meta.txt and plot.gp into config.out_dir.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

}  // namespace evfuse

#endif  // EVFUSE_REPORT_HPP
