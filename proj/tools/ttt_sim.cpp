// Target type tracking Monte-Carlo driver: Dempster vs PCR5.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "evfuse/config.hpp"
#include "evfuse/error.hpp"
#include "evfuse/report.hpp"

namespace {

int exit_code(evfuse::ExitCode code) { return static_cast<int>(code); }

void print_latency(const evfuse::ExperimentConfig& cfg, const evfuse::MonteCarloSummary& summary) {
  for (const auto& rs : summary.rules) {
    std::printf("%-9s runs=%zu failed=%zu\n", std::string(evfuse::to_string(rs.rule)).c_str(), rs.runs_used,
                rs.failures);
    if (!rs.usable()) continue;
    for (const auto& st : rs.latency) {
      std::printf("  switch @%-4zu %s->%s  mean=%6.2f  median=%5.1f  censored=%5.1f%%\n", st.at.scan,
                  cfg.labels[st.at.from].c_str(), cfg.labels[st.at.to].c_str(), st.mean, st.median,
                  100.0 * st.censor_rate());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential target type tracking with Dempster's rule and PCR5"};

  std::optional<std::string> config_path, classifier, scenario_path, rule, criterion, out_dir;
  std::optional<std::size_t> runs, threads;
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--classifier", classifier, "c1, c2, or a confusion matrix file");
  app.add_option("--scenario", scenario_path, "scenario file: one 'label duration' per line");
  app.add_option("--runs", runs, "number of Monte-Carlo runs");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--rule", rule, "dempster, pcr5 or both");
  app.add_option("--criterion", criterion, "belief or pignistic");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads");
  app.add_flag("-q,--quiet", quiet, "no latency table on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(evfuse::ExitCode::Validation);
  }

  evfuse::ExperimentConfig cfg = evfuse::default_config();
  try {
    if (config_path) {
      const std::filesystem::path path(*config_path);
      cfg = evfuse::apply_config_text(cfg, evfuse::read_file(path), path.parent_path());
    }
    if (classifier) evfuse::apply_setting(cfg, "classifier", *classifier);
    if (scenario_path) evfuse::apply_setting(cfg, "scenario", *scenario_path);
    if (runs) evfuse::apply_setting(cfg, "runs", std::to_string(*runs));
    if (seed) cfg.seed = *seed;
    if (rule) evfuse::apply_setting(cfg, "rule", *rule);
    if (criterion) evfuse::apply_setting(cfg, "criterion", *criterion);
    if (out_dir) evfuse::apply_setting(cfg, "out", *out_dir);
    if (threads) evfuse::apply_setting(cfg, "threads", std::to_string(*threads));
  } catch (const evfuse::IoError& e) {
    std::cerr << "ttt_sim: " << e.what() << '\n';
    return exit_code(evfuse::ExitCode::Io);
  } catch (const evfuse::Error& e) {
    std::cerr << "ttt_sim: " << e.what() << '\n';
    return exit_code(evfuse::ExitCode::Validation);
  }

  const evfuse::ExperimentOutcome outcome = evfuse::run_experiment(cfg);
  if (outcome.code != evfuse::ExitCode::Ok) std::cerr << "ttt_sim: " << outcome.message << '\n';
  if (!quiet && !outcome.summary.rules.empty()) print_latency(cfg, outcome.summary);
  if (outcome.code == evfuse::ExitCode::Ok && !quiet) std::printf("wrote %s\n", cfg.out_dir.c_str());
  return exit_code(outcome.code);
}
