#include "evfuse/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>

#include "evfuse/error.hpp"
#include "text.hpp"

#ifndef EVFUSE_VERSION
#define EVFUSE_VERSION "dev"
#endif

namespace evfuse {

namespace {

constexpr int kCsvDigits = 12;

std::string cell(double v) { return std::isfinite(v) ? detail::format_g(v, kCsvDigits) : std::string(); }

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string summary_csv(const ExperimentConfig& config, const MonteCarloSummary& summary) {
  const auto& labels = config.labels;
  const std::size_t cols = labels.size() + 2;  // singleton masses, m(Theta), correct rate
  std::string out = "scan,truth,truth_index";
  for (FusionRule rule : kAllRules) {
    const std::string r(to_string(rule));
    for (const auto& l : labels) out += "," + r + "_m_" + l;
    out += "," + r + "_m_Theta," + r + "_correct_rate";
  }
  out += '\n';
  for (std::size_t k = 0; k < summary.truth.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    out += std::to_string(k + 1) + "," + labels.at(summary.truth[k]) + "," + std::to_string(summary.truth[k]);
    for (FusionRule rule : kAllRules) {
      const RuleSummary* rs = summary.find(rule);
      if (rs == nullptr) {
        out += std::string(cols, ',');
        continue;
      }
      for (Eigen::Index c = 0; c < rs->mean_masses.cols(); ++c) out += "," + cell(rs->mean_masses(row, c));
      out += "," + cell(rs->correct_rate(row));
    }
    out += '\n';
  }
  return out;
}

std::string latency_csv(const ExperimentConfig& config, const MonteCarloSummary& summary) {
  const Scenario scenario = config.scenario();
  std::string out = "switch,scan,from,to,window";
  for (FusionRule rule : kAllRules) {
    const std::string r(to_string(rule));
    out += "," + r + "_mean," + r + "_median," + r + "_censor_rate";
  }
  out += '\n';
  const auto switches = scenario.switches();
  for (std::size_t s = 0; s < switches.size(); ++s) {
    const Switch& sw = switches[s];
    out += std::to_string(s + 1) + "," + std::to_string(sw.scan) + "," + config.labels.at(sw.from) + "," +
           config.labels.at(sw.to) + "," + std::to_string(sw.window);
    for (FusionRule rule : kAllRules) {
      const RuleSummary* rs = summary.find(rule);
      if (rs == nullptr || !rs->usable()) {
        out += ",,,";
        continue;
      }
      const LatencyStats& st = rs->latency.at(s);
      out += "," + cell(st.mean) + "," + cell(st.median) + "," + cell(st.censor_rate());
    }
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_config_text(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string meta_text(const ExperimentConfig& config, const MonteCarloSummary& summary) {
  std::string out;
  out += "# ttt_sim " EVFUSE_VERSION "\n";
  out += "# generator = " + std::string(kGeneratorId) + "\n";
  out += "# config_hash = " + hex64(config_hash(config)) + "\n";
  out += "# master_seed = " + std::to_string(summary.master_seed) + "\n";
  for (const auto& rs : summary.rules)
    out += "# " + std::string(to_string(rs.rule)) + ": runs_used = " + std::to_string(rs.runs_used) +
           ", failures = " + std::to_string(rs.failures) + "\n";
  out += to_config_text(config);
  return out;
}

std::string plot_script(const ExperimentConfig& config) {
  const std::size_t m = config.labels.size();
  // Column of rule r's mass on label i in summary.csv (1-based).
  auto column = [m](std::size_t rule_slot, std::size_t i) { return 4 + rule_slot * (m + 2) + i; };
  std::string out;
  out += "# gnuplot script; run from the directory holding summary.csv\n";
  out += "set datafile separator ','\n";
  out += "set terminal pngcairo size 900,500\n";
  out += "set xlabel 'scan'\nset ylabel 'mean belief mass'\n";
  out += "set yrange [-0.02:1.05]\nset key outside right\nset grid\n";
  for (std::size_t i = 0; i < m; ++i) {
    const std::string& label = config.labels[i];
    out += "\nset output 'mass_" + label + ".png'\n";
    out += "set title 'Belief mass for " + label + " type'\n";
    out += "plot ";
    std::size_t slot = 0;
    for (FusionRule rule : kAllRules) {
      bool ran = false;
      for (FusionRule r : config.rules) ran = ran || r == rule;
      if (ran) {
        out += "'summary.csv' every ::1 using 1:" + std::to_string(column(slot, i)) + " with linespoints title '" +
               (rule == FusionRule::Dempster ? "Dempster" : "PCR5") + "', \\\n     ";
      }
      ++slot;
    }
    out += "'summary.csv' every ::1 using 1:($3 == " + std::to_string(i) +
           " ? 1 : 0) with steps lw 2 title 'ground truth'\n";
  }
  return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  ExperimentOutcome outcome;
  try {
    validate(config);
  } catch (const Error& e) {
    outcome.code = ExitCode::Validation;
    outcome.message = e.what();
    return outcome;
  }

  try {
    outcome.summary = run_monte_carlo(config.scenario(), config.confusion(), config.rules, config.runs, config.seed,
                                      config.criterion, config.threads);
  } catch (const Error& e) {
    outcome.code = ExitCode::Runtime;
    outcome.message = e.what();
    return outcome;
  }

  try {
    const std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    write_file(dir / "summary.csv", summary_csv(config, outcome.summary));
    write_file(dir / "latency.csv", latency_csv(config, outcome.summary));
    write_file(dir / "meta.txt", meta_text(config, outcome.summary));
    write_file(dir / "plot.gp", plot_script(config));
  } catch (const IoError& e) {
    outcome.code = ExitCode::Io;
    outcome.message = e.what();
    return outcome;
  }

  for (const auto& rs : outcome.summary.rules) {
    if (!rs.usable()) {
      outcome.code = ExitCode::Runtime;
      outcome.message = "rule " + std::string(to_string(rs.rule)) + " failed in all " + std::to_string(rs.failures) +
                        " runs";
      return outcome;
    }
  }
  return outcome;
}

}  // namespace evfuse
