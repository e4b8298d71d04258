#ifndef EVFUSE_CONFIG_HPP
#define EVFUSE_CONFIG_HPP

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evfuse/simulation.hpp"

namespace evfuse {

/// Fully resolved experiment description.
///
/// `classifier` is "c1", "c2" or "custom"; `matrix` always holds the resolved
/// confusion matrix and `segments` the resolved scenario, so a config can be
/// echoed and re-read without access to the files it was loaded from.
struct ExperimentConfig {
  std::vector<std::string> labels{"Fighter", "Cargo"};
  std::string classifier = "c1";
  Eigen::MatrixXd matrix;
  std::vector<Segment> segments;
  std::vector<FusionRule> rules{FusionRule::Dempster, FusionRule::Pcr5};
  std::size_t runs = 1000;
  std::uint64_t seed = 20060701;
  DecisionCriterion criterion = DecisionCriterion::MaxBelief;
  std::string out_dir = "ttt_out";
  std::size_t threads = 1;

  Frame frame() const { return Frame(labels); }
  ConfusionMatrix confusion() const { return ConfusionMatrix(frame(), matrix); }
  Scenario scenario() const { return build_scenario(frame(), segments); }

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

/// Defaults: builtin c1, the 120-scan default scenario, 1000 runs, both
/// rules, max-belief decisions.
ExperimentConfig default_config();

/// Confusion matrix file: first line holds the frame labels, then one
/// whitespace-separated row of probabilities per line.
struct MatrixFile {
  std::vector<std::string> labels;
  Eigen::MatrixXd matrix;
};
MatrixFile parse_matrix_file(std::string_view text);

/// Scenario file: one "label duration" pair per line.
std::vector<Segment> parse_scenario_text(std::string_view text, const std::vector<std::string>& labels);

/// Applies "key = value" lines on top of `base`. Keys: labels, classifier,
/// matrix, scenario, segments, runs, seed, rule, criterion, out, threads.
/// Relative file paths resolve against `base_dir`. Errors carry the line.
ExperimentConfig apply_config_text(ExperimentConfig base, std::string_view text,
                                   const std::filesystem::path& base_dir = {});

/// Single-key update shared by the file parser and the command line.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir = {});

/// Canonical "key = value" echo; apply_config_text(default_config(), echo)
/// reproduces the config.
std::string to_config_text(const ExperimentConfig& config);

/// Throws ValidationError when the pieces do not fit together.
void validate(const ExperimentConfig& config);

std::string read_file(const std::filesystem::path& path);

}  // namespace evfuse

#endif  // EVFUSE_CONFIG_HPP
