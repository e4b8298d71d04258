#ifndef EVFUSE_SIMULATION_HPP
#define EVFUSE_SIMULATION_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "evfuse/fusion.hpp"
#include "evfuse/tracker.hpp"

namespace evfuse {

struct Segment {
  std::size_t type;
  std::size_t duration;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// First scan of a new segment. `scan` is 1-based; `window` is the length of
/// the segment it opens, which caps the latency measurement.
struct Switch {
  std::size_t scan;
  std::size_t from;
  std::size_t to;
  std::size_t window;
};

class Scenario {
 public:
  const Frame& frame() const noexcept { return frame_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t scans() const noexcept { return scans_; }

  /// Ground-truth type per scan; element k-1 is T(k).
  std::vector<std::size_t> truth() const;
  std::vector<Switch> switches() const;

 private:
  friend Scenario build_scenario(const Frame&, std::vector<Segment>, std::optional<std::size_t>);
  Scenario(Frame frame, std::vector<Segment> segments, std::size_t scans)
      : frame_(std::move(frame)), segments_(std::move(segments)), scans_(scans) {}

  Frame frame_;
  std::vector<Segment> segments_;
  std::size_t scans_;
};

/// Throws ValidationError for an empty list, a zero duration, a type outside
/// the frame, equal adjacent types, or durations not summing to `scans`.
Scenario build_scenario(const Frame& frame, std::vector<Segment> segments,
                        std::optional<std::size_t> scans = std::nullopt);

/// Frame {Fighter, Cargo}.
Frame fighter_cargo_frame();

/// 120 scans starting on Cargo, with Fighter intrusions of 20, 10 and 5 scans:
/// C x20, F x20, C x30, F x10, C x25, F x5, C x10.
Scenario default_scenario();

/// Builtin two-class classifiers: "c1" (0.95 diagonal) and "c2" (0.75).
ConfusionMatrix builtin_classifier(std::string_view name, const Frame& frame);

/// Recorded in run metadata; bump when the sampling stream changes.
inline constexpr std::string_view kGeneratorId = "mt19937_64+splitmix64/v1";

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept;

/// Per-run sampling stream. Uniform variates use the top 53 bits of the
/// engine output so the stream does not depend on the standard library.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Categorical draw from row `true_type` of the confusion matrix.
Declaration sample_declaration(std::size_t scan, std::size_t true_type, const ConfusionMatrix& cm, SampleStream& rng);

/// Decision slot of a scan the tracker never reached.
inline constexpr std::size_t kNoDecision = static_cast<std::size_t>(-1);

struct RuleRun {
  FusionRule rule;
  /// scans x (M + 1): singleton masses then m(Theta). Rows from the failing
  /// scan on are NaN.
  Eigen::MatrixXd masses;
  /// kNoDecision from the failing scan on.
  std::vector<std::size_t> decisions;
  /// 1-based scan at which Dempster normalization failed.
  std::optional<std::size_t> failed_at;

  bool failed() const noexcept { return failed_at.has_value(); }
};

struct RunResult {
  std::vector<std::size_t> truth;
  std::vector<Declaration> declarations;
  std::vector<RuleRun> rules;

  const RuleRun* find(FusionRule rule) const;
};

/// Every requested rule consumes the same declaration sequence. A rule
/// failure is recorded in its RuleRun; the other rules keep going.
RunResult run_single(const Scenario& scenario, const ConfusionMatrix& cm, std::span<const FusionRule> rules,
                     std::uint64_t seed, DecisionCriterion criterion = DecisionCriterion::MaxBelief);

/// Latency of one switch in one run: first d >= 0 with decision(scan + d) equal
/// to the new type, or `censored` when no such d < window exists (value = window).
struct SwitchLatency {
  Switch at;
  std::size_t value;
  bool censored;
};

struct RuleLatency {
  FusionRule rule;
  std::vector<SwitchLatency> switches;
};

/// Failed rule runs are skipped.
std::vector<RuleLatency> switch_latency(const RunResult& run, const Scenario& scenario);

struct LatencyStats {
  Switch at;
  std::size_t samples = 0;
  std::size_t censored = 0;
  /// Mean over uncensored samples; NaN when every sample is censored.
  double mean = 0.0;
  /// Median with censored samples counted at the window length.
  double median = 0.0;
  double censor_rate() const { return samples == 0 ? 0.0 : static_cast<double>(censored) / samples; }
};

struct RuleSummary {
  FusionRule rule;
  std::size_t runs_used = 0;
  std::size_t failures = 0;
  /// scans x (M + 1) mean masses over non-failed runs.
  Eigen::MatrixXd mean_masses;
  /// Fraction of non-failed runs whose decision matched the truth, per scan.
  Eigen::VectorXd correct_rate;
  std::vector<LatencyStats> latency;

  bool usable() const noexcept { return runs_used > 0; }
  /// Mean of correct_rate over scans [first, first + count), 1-based.
  double correct_rate_over(std::size_t first, std::size_t count) const;
};

struct MonteCarloSummary {
  std::size_t runs = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::size_t> truth;
  std::vector<RuleSummary> rules;

  const RuleSummary* find(FusionRule rule) const;
};

/// Runs are seeded with run_seed(master_seed, i) and reduced in run order, so
/// the result does not depend on `threads`. Throws ValidationError when
/// n_runs == 0 or no rule is requested.
MonteCarloSummary run_monte_carlo(const Scenario& scenario, const ConfusionMatrix& cm,
                                  std::span<const FusionRule> rules, std::size_t n_runs, std::uint64_t master_seed,
                                  DecisionCriterion criterion = DecisionCriterion::MaxBelief, std::size_t threads = 1);

}  // namespace evfuse

#endif  // EVFUSE_SIMULATION_HPP
