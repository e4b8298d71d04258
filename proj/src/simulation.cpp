#include "evfuse/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "evfuse/error.hpp"

namespace evfuse {

std::vector<std::size_t> Scenario::truth() const {
  std::vector<std::size_t> out;
  out.reserve(scans_);
  for (const auto& s : segments_) out.insert(out.end(), s.duration, s.type);
  return out;
}

std::vector<Switch> Scenario::switches() const {
  std::vector<Switch> out;
  std::size_t scan = 1;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i > 0) out.push_back({scan, segments_[i - 1].type, segments_[i].type, segments_[i].duration});
    scan += segments_[i].duration;
  }
  return out;
}

Scenario build_scenario(const Frame& frame, std::vector<Segment> segments, std::optional<std::size_t> scans) {
  if (segments.empty()) throw ValidationError("scenario needs at least one segment");
  std::size_t total = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    const std::string where = "segment " + std::to_string(i + 1);
    if (s.duration == 0) throw ValidationError(where + " has zero duration");
    if (s.type >= frame.size()) throw ValidationError(where + " has type index outside the frame");
    if (i > 0 && segments[i - 1].type == s.type)
      throw ValidationError(where + " repeats the type of the previous segment (" + frame.label(s.type) + ")");
    total += s.duration;
  }
  if (scans && *scans != total)
    throw ValidationError("segment durations sum to " + std::to_string(total) + ", expected " + std::to_string(*scans));
  return Scenario(frame, std::move(segments), total);
}

Frame fighter_cargo_frame() { return Frame({"Fighter", "Cargo"}); }

Scenario default_scenario() {
  constexpr std::size_t fighter = 0;
  constexpr std::size_t cargo = 1;
  return build_scenario(fighter_cargo_frame(),
                        {{cargo, 20}, {fighter, 20}, {cargo, 30}, {fighter, 10}, {cargo, 25}, {fighter, 5}, {cargo, 10}},
                        120);
}

ConfusionMatrix builtin_classifier(std::string_view name, const Frame& frame) {
  double hit = 0.0, miss = 0.0;
  if (name == "c1")
    hit = 0.95, miss = 0.05;
  else if (name == "c2")
    hit = 0.75, miss = 0.25;
  else
    throw ValidationError("unknown builtin classifier '" + std::string(name) + "' (expected c1 or c2)");
  if (frame.size() != 2) throw ValidationError("builtin classifiers are defined for two-type frames only");
  Eigen::MatrixXd c(2, 2);
  c << hit, miss, miss, hit;
  return ConfusionMatrix(frame, std::move(c));
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
  return splitmix64(master_seed ^ splitmix64(run_index));
}

Declaration sample_declaration(std::size_t scan, std::size_t true_type, const ConfusionMatrix& cm, SampleStream& rng) {
  const double u = rng.uniform();
  const std::size_t n = cm.size();
  double cumulative = 0.0;
  std::size_t last_possible = true_type;
  for (std::size_t j = 0; j < n; ++j) {
    const double p = cm(true_type, j);
    if (p <= 0.0) continue;
    cumulative += p;
    last_possible = j;
    if (u < cumulative) return {scan, j};
  }
  // Row sums may fall a few ulps short of 1.
  return {scan, last_possible};
}

const RuleRun* RunResult::find(FusionRule rule) const {
  for (const auto& r : rules)
    if (r.rule == rule) return &r;
  return nullptr;
}

RunResult run_single(const Scenario& scenario, const ConfusionMatrix& cm, std::span<const FusionRule> rules,
                     std::uint64_t seed, DecisionCriterion criterion) {
  if (rules.empty()) throw ValidationError("at least one fusion rule is required");
  require_same_frame(scenario.frame(), cm.frame(), "run_single");
  RunResult result;
  result.truth = scenario.truth();
  const std::size_t scans = scenario.scans();
  const auto m = static_cast<Eigen::Index>(scenario.frame().size());

  SampleStream rng(seed);
  result.declarations.reserve(scans);
  for (std::size_t k = 0; k < scans; ++k)
    result.declarations.push_back(sample_declaration(k + 1, result.truth[k], cm, rng));

  for (FusionRule rule : rules) {
    RuleRun run{rule, Eigen::MatrixXd(static_cast<Eigen::Index>(scans), m + 1), std::vector<std::size_t>(scans, kNoDecision),
                std::nullopt};
    TrackerState state = init_tracker(scenario.frame(), rule, criterion);
    for (std::size_t k = 0; k < scans; ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      try {
        StepResult r = step(state, result.declarations[k], cm);
        for (Eigen::Index i = 0; i < m; ++i) run.masses(row, i) = r.posterior.mass(singleton_mask(static_cast<std::size_t>(i)));
        run.masses(row, m) = r.posterior.mass(scenario.frame().full());
        run.decisions[k] = r.decision;
        state = std::move(r.state);
      } catch (const TotalConflictError& e) {
        run.failed_at = e.step().value_or(k + 1);
        run.masses.bottomRows(static_cast<Eigen::Index>(scans - k)).setConstant(std::numeric_limits<double>::quiet_NaN());
        break;
      }
    }
    result.rules.push_back(std::move(run));
  }
  return result;
}

std::vector<RuleLatency> switch_latency(const RunResult& run, const Scenario& scenario) {
  const auto switches = scenario.switches();
  std::vector<RuleLatency> out;
  for (const auto& r : run.rules) {
    if (r.failed()) continue;
    RuleLatency rl{r.rule, {}};
    for (const auto& sw : switches) {
      SwitchLatency lat{sw, sw.window, true};
      for (std::size_t d = 0; d < sw.window; ++d) {
        if (r.decisions[sw.scan - 1 + d] == sw.to) {
          lat.value = d;
          lat.censored = false;
          break;
        }
      }
      rl.switches.push_back(lat);
    }
    out.push_back(std::move(rl));
  }
  return out;
}

double RuleSummary::correct_rate_over(std::size_t first, std::size_t count) const {
  if (first == 0 || count == 0 || first - 1 + count > static_cast<std::size_t>(correct_rate.size()))
    throw ValidationError("scan window outside the scenario");
  return correct_rate.segment(static_cast<Eigen::Index>(first - 1), static_cast<Eigen::Index>(count)).mean();
}

const RuleSummary* MonteCarloSummary::find(FusionRule rule) const {
  for (const auto& r : rules)
    if (r.rule == rule) return &r;
  return nullptr;
}

namespace {

// Runs [first, first + results.size()) in parallel, each into its own slot.
void run_block(const Scenario& scenario, const ConfusionMatrix& cm, std::span<const FusionRule> rules,
               std::uint64_t master_seed, DecisionCriterion criterion, std::size_t first,
               std::vector<RunResult>& results, std::size_t threads) {
  const std::size_t n = results.size();
  auto work = [&](std::size_t lane, std::size_t lanes) {
    for (std::size_t i = lane; i < n; i += lanes)
      results[i] = run_single(scenario, cm, rules, run_seed(master_seed, first + i), criterion);
  };
  if (threads <= 1 || n <= 1) {
    work(0, 1);
    return;
  }
  const std::size_t lanes = std::min(threads, n);
  std::vector<std::exception_ptr> errors(lanes);
  std::vector<std::thread> pool;
  pool.reserve(lanes);
  for (std::size_t t = 0; t < lanes; ++t) {
    pool.emplace_back([&, t] {
      try {
        work(t, lanes);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double median(std::vector<std::size_t> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return static_cast<double>(values[mid]);
  return 0.5 * static_cast<double>(values[mid - 1] + values[mid]);
}

}  // namespace

MonteCarloSummary run_monte_carlo(const Scenario& scenario, const ConfusionMatrix& cm,
                                  std::span<const FusionRule> rules, std::size_t n_runs, std::uint64_t master_seed,
                                  DecisionCriterion criterion, std::size_t threads) {
  if (n_runs == 0) throw ValidationError("Monte-Carlo needs at least one run");
  if (rules.empty()) throw ValidationError("at least one fusion rule is required");
  require_same_frame(scenario.frame(), cm.frame(), "run_monte_carlo");

  const auto scans = static_cast<Eigen::Index>(scenario.scans());
  const auto cols = static_cast<Eigen::Index>(scenario.frame().size()) + 1;
  const auto switches = scenario.switches();

  MonteCarloSummary summary;
  summary.runs = n_runs;
  summary.master_seed = master_seed;
  summary.truth = scenario.truth();

  struct Accumulator {
    Eigen::MatrixXd mass_sum;
    Eigen::VectorXd correct;
    std::size_t used = 0;
    std::size_t failures = 0;
    std::vector<std::vector<std::size_t>> latencies;
    std::vector<std::size_t> censored;
  };
  std::vector<Accumulator> acc(rules.size());
  for (auto& a : acc) {
    a.mass_sum = Eigen::MatrixXd::Zero(scans, cols);
    a.correct = Eigen::VectorXd::Zero(scans);
    a.latencies.resize(switches.size());
    a.censored.assign(switches.size(), 0);
  }

  constexpr std::size_t kBlock = 256;
  std::vector<RunResult> block;
  for (std::size_t first = 0; first < n_runs; first += kBlock) {
    block.assign(std::min(kBlock, n_runs - first), RunResult{});
    run_block(scenario, cm, rules, master_seed, criterion, first, block, threads);
    // Reduction in run-index order keeps the sums independent of threading.
    for (const RunResult& run : block) {
      const auto lat = switch_latency(run, scenario);
      for (std::size_t r = 0; r < rules.size(); ++r) {
        const RuleRun& rr = run.rules[r];
        Accumulator& a = acc[r];
        if (rr.failed()) {
          ++a.failures;
          continue;
        }
        ++a.used;
        a.mass_sum += rr.masses;
        for (Eigen::Index k = 0; k < scans; ++k)
          if (rr.decisions[static_cast<std::size_t>(k)] == summary.truth[static_cast<std::size_t>(k)]) a.correct(k) += 1.0;
        const auto it = std::find_if(lat.begin(), lat.end(), [&](const RuleLatency& l) { return l.rule == rr.rule; });
        for (std::size_t s = 0; s < switches.size(); ++s) {
          a.latencies[s].push_back(it->switches[s].value);
          if (it->switches[s].censored) ++a.censored[s];
        }
      }
    }
  }

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t r = 0; r < rules.size(); ++r) {
    Accumulator& a = acc[r];
    RuleSummary rs;
    rs.rule = rules[r];
    rs.runs_used = a.used;
    rs.failures = a.failures;
    if (a.used > 0) {
      const double n = static_cast<double>(a.used);
      rs.mean_masses = a.mass_sum / n;
      rs.correct_rate = a.correct / n;
    } else {
      rs.mean_masses = Eigen::MatrixXd::Constant(scans, cols, nan);
      rs.correct_rate = Eigen::VectorXd::Constant(scans, nan);
    }
    for (std::size_t s = 0; s < switches.size(); ++s) {
      LatencyStats st;
      st.at = switches[s];
      st.samples = a.latencies[s].size();
      st.censored = a.censored[s];
      const std::size_t uncensored = st.samples - st.censored;
      if (uncensored > 0) {
        double sum = 0.0;
        for (std::size_t v : a.latencies[s])
          if (v < switches[s].window) sum += static_cast<double>(v);
        st.mean = sum / static_cast<double>(uncensored);
      } else {
        st.mean = nan;
      }
      st.median = median(a.latencies[s]);
      rs.latency.push_back(st);
    }
    summary.rules.push_back(std::move(rs));
  }
  return summary;
}

}  // namespace evfuse
