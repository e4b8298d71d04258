#ifndef EVFUSE_TRACKER_HPP
#define EVFUSE_TRACKER_HPP

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <string_view>

#include "evfuse/belief.hpp"
#include "evfuse/fusion.hpp"

namespace evfuse {

/// Row-stochastic classifier model: (i, j) = P(declared j | true i).
class ConfusionMatrix {
 public:
  /// Throws ValidationError unless the matrix is square with the frame's
  /// dimension, entries lie in [0, 1] and every row sums to 1 +- 1e-9.
  ConfusionMatrix(Frame frame, Eigen::MatrixXd rows);

  static ConfusionMatrix identity(const Frame& frame);

  const Frame& frame() const noexcept { return frame_; }
  const Eigen::MatrixXd& matrix() const noexcept { return rows_; }
  double operator()(std::size_t true_type, std::size_t declared) const {
    return rows_(static_cast<Eigen::Index>(true_type), static_cast<Eigen::Index>(declared));
  }
  std::size_t size() const noexcept { return frame_.size(); }

 private:
  Frame frame_;
  Eigen::MatrixXd rows_;
};

enum class DecisionCriterion { MaxBelief, MaxPignistic };

std::string_view to_string(DecisionCriterion criterion) noexcept;
/// "belief" or "pignistic".
DecisionCriterion parse_criterion(std::string_view text);

/// Classifier output at scan k (1-based).
struct Declaration {
  std::size_t scan;
  std::size_t type;
};

struct TrackerState {
  Frame frame;
  FusionRule rule;
  Bba prior;
  DecisionCriterion criterion = DecisionCriterion::MaxBelief;
  std::optional<std::size_t> last_decision;
  std::size_t scan = 0;
};

/// Vacuous prior, scan 0, no decision.
TrackerState init_tracker(const Frame& frame, FusionRule rule,
                          DecisionCriterion criterion = DecisionCriterion::MaxBelief);

/// m(declared) = c(declared, declared), remaining mass on Theta. The
/// off-diagonal entries of the matrix are not used.
Bba observation_bba(const Declaration& declaration, const ConfusionMatrix& cm);

/// Scores closer than this count as tied, so posteriors that are equal in
/// exact arithmetic decide the same way whatever the rounding.
inline constexpr double kDecisionTieTolerance = 1e-12;

/// Arg-max over singletons of Bel (or BetP). Ties keep `previous` when it is
/// among the tied; otherwise the lowest tied index wins.
std::size_t decide(const Bba& bba, DecisionCriterion criterion, std::optional<std::size_t> previous = std::nullopt);

struct StepResult {
  TrackerState state;
  std::size_t decision;
  Bba posterior;
};

/// One scan of the tracker: fuse the prior with the observation bba, decide,
/// and hand back the advanced state.
///
/// Throws SequencingError unless declaration.scan == state.scan + 1, and
/// TotalConflictError (with step() = the scan) when Dempster's rule fails.
StepResult step(const TrackerState& state, const Declaration& declaration, const ConfusionMatrix& cm);

/// Per-scan trace row. `masses` holds the singleton masses in frame order
/// followed by m(Theta); tracker posteriors carry no other focal sets.
struct TraceRecord {
  std::size_t scan;
  std::size_t declared;
  FusionRule rule;
  Eigen::VectorXd masses;
  Eigen::VectorXd beliefs;
  std::size_t decision;
};

TraceRecord make_trace(const StepResult& result, const Declaration& declaration);

}  // namespace evfuse

#endif  // EVFUSE_TRACKER_HPP
