#include "evfuse/tracker.hpp"

#include <cmath>
#include <string>

#include "evfuse/error.hpp"

namespace evfuse {

namespace {
constexpr double kRowSumTolerance = 1e-9;
}

ConfusionMatrix::ConfusionMatrix(Frame frame, Eigen::MatrixXd rows) : frame_(std::move(frame)), rows_(std::move(rows)) {
  const auto n = static_cast<Eigen::Index>(frame_.size());
  if (rows_.rows() != n || rows_.cols() != n)
    throw ValidationError("confusion matrix is " + std::to_string(rows_.rows()) + "x" + std::to_string(rows_.cols()) +
                          ", frame needs " + std::to_string(n) + "x" + std::to_string(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double c = rows_(i, j);
      if (!(c >= 0.0 && c <= 1.0))
        throw ValidationError("confusion entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                              ") = " + std::to_string(c) + " outside [0, 1]");
    }
    const double sum = rows_.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTolerance)
      throw ValidationError("confusion row " + std::to_string(i + 1) + " (" + frame_.label(static_cast<std::size_t>(i)) +
                            ") sums to " + std::to_string(sum));
  }
}

ConfusionMatrix ConfusionMatrix::identity(const Frame& frame) {
  const auto n = static_cast<Eigen::Index>(frame.size());
  return ConfusionMatrix(frame, Eigen::MatrixXd::Identity(n, n));
}

std::string_view to_string(DecisionCriterion criterion) noexcept {
  return criterion == DecisionCriterion::MaxBelief ? "belief" : "pignistic";
}

DecisionCriterion parse_criterion(std::string_view text) {
  if (text == "belief") return DecisionCriterion::MaxBelief;
  if (text == "pignistic") return DecisionCriterion::MaxPignistic;
  throw ValidationError("unknown decision criterion '" + std::string(text) + "' (expected belief or pignistic)");
}

TrackerState init_tracker(const Frame& frame, FusionRule rule, DecisionCriterion criterion) {
  return TrackerState{frame, rule, vacuous(frame), criterion, std::nullopt, 0};
}

Bba observation_bba(const Declaration& declaration, const ConfusionMatrix& cm) {
  const Frame& frame = cm.frame();
  if (declaration.type >= frame.size())
    throw ValidationError("declared type " + std::to_string(declaration.type) + " outside frame of size " +
                          std::to_string(frame.size()));
  const double hit = cm(declaration.type, declaration.type);
  if (!(hit >= 0.0 && hit <= 1.0)) throw ValidationError("confusion diagonal outside [0, 1]");
  return Bba::from_masses(frame, {{singleton_mask(declaration.type), hit}, {frame.full(), 1.0 - hit}});
}

std::size_t decide(const Bba& bba, DecisionCriterion criterion, std::optional<std::size_t> previous) {
  const Eigen::VectorXd score =
      criterion == DecisionCriterion::MaxBelief ? singleton_beliefs(bba) : pignistic(bba);
  const double cut = score.maxCoeff() - kDecisionTieTolerance;
  if (previous && *previous < static_cast<std::size_t>(score.size()) &&
      score(static_cast<Eigen::Index>(*previous)) >= cut)
    return *previous;
  for (Eigen::Index i = 0; i < score.size(); ++i)
    if (score(i) >= cut) return static_cast<std::size_t>(i);
  return 0;
}

StepResult step(const TrackerState& state, const Declaration& declaration, const ConfusionMatrix& cm) {
  require_same_frame(state.frame, cm.frame(), "tracker step");
  if (declaration.scan != state.scan + 1)
    throw SequencingError("tracker at scan " + std::to_string(state.scan) + " received declaration for scan " +
                          std::to_string(declaration.scan));
  const Bba observation = observation_bba(declaration, cm);
  Bba posterior = [&] {
    try {
      return combine(state.rule, state.prior, observation);
    } catch (const TotalConflictError& e) {
      throw TotalConflictError(e.conflict(), declaration.scan);
    }
  }();
  const std::size_t decision = decide(posterior, state.criterion, state.last_decision);
  TrackerState next{state.frame, state.rule, posterior, state.criterion, decision, declaration.scan};
  return StepResult{std::move(next), decision, std::move(posterior)};
}

TraceRecord make_trace(const StepResult& result, const Declaration& declaration) {
  const Bba& post = result.posterior;
  const auto m = static_cast<Eigen::Index>(post.frame().size());
  Eigen::VectorXd masses(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) masses(i) = post.mass(singleton_mask(static_cast<std::size_t>(i)));
  masses(m) = post.mass(post.frame().full());
  return TraceRecord{declaration.scan, declaration.type, result.state.rule, std::move(masses),
                     singleton_beliefs(post), result.decision};
}

}  // namespace evfuse
