#ifndef EVFUSE_BELIEF_HPP
#define EVFUSE_BELIEF_HPP

#include <Eigen/Core>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evfuse/frame.hpp"
#include "evfuse/proposition.hpp"

namespace evfuse {

/// Focal elements with less mass than this are pruned. Only zero and
/// subnormal masses are dropped: sequential Dempster fusion keeps minority
/// hypotheses alive at magnitudes around 1e-25, and flushing them would
/// freeze the posterior.
inline constexpr double kMassFloor = std::numeric_limits<double>::min();

/// Accepted |sum - 1| for user-supplied masses before renormalization.
inline constexpr double kInputSumTolerance = 1e-6;

struct FocalElement {
  Mask set;
  double mass;

  friend bool operator==(const FocalElement&, const FocalElement&) = default;
};

/// Normalized basic belief assignment over 2^Theta.
///
/// Focal elements are kept sorted by mask with no duplicates, no empty set,
/// and no mass below kMassFloor; masses sum to one at machine precision.
class Bba {
 public:
  /// Trusted construction path used by the combination rules: merges
  /// duplicate sets, drops the empty set and sub-floor masses, renormalizes.
  /// Throws ValidationError when nothing positive remains.
  static Bba from_masses(const Frame& frame, std::vector<FocalElement> masses);

  const Frame& frame() const noexcept { return frame_; }
  std::span<const FocalElement> focal_elements() const noexcept { return focal_; }
  std::size_t size() const noexcept { return focal_.size(); }

  double mass(Mask set) const noexcept;
  double mass(const Proposition& p) const;

  friend bool operator==(const Bba& a, const Bba& b) { return a.focal_ == b.focal_ && a.frame_ == b.frame_; }

 private:
  Bba(Frame frame, std::vector<FocalElement> focal) : frame_(std::move(frame)), focal_(std::move(focal)) {}

  Frame frame_;
  std::vector<FocalElement> focal_;
};

using MassAssignment = std::pair<Proposition, double>;

/// Validating constructor for user input. Duplicate propositions are summed.
/// Throws ValidationError for negative or non-finite masses, an empty-set
/// key, or a total outside 1 +- kInputSumTolerance; FrameMismatchError when
/// a proposition belongs to another frame.
Bba make_bba(const Frame& frame, std::span<const MassAssignment> assignments);
Bba make_bba(const Frame& frame, std::initializer_list<MassAssignment> assignments);

/// Total ignorance: m(Theta) = 1.
Bba vacuous(const Frame& frame);

/// Sum of m(Y) over focal Y contained in x. Bel(empty) = 0.
double belief(const Bba& bba, const Proposition& x);

/// Sum of m(Y) over focal Y meeting x. Pl(empty) = 0.
double plausibility(const Bba& bba, const Proposition& x);

/// BetP(theta) = sum over focal X containing theta of m(X) / |X|.
Eigen::VectorXd pignistic(const Bba& bba);

/// Singleton beliefs Bel(theta_i) as a vector indexed by frame position.
Eigen::VectorXd singleton_beliefs(const Bba& bba);

/// Classical reliability discounting: m'(X) = alpha m(X) for X != Theta,
/// the remainder goes to Theta. Throws ValidationError unless 0 <= alpha <= 1.
Bba discount(const Bba& bba, double alpha);

/// One focal element per line, "proposition<TAB>mass", 17 significant digits.
std::string to_text(const Bba& bba);

/// Inverse of to_text; blank lines and '#' comments are skipped. Goes through
/// make_bba, so the same validation applies.
Bba parse_bba(const Frame& frame, std::string_view text);

}  // namespace evfuse

#endif  // EVFUSE_BELIEF_HPP
