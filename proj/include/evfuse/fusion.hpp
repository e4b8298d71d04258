#ifndef EVFUSE_FUSION_HPP
#define EVFUSE_FUSION_HPP

#include <map>
#include <span>
#include <string_view>
#include <utility>

#include "evfuse/belief.hpp"

namespace evfuse {

/// Dempster normalization is refused when 1 - k12 falls to this value.
inline constexpr double kTotalConflictGuard = 1e-12;

/// PCR5 proportional fractions with a smaller denominator are discarded.
inline constexpr double kDiscardDenominator = 1e-15;

enum class FusionRule { Dempster, Pcr5 };

inline constexpr FusionRule kAllRules[] = {FusionRule::Dempster, FusionRule::Pcr5};

std::string_view to_string(FusionRule rule) noexcept;

/// Accepts "dempster" and "pcr5" (case-insensitive).
FusionRule parse_rule(std::string_view text);

struct ConflictReport {
  double total = 0.0;
  /// Keyed by the unordered pair (min mask, max mask) of disjoint focal sets.
  std::map<std::pair<Mask, Mask>, double> partial;
};

/// Unnormalized conjunctive consensus; the key 0 holds the conflicting mass.
struct Conjunction {
  Frame frame;
  std::map<Mask, double> masses;
  ConflictReport conflict;

  double mass(Mask set) const;
};

Conjunction conjunctive(const Bba& m1, const Bba& m2);

/// k12, the mass the conjunctive consensus puts on the empty set.
double total_conflict(const Bba& m1, const Bba& m2);

/// Normalized conjunctive consensus. Throws TotalConflictError when
/// 1 - k12 <= kTotalConflictGuard.
Bba dempster(const Bba& m1, const Bba& m2);

/// Proportional conflict redistribution (two sources, Shafer's model): each
/// partial conflict m1(X) m2(Y), X & Y = {}, is split back onto X and Y in
/// proportion to m1(X) and m2(Y). Defined for any conflict level.
Bba pcr5(const Bba& m1, const Bba& m2);

Bba combine(FusionRule rule, const Bba& m1, const Bba& m2);

/// Left fold of `observations` onto `prior` in arrival order. A
/// TotalConflictError is rethrown with the 1-based index of the failing step.
Bba fold(FusionRule rule, const Bba& prior, std::span<const Bba> observations);

}  // namespace evfuse

#endif  // EVFUSE_FUSION_HPP
