#include "evfuse/fusion.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "evfuse/error.hpp"

namespace evfuse {

namespace {

bool focal_less(const Bba& a, const Bba& b) {
  auto fa = a.focal_elements();
  auto fb = b.focal_elements();
  return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end(),
                                      [](const FocalElement& x, const FocalElement& y) {
                                        return x.set != y.set ? x.set < y.set : x.mass < y.mass;
                                      });
}

// Both rules are symmetric in their arguments. Visiting the pair in a
// canonical order makes the floating-point accumulation order symmetric too,
// so combine(a, b) and combine(b, a) agree bit for bit.
std::pair<const Bba*, const Bba*> canonical_order(const Bba& m1, const Bba& m2) {
  if (focal_less(m2, m1)) return {&m2, &m1};
  return {&m1, &m2};
}

}  // namespace

std::string_view to_string(FusionRule rule) noexcept {
  switch (rule) {
    case FusionRule::Dempster:
      return "dempster";
    case FusionRule::Pcr5:
      return "pcr5";
  }
  return "unknown";
}

FusionRule parse_rule(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "dempster") return FusionRule::Dempster;
  if (lower == "pcr5") return FusionRule::Pcr5;
  throw ValidationError("unknown fusion rule '" + std::string(text) + "' (expected dempster or pcr5)");
}

double Conjunction::mass(Mask set) const {
  auto it = masses.find(set);
  return it == masses.end() ? 0.0 : it->second;
}

Conjunction conjunctive(const Bba& m1, const Bba& m2) {
  require_same_frame(m1.frame(), m2.frame(), "conjunctive consensus");
  auto [a, b] = canonical_order(m1, m2);
  Conjunction out{a->frame(), {}, {}};
  out.masses[0] = 0.0;
  for (const auto& x : a->focal_elements()) {
    for (const auto& y : b->focal_elements()) {
      const double product = x.mass * y.mass;
      const Mask meet = x.set & y.set;
      out.masses[meet] += product;
      if (meet == 0) {
        out.conflict.partial[{std::min(x.set, y.set), std::max(x.set, y.set)}] += product;
        out.conflict.total += product;
      }
    }
  }
  return out;
}

double total_conflict(const Bba& m1, const Bba& m2) {
  require_same_frame(m1.frame(), m2.frame(), "total conflict");
  double k = 0.0;
  for (const auto& x : m1.focal_elements())
    for (const auto& y : m2.focal_elements())
      if ((x.set & y.set) == 0) k += x.mass * y.mass;
  return k;
}

Bba dempster(const Bba& m1, const Bba& m2) {
  require_same_frame(m1.frame(), m2.frame(), "dempster");
  auto [a, b] = canonical_order(m1, m2);
  std::vector<FocalElement> consensus;
  consensus.reserve(a->size() * b->size());
  double conflict = 0.0;
  double agreement = 0.0;
  for (const auto& x : a->focal_elements()) {
    for (const auto& y : b->focal_elements()) {
      const double product = x.mass * y.mass;
      const Mask meet = x.set & y.set;
      if (meet == 0) {
        conflict += product;
      } else {
        consensus.push_back({meet, product});
        agreement += product;
      }
    }
  }
  // agreement equals 1 - k12 but keeps the low-order digits that the
  // subtraction would cancel.
  if (agreement <= kTotalConflictGuard) throw TotalConflictError(conflict);
  return Bba::from_masses(a->frame(), std::move(consensus));
}

Bba pcr5(const Bba& m1, const Bba& m2) {
  require_same_frame(m1.frame(), m2.frame(), "pcr5");
  auto [a, b] = canonical_order(m1, m2);
  std::vector<FocalElement> out;
  out.reserve(2 * a->size() * b->size());
  for (const auto& x : a->focal_elements()) {
    for (const auto& y : b->focal_elements()) {
      const Mask meet = x.set & y.set;
      if (meet != 0) {
        out.push_back({meet, x.mass * y.mass});
        continue;
      }
      const double denominator = x.mass + y.mass;
      if (denominator < kDiscardDenominator) continue;
      const double ratio = x.mass * y.mass / denominator;
      out.push_back({x.set, x.mass * ratio});
      out.push_back({y.set, y.mass * ratio});
    }
  }
  return Bba::from_masses(a->frame(), std::move(out));
}

Bba combine(FusionRule rule, const Bba& m1, const Bba& m2) {
  switch (rule) {
    case FusionRule::Dempster:
      return dempster(m1, m2);
    case FusionRule::Pcr5:
      return pcr5(m1, m2);
  }
  throw ValidationError("unknown fusion rule");
}

Bba fold(FusionRule rule, const Bba& prior, std::span<const Bba> observations) {
  Bba acc = prior;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    try {
      acc = combine(rule, acc, observations[i]);
    } catch (const TotalConflictError& e) {
      throw TotalConflictError(e.conflict(), i + 1);
    }
  }
  return acc;
}

}  // namespace evfuse
