#ifndef EVFUSE_HYPER_HPP
#define EVFUSE_HYPER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evfuse/frame.hpp"

namespace evfuse {

/// Hyper-power-set support is exact enumeration; |D^Theta| grows as the
/// Dedekind numbers, so frames are capped at four singletons.
inline constexpr std::size_t kMaxHyperFrameSize = 4;

/// Pairwise exclusivity constraints theta_i & theta_j = {}.
///
/// The default-constructed value is the free model. `shafer()` declares every
/// pair exclusive, under which D^Theta collapses to 2^Theta.
class Exclusivity {
 public:
  Exclusivity() = default;
  Exclusivity(std::size_t frame_size, std::vector<std::pair<std::size_t, std::size_t>> pairs);

  static Exclusivity shafer(std::size_t frame_size);

  /// True when the intersection term touches an exclusive pair.
  bool kills(Mask term) const noexcept;
  bool is_free() const noexcept { return forbidden_.empty(); }

 private:
  std::vector<Mask> forbidden_;
};

/// Element of the hyper-power set D^Theta.
///
/// Stored as a union of intersection terms. Each term is a mask of singletons
/// read as their intersection; the term list is kept as a sorted antichain
/// (no term is a subset of another), which is a unique canonical form. The
/// empty term list is the empty element.
class HyperProposition {
 public:
  static HyperProposition empty(const Frame& frame);
  static HyperProposition singleton(const Frame& frame, std::size_t index);

  /// Canonicalizes an arbitrary term list. Throws CapacityError for frames
  /// wider than kMaxHyperFrameSize and ValidationError for empty terms or
  /// terms outside the frame.
  static HyperProposition from_terms(const Frame& frame, std::vector<Mask> terms,
                                     const Exclusivity& model = {});

  const Frame& frame() const noexcept { return frame_; }
  const std::vector<Mask>& terms() const noexcept { return terms_; }
  bool is_empty() const noexcept { return terms_.empty(); }

  /// Truth value when exactly the singletons in `assignment` hold.
  bool evaluate(Mask assignment) const noexcept;

  /// Bit a of the result is evaluate(a), for a in [0, 2^M).
  std::uint32_t truth_table() const noexcept;

  /// Order used by enumerate_hyper_power_set: by term count, then terms.
  friend bool operator<(const HyperProposition& a, const HyperProposition& b);
  friend bool operator==(const HyperProposition& a, const HyperProposition& b) {
    return a.terms_ == b.terms_ && a.frame_ == b.frame_;
  }

 private:
  HyperProposition(Frame frame, std::vector<Mask> terms) : frame_(std::move(frame)), terms_(std::move(terms)) {}

  Frame frame_;
  std::vector<Mask> terms_;
};

HyperProposition meet(const HyperProposition& a, const HyperProposition& b, const Exclusivity& model = {});
HyperProposition join(const HyperProposition& a, const HyperProposition& b, const Exclusivity& model = {});

inline HyperProposition operator&(const HyperProposition& a, const HyperProposition& b) { return meet(a, b); }
inline HyperProposition operator|(const HyperProposition& a, const HyperProposition& b) { return join(a, b); }

/// Re-reduces `x` under `model`. Idempotent.
HyperProposition canonical(const HyperProposition& x, const Exclusivity& model = {});

/// All distinct elements of D^Theta (empty element included), closed under
/// meet and join. Sizes for M = 1..4 under the free model: 2, 5, 19, 167.
std::vector<HyperProposition> enumerate_hyper_power_set(const Frame& frame, const Exclusivity& model = {});

/// Terms joined by "|", singletons inside a term by "&"; empty is "{}".
std::string to_string(const HyperProposition& x);

/// Accepts the to_string grammar plus parentheses, with "&" binding tighter
/// than "|"; the result is canonicalized under `model`.
HyperProposition parse_hyper_proposition(const Frame& frame, std::string_view text, const Exclusivity& model = {});

}  // namespace evfuse

#endif  // EVFUSE_HYPER_HPP
