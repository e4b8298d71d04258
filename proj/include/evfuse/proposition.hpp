#ifndef EVFUSE_PROPOSITION_HPP
#define EVFUSE_PROPOSITION_HPP

#include <string>
#include <string_view>
#include <vector>

#include "evfuse/frame.hpp"

namespace evfuse {

/// Element of the power set 2^Theta under Shafer's model.
class Proposition {
 public:
  /// Throws ValidationError when `bits` names a singleton outside the frame.
  Proposition(Frame frame, Mask bits);

  static Proposition empty(const Frame& frame) { return {frame, 0}; }
  static Proposition singleton(const Frame& frame, std::size_t index);
  static Proposition total(const Frame& frame) { return {frame, frame.full()}; }

  const Frame& frame() const noexcept { return frame_; }
  Mask bits() const noexcept { return bits_; }

  bool is_empty() const noexcept { return bits_ == 0; }
  bool is_singleton() const noexcept { return cardinality(bits_) == 1; }
  bool is_total() const noexcept { return bits_ == frame_.full(); }
  std::size_t size() const noexcept { return cardinality(bits_); }
  std::vector<std::size_t> members() const;

  bool is_subset_of(const Proposition& other) const;

  friend bool operator==(const Proposition& a, const Proposition& b) {
    return a.bits_ == b.bits_ && a.frame_ == b.frame_;
  }

 private:
  Frame frame_;
  Mask bits_;
};

Proposition operator|(const Proposition& a, const Proposition& b);
Proposition operator&(const Proposition& a, const Proposition& b);
Proposition complement(const Proposition& a);

/// Labels joined by "|", in frame order; the empty set renders as "{}".
std::string to_string(const Proposition& p);
std::string format_mask(const Frame& frame, Mask bits);

/// Inverse of to_string. Whitespace around labels is ignored.
Proposition parse_proposition(const Frame& frame, std::string_view text);

}  // namespace evfuse

#endif  // EVFUSE_PROPOSITION_HPP
