#ifndef EVFUSE_FRAME_HPP
#define EVFUSE_FRAME_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evfuse {

/// Bit i set <=> singleton i of the frame is a member.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxFrameSize = 64;

inline constexpr Mask singleton_mask(std::size_t index) { return Mask{1} << index; }

inline constexpr Mask full_mask(std::size_t size) {
  return size >= 64 ? ~Mask{0} : (Mask{1} << size) - 1;
}

inline constexpr std::size_t cardinality(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

/// Ordered set of exhaustive, mutually exclusive hypotheses.
///
/// Copies share the label storage, so passing frames by value is cheap and
/// equality between copies of the same frame is a pointer comparison.
class Frame {
 public:
  /// Throws ValidationError on an empty list, a blank or duplicate label, or
  /// a label containing whitespace or one of the grammar characters `|&(){}`.
  explicit Frame(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_->size(); }
  const std::vector<std::string>& labels() const noexcept { return *labels_; }
  const std::string& label(std::size_t index) const { return labels_->at(index); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Mask of the total-ignorance proposition theta_1 | ... | theta_M.
  Mask full() const noexcept { return full_mask(size()); }

  friend bool operator==(const Frame& a, const Frame& b) noexcept {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

Frame make_frame(std::vector<std::string> labels);

/// Throws FrameMismatchError naming `context` when the frames differ.
void require_same_frame(const Frame& a, const Frame& b, std::string_view context);

}  // namespace evfuse

#endif  // EVFUSE_FRAME_HPP
