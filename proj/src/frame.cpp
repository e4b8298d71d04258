#include "evfuse/frame.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "evfuse/error.hpp"

namespace evfuse {

TotalConflictError::TotalConflictError(double conflict, std::optional<std::size_t> step)
    : Error(step ? "total conflict (k12 = " + std::to_string(conflict) + ") at step " + std::to_string(*step)
                 : "total conflict (k12 = " + std::to_string(conflict) + "): Dempster normalization undefined"),
      conflict_(conflict),
      step_(step) {}

namespace {

constexpr std::string_view kReserved = "|&(){}";

void check_label(const std::string& label) {
  if (label.empty()) throw ValidationError("frame label must not be empty");
  for (unsigned char ch : label) {
    if (std::isspace(ch)) throw ValidationError("frame label '" + label + "' contains whitespace");
    if (kReserved.find(static_cast<char>(ch)) != std::string_view::npos)
      throw ValidationError("frame label '" + label + "' contains reserved character '" + static_cast<char>(ch) + "'");
  }
}

}  // namespace

Frame::Frame(std::vector<std::string> labels) {
  if (labels.empty()) throw ValidationError("frame needs at least one label");
  if (labels.size() > kMaxFrameSize)
    throw CapacityError("frame of " + std::to_string(labels.size()) + " labels exceeds the limit of " +
                        std::to_string(kMaxFrameSize));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    check_label(labels[i]);
    if (std::find(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(i), labels[i]) !=
        labels.begin() + static_cast<std::ptrdiff_t>(i))
      throw ValidationError("duplicate frame label '" + labels[i] + "'");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

std::optional<std::size_t> Frame::index_of(std::string_view label) const {
  const auto& v = *labels_;
  auto it = std::find(v.begin(), v.end(), label);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

Frame make_frame(std::vector<std::string> labels) { return Frame(std::move(labels)); }

void require_same_frame(const Frame& a, const Frame& b, std::string_view context) {
  if (!(a == b)) throw FrameMismatchError(std::string(context) + ": operands belong to different frames");
}

}  // namespace evfuse
