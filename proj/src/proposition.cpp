#include "evfuse/proposition.hpp"

#include <string>

#include "evfuse/error.hpp"
#include "text.hpp"

namespace evfuse {

Proposition::Proposition(Frame frame, Mask bits) : frame_(std::move(frame)), bits_(bits) {
  if ((bits_ & ~frame_.full()) != 0) throw ValidationError("proposition refers to singletons outside the frame");
}

Proposition Proposition::singleton(const Frame& frame, std::size_t index) {
  if (index >= frame.size())
    throw ValidationError("singleton index " + std::to_string(index) + " outside frame of size " +
                          std::to_string(frame.size()));
  return {frame, singleton_mask(index)};
}

std::vector<std::size_t> Proposition::members() const {
  std::vector<std::size_t> out;
  for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

bool Proposition::is_subset_of(const Proposition& other) const {
  require_same_frame(frame_, other.frame_, "subset test");
  return (bits_ & ~other.bits_) == 0;
}

Proposition operator|(const Proposition& a, const Proposition& b) {
  require_same_frame(a.frame(), b.frame(), "union");
  return {a.frame(), a.bits() | b.bits()};
}

Proposition operator&(const Proposition& a, const Proposition& b) {
  require_same_frame(a.frame(), b.frame(), "intersection");
  return {a.frame(), a.bits() & b.bits()};
}

Proposition complement(const Proposition& a) { return {a.frame(), a.frame().full() & ~a.bits()}; }

std::string format_mask(const Frame& frame, Mask bits) {
  if (bits == 0) return "{}";
  std::string out;
  for (Mask m = bits; m != 0; m &= m - 1) {
    if (!out.empty()) out += '|';
    out += frame.label(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

std::string to_string(const Proposition& p) { return format_mask(p.frame(), p.bits()); }

Proposition parse_proposition(const Frame& frame, std::string_view text) {
  std::string_view body = detail::trim(text);
  if (body == "{}") return Proposition::empty(frame);
  if (body.empty()) throw ValidationError("empty proposition text");
  Mask bits = 0;
  for (std::string_view piece : detail::split(body, '|')) {
    std::string_view label = detail::trim(piece);
    auto index = frame.index_of(label);
    if (!index) throw ValidationError("unknown label '" + std::string(label) + "' in proposition '" + std::string(body) + "'");
    bits |= singleton_mask(*index);
  }
  return {frame, bits};
}

}  // namespace evfuse
