#include "evfuse/hyper.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "evfuse/error.hpp"
#include "text.hpp"

namespace evfuse {

namespace {

void require_hyper_capacity(const Frame& frame) {
  if (frame.size() > kMaxHyperFrameSize)
    throw CapacityError("hyper-power set supports at most " + std::to_string(kMaxHyperFrameSize) +
                        " singletons, frame has " + std::to_string(frame.size()));
}

// Drops killed terms and every term that has a proper subset in the list
// (a larger intersection is contained in a smaller one).
std::vector<Mask> reduce(std::vector<Mask> terms, const Exclusivity& model) {
  std::erase_if(terms, [&](Mask t) { return model.kills(t); });
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::vector<Mask> out;
  out.reserve(terms.size());
  for (Mask t : terms) {
    bool absorbed = std::any_of(terms.begin(), terms.end(), [t](Mask s) { return s != t && (s & ~t) == 0; });
    if (!absorbed) out.push_back(t);
  }
  return out;
}

}  // namespace

Exclusivity::Exclusivity(std::size_t frame_size, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  for (auto [i, j] : pairs) {
    if (i >= frame_size || j >= frame_size || i == j)
      throw ValidationError("exclusivity pair (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") is not a pair of distinct singletons of the frame");
    forbidden_.push_back(singleton_mask(i) | singleton_mask(j));
  }
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

Exclusivity Exclusivity::shafer(std::size_t frame_size) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < frame_size; ++i)
    for (std::size_t j = i + 1; j < frame_size; ++j) pairs.emplace_back(i, j);
  return Exclusivity(frame_size, std::move(pairs));
}

bool Exclusivity::kills(Mask term) const noexcept {
  return std::any_of(forbidden_.begin(), forbidden_.end(), [term](Mask f) { return (term & f) == f; });
}

HyperProposition HyperProposition::empty(const Frame& frame) {
  require_hyper_capacity(frame);
  return HyperProposition(frame, {});
}

HyperProposition HyperProposition::singleton(const Frame& frame, std::size_t index) {
  require_hyper_capacity(frame);
  if (index >= frame.size()) throw ValidationError("singleton index " + std::to_string(index) + " outside frame");
  return HyperProposition(frame, {singleton_mask(index)});
}

HyperProposition HyperProposition::from_terms(const Frame& frame, std::vector<Mask> terms, const Exclusivity& model) {
  require_hyper_capacity(frame);
  for (Mask t : terms) {
    if (t == 0) throw ValidationError("intersection term must name at least one singleton");
    if ((t & ~frame.full()) != 0) throw ValidationError("intersection term refers to singletons outside the frame");
  }
  return HyperProposition(frame, reduce(std::move(terms), model));
}

bool HyperProposition::evaluate(Mask assignment) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [assignment](Mask t) { return (t & ~assignment) == 0; });
}

std::uint32_t HyperProposition::truth_table() const noexcept {
  std::uint32_t table = 0;
  const Mask points = Mask{1} << frame_.size();
  for (Mask a = 0; a < points; ++a)
    if (evaluate(a)) table |= std::uint32_t{1} << a;
  return table;
}

bool operator<(const HyperProposition& a, const HyperProposition& b) {
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
  return a.terms_ < b.terms_;
}

HyperProposition meet(const HyperProposition& a, const HyperProposition& b, const Exclusivity& model) {
  require_same_frame(a.frame(), b.frame(), "hyper meet");
  std::vector<Mask> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (Mask ta : a.terms())
    for (Mask tb : b.terms()) terms.push_back(ta | tb);
  return HyperProposition::from_terms(a.frame(), std::move(terms), model);
}

HyperProposition join(const HyperProposition& a, const HyperProposition& b, const Exclusivity& model) {
  require_same_frame(a.frame(), b.frame(), "hyper join");
  std::vector<Mask> terms(a.terms());
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return HyperProposition::from_terms(a.frame(), std::move(terms), model);
}

HyperProposition canonical(const HyperProposition& x, const Exclusivity& model) {
  return HyperProposition::from_terms(x.frame(), x.terms(), model);
}

std::vector<HyperProposition> enumerate_hyper_power_set(const Frame& frame, const Exclusivity& model) {
  require_hyper_capacity(frame);
  std::vector<HyperProposition> elements;
  std::set<std::vector<Mask>> seen;
  auto add = [&](HyperProposition x) {
    if (seen.insert(x.terms()).second) elements.push_back(std::move(x));
  };
  add(HyperProposition::empty(frame));
  for (std::size_t i = 0; i < frame.size(); ++i) add(canonical(HyperProposition::singleton(frame, i), model));

  // Closure under meet and join; new elements are paired with everything
  // already present until a pass adds nothing.
  std::size_t done = 0;
  while (done < elements.size()) {
    const std::size_t end = elements.size();
    for (std::size_t i = done; i < end; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        add(meet(elements[i], elements[j], model));
        add(join(elements[i], elements[j], model));
      }
    }
    done = end;
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

std::string to_string(const HyperProposition& x) {
  if (x.is_empty()) return "{}";
  std::string out;
  for (Mask t : x.terms()) {
    if (!out.empty()) out += '|';
    bool first = true;
    for (Mask m = t; m != 0; m &= m - 1) {
      if (!first) out += '&';
      out += x.frame().label(static_cast<std::size_t>(std::countr_zero(m)));
      first = false;
    }
  }
  return out;
}

namespace {

class HyperParser {
 public:
  HyperParser(const Frame& frame, std::string_view text, const Exclusivity& model)
      : frame_(frame), text_(text), model_(model) {}

  HyperProposition parse() {
    HyperProposition x = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return x;
  }

 private:
  HyperProposition expression() {
    HyperProposition x = conjunction();
    while (accept('|')) x = join(x, conjunction(), model_);
    return x;
  }

  HyperProposition conjunction() {
    HyperProposition x = atom();
    while (accept('&')) x = meet(x, atom(), model_);
    return x;
  }

  HyperProposition atom() {
    skip_space();
    if (accept('(')) {
      HyperProposition x = expression();
      if (!accept(')')) fail("missing ')'");
      return x;
    }
    if (accept('{')) {
      if (!accept('}')) fail("expected '}'");
      return HyperProposition::empty(frame_);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::string_view("|&(){} \t").find(text_[pos_]) == std::string_view::npos) ++pos_;
    std::string_view label = text_.substr(start, pos_ - start);
    if (label.empty()) fail("expected a label");
    auto index = frame_.index_of(label);
    if (!index) fail("unknown label '" + std::string(label) + "'");
    return canonical(HyperProposition::singleton(frame_, *index), model_);
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("hyper proposition '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " +
                          what);
  }

  const Frame& frame_;
  std::string_view text_;
  const Exclusivity& model_;
  std::size_t pos_ = 0;
};

}  // namespace

HyperProposition parse_hyper_proposition(const Frame& frame, std::string_view text, const Exclusivity& model) {
  require_hyper_capacity(frame);
  return HyperParser(frame, detail::trim(text), model).parse();
}

}  // namespace evfuse
