#include <gtest/gtest.h>

#include <random>

#include "evfuse/error.hpp"
#include "evfuse/proposition.hpp"

namespace {

using evfuse::Frame;
using evfuse::Proposition;

TEST(Frame, KeepsInputOrder) {
  Frame fc = evfuse::make_frame({"Fighter", "Cargo"});
  EXPECT_EQ(fc.size(), 2u);
  EXPECT_EQ(fc.label(0), "Fighter");
  EXPECT_EQ(fc.index_of("Cargo"), 1u);
  EXPECT_FALSE(fc.index_of("Bomber").has_value());

  Frame iff = evfuse::make_frame({"Friend", "Foe", "Neutral"});
  EXPECT_EQ(iff.size(), 3u);
  EXPECT_EQ(iff.full(), 0b111u);
}

TEST(Frame, RejectsBadLabels) {
  EXPECT_THROW(evfuse::make_frame({"A", "A"}), evfuse::ValidationError);
  EXPECT_THROW(evfuse::make_frame({}), evfuse::ValidationError);
  EXPECT_THROW(evfuse::make_frame({"A", ""}), evfuse::ValidationError);
  EXPECT_THROW(evfuse::make_frame({"A B"}), evfuse::ValidationError);
  EXPECT_THROW(evfuse::make_frame({"A|B"}), evfuse::ValidationError);
  EXPECT_THROW(evfuse::make_frame({"A&B"}), evfuse::ValidationError);
}

TEST(Frame, DuplicateErrorNamesTheLabel) {
  try {
    evfuse::make_frame({"Fighter", "Cargo", "Fighter"});
    FAIL() << "expected ValidationError";
  } catch (const evfuse::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("Fighter"), std::string::npos);
  }
}

TEST(Frame, EqualityIsByLabels) {
  Frame a({"F", "C"});
  Frame b({"F", "C"});
  Frame c({"C", "F"});
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
}

TEST(Proposition, Algebra) {
  Frame fc({"F", "C"});
  auto f = Proposition::singleton(fc, 0);
  auto c = Proposition::singleton(fc, 1);
  EXPECT_TRUE((f & c).is_empty());
  EXPECT_EQ(f | c, Proposition::total(fc));
  EXPECT_EQ((f | c) & f, f);
  EXPECT_TRUE(f.is_singleton());
  EXPECT_FALSE((f | c).is_singleton());
  EXPECT_EQ((f | c).size(), 2u);
  EXPECT_EQ(complement(f), c);
  EXPECT_TRUE(f.is_subset_of(f | c));
  EXPECT_FALSE((f | c).is_subset_of(f));
}

TEST(Proposition, MixedFramesAreRejected) {
  Frame a({"F", "C"});
  Frame b({"X", "Y"});
  auto f = Proposition::singleton(a, 0);
  auto x = Proposition::singleton(b, 0);
  EXPECT_THROW(f | x, evfuse::FrameMismatchError);
  EXPECT_THROW(f & x, evfuse::FrameMismatchError);
  EXPECT_THROW(static_cast<void>(f.is_subset_of(x)), evfuse::FrameMismatchError);
}

TEST(Proposition, RejectsBitsOutsideFrame) {
  Frame fc({"F", "C"});
  EXPECT_THROW(Proposition(fc, 0b100), evfuse::ValidationError);
  EXPECT_THROW(Proposition::singleton(fc, 2), evfuse::ValidationError);
}

TEST(Proposition, TextForm) {
  Frame fc({"Fighter", "Cargo"});
  EXPECT_EQ(to_string(Proposition::total(fc)), "Fighter|Cargo");
  EXPECT_EQ(to_string(Proposition::empty(fc)), "{}");
  EXPECT_EQ(parse_proposition(fc, " Cargo | Fighter "), Proposition::total(fc));
  EXPECT_EQ(parse_proposition(fc, "{}"), Proposition::empty(fc));
  EXPECT_THROW(parse_proposition(fc, "Bomber"), evfuse::ValidationError);
  EXPECT_THROW(parse_proposition(fc, ""), evfuse::ValidationError);
}

TEST(Proposition, LatticeProperties) {
  Frame f4({"a", "b", "c", "d"});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<evfuse::Mask> pick(0, f4.full());
  for (int i = 0; i < 500; ++i) {
    Proposition a(f4, pick(rng));
    Proposition b(f4, pick(rng));
    EXPECT_TRUE((a & b).is_subset_of(a));
    EXPECT_TRUE(a.is_subset_of(a | b));
    EXPECT_EQ(parse_proposition(f4, to_string(a)), a);
  }
}

}  // namespace
