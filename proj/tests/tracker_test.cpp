#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "evfuse/error.hpp"
#include "evfuse/simulation.hpp"
#include "evfuse/tracker.hpp"

namespace {

using evfuse::Bba;
using evfuse::ConfusionMatrix;
using evfuse::Declaration;
using evfuse::DecisionCriterion;
using evfuse::FusionRule;
using evfuse::Proposition;

constexpr std::size_t kF = 0;
constexpr std::size_t kC = 1;

class TrackerTest : public ::testing::Test {
 protected:
  evfuse::Frame fc = evfuse::fighter_cargo_frame();
  ConfusionMatrix c1 = evfuse::builtin_classifier("c1", fc);
  ConfusionMatrix c2 = evfuse::builtin_classifier("c2", fc);
  Proposition f = Proposition::singleton(fc, kF);
  Proposition c = Proposition::singleton(fc, kC);
  Proposition theta = Proposition::total(fc);
};

TEST_F(TrackerTest, ConfusionMatrixValidation) {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.9, 0.0, 0.1, 0.9;
  EXPECT_THROW(ConfusionMatrix(fc, bad), evfuse::ValidationError);
  Eigen::MatrixXd negative(2, 2);
  negative << 1.1, -0.1, 0.0, 1.0;
  EXPECT_THROW(ConfusionMatrix(fc, negative), evfuse::ValidationError);
  EXPECT_THROW(ConfusionMatrix(fc, Eigen::MatrixXd::Identity(3, 3)), evfuse::ValidationError);
  EXPECT_EQ(c1(kF, kF), 0.95);
  EXPECT_EQ(c2(kC, kF), 0.25);
}

TEST_F(TrackerTest, InitIsVacuousForEitherRule) {
  for (FusionRule rule : evfuse::kAllRules) {
    const auto state = evfuse::init_tracker(fc, rule);
    EXPECT_EQ(state.prior.mass(theta), 1.0);
    EXPECT_EQ(state.prior.size(), 1u);
    EXPECT_EQ(state.scan, 0u);
    EXPECT_FALSE(state.last_decision.has_value());
  }
}

TEST_F(TrackerTest, ObservationBba) {
  const Bba from_c1 = observation_bba({1, kF}, c1);
  EXPECT_EQ(from_c1.mass(f), 0.95);
  EXPECT_NEAR(from_c1.mass(theta), 0.05, 1e-15);

  const Bba from_c2 = observation_bba({1, kC}, c2);
  EXPECT_EQ(from_c2.mass(c), 0.75);
  EXPECT_NEAR(from_c2.mass(theta), 0.25, 1e-15);

  const Bba certain = observation_bba({1, kF}, ConfusionMatrix::identity(fc));
  EXPECT_EQ(certain.size(), 1u);
  EXPECT_EQ(certain.mass(f), 1.0);

  EXPECT_THROW(observation_bba({1, 2}, c1), evfuse::ValidationError);
}

TEST_F(TrackerTest, FirstStep) {
  for (FusionRule rule : evfuse::kAllRules) {
    const auto r = step(evfuse::init_tracker(fc, rule), {1, kF}, c1);
    EXPECT_EQ(r.posterior.mass(f), 0.95);
    EXPECT_NEAR(r.posterior.mass(theta), 0.05, 1e-15);
    EXPECT_EQ(r.decision, kF);
    EXPECT_EQ(r.state.scan, 1u);
    EXPECT_EQ(r.state.last_decision, kF);
    EXPECT_EQ(r.state.prior, r.posterior);
  }
}

TEST_F(TrackerTest, DempsterTieKeepsPreviousDecision) {
  auto state = evfuse::init_tracker(fc, FusionRule::Dempster);
  state.prior = evfuse::make_bba(fc, {{c, 0.95}, {theta, 0.05}});
  state.last_decision = kC;
  state.scan = 7;
  const auto r = step(state, {8, kF}, c1);
  EXPECT_NEAR(belief(r.posterior, f), 0.487179, 1e-6);
  EXPECT_NEAR(belief(r.posterior, f), belief(r.posterior, c), 1e-15);
  EXPECT_EQ(r.decision, kC);
}

TEST_F(TrackerTest, RoundingNoiseIsATie) {
  const double eps = 1e-14;
  const Bba near = evfuse::make_bba(fc, {{f, 0.4 + eps}, {c, 0.4}, {theta, 0.2 - eps}});
  EXPECT_EQ(decide(near, DecisionCriterion::MaxBelief, kC), kC);
  EXPECT_EQ(decide(near, DecisionCriterion::MaxPignistic, kC), kC);
  const Bba apart = evfuse::make_bba(fc, {{f, 0.4 + 1e-9}, {c, 0.4}, {theta, 0.2 - 1e-9}});
  EXPECT_EQ(decide(apart, DecisionCriterion::MaxBelief, kC), kF);
}

TEST_F(TrackerTest, TotalConflictCarriesScan) {
  auto state = evfuse::init_tracker(fc, FusionRule::Dempster);
  state.prior = evfuse::make_bba(fc, {{c, 1.0}});
  state.scan = 4;
  try {
    step(state, {5, kF}, ConfusionMatrix::identity(fc));
    FAIL() << "expected TotalConflictError";
  } catch (const evfuse::TotalConflictError& e) {
    EXPECT_EQ(e.step(), 5u);
  }
  state.rule = FusionRule::Pcr5;
  EXPECT_EQ(step(state, {5, kF}, ConfusionMatrix::identity(fc)).posterior.mass(f), 0.5);
}

TEST_F(TrackerTest, OutOfOrderScanRejected) {
  const auto state = evfuse::init_tracker(fc, FusionRule::Pcr5);
  EXPECT_THROW(step(state, {2, kF}, c1), evfuse::SequencingError);
  EXPECT_THROW(step(state, {0, kF}, c1), evfuse::SequencingError);
}

TEST_F(TrackerTest, DecideExamples) {
  EXPECT_EQ(decide(evfuse::make_bba(fc, {{f, 0.95}, {theta, 0.05}}), DecisionCriterion::MaxBelief), kF);
  EXPECT_EQ(decide(evfuse::vacuous(fc), DecisionCriterion::MaxBelief), kF);
  EXPECT_EQ(decide(evfuse::vacuous(fc), DecisionCriterion::MaxPignistic), kF);
  const Bba symmetric = evfuse::make_bba(fc, {{f, 0.49875}, {c, 0.49875}, {theta, 0.0025}});
  EXPECT_EQ(decide(symmetric, DecisionCriterion::MaxBelief, kC), kC);
  EXPECT_EQ(decide(symmetric, DecisionCriterion::MaxBelief, kF), kF);
  EXPECT_EQ(decide(symmetric, DecisionCriterion::MaxBelief), kF);
  // Composite mass never wins on its own.
  EXPECT_EQ(decide(evfuse::make_bba(fc, {{c, 0.1}, {theta, 0.9}}), DecisionCriterion::MaxBelief), kC);
}

TEST_F(TrackerTest, CriterionTags) {
  EXPECT_EQ(evfuse::parse_criterion("pignistic"), DecisionCriterion::MaxPignistic);
  EXPECT_EQ(evfuse::parse_criterion("belief"), DecisionCriterion::MaxBelief);
  EXPECT_EQ(evfuse::to_string(DecisionCriterion::MaxPignistic), "pignistic");
  EXPECT_THROW(evfuse::parse_criterion("plausibility"), evfuse::ValidationError);
}

TEST_F(TrackerTest, TraceRecord) {
  const auto r = step(evfuse::init_tracker(fc, FusionRule::Pcr5), {1, kC}, c2);
  const auto t = make_trace(r, {1, kC});
  EXPECT_EQ(t.scan, 1u);
  EXPECT_EQ(t.declared, kC);
  EXPECT_EQ(t.rule, FusionRule::Pcr5);
  ASSERT_EQ(t.masses.size(), 3);
  EXPECT_EQ(t.masses(0), 0.0);
  EXPECT_EQ(t.masses(1), 0.75);
  EXPECT_NEAR(t.masses(2), 0.25, 1e-15);
  EXPECT_EQ(t.beliefs(1), 0.75);
  EXPECT_EQ(t.decision, kC);
}

std::vector<Declaration> random_declarations(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Declaration> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back({k, coin(rng) ? kF : kC});
  return out;
}

TEST_F(TrackerTest, StateLoopEqualsFold) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto decls = random_declarations(30, rng);
    for (FusionRule rule : evfuse::kAllRules) {
      auto state = evfuse::init_tracker(fc, rule);
      std::vector<Bba> observations;
      for (const auto& d : decls) {
        observations.push_back(observation_bba(d, c2));
        auto r = step(state, d, c2);
        EXPECT_EQ(r.posterior, fold(rule, evfuse::vacuous(fc), observations));
        state = std::move(r.state);
      }
    }
  }
}

TEST_F(TrackerTest, TwoClassFocalSetsStayClosed) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    for (FusionRule rule : evfuse::kAllRules) {
      auto state = evfuse::init_tracker(fc, rule);
      for (const auto& d : random_declarations(40, rng)) {
        auto r = step(state, d, c1);
        for (const auto& fe : r.posterior.focal_elements())
          EXPECT_TRUE(fe.set == f.bits() || fe.set == c.bits() || fe.set == theta.bits());
        state = std::move(r.state);
      }
    }
  }
}

TEST_F(TrackerTest, PerfectClassifierIsRightFromFirstScan) {
  const auto id = ConfusionMatrix::identity(fc);
  for (std::size_t truth : {kF, kC}) {
    for (FusionRule rule : evfuse::kAllRules) {
      auto state = evfuse::init_tracker(fc, rule);
      for (std::size_t k = 1; k <= 20; ++k) {
        auto r = step(state, {k, truth}, id);
        EXPECT_EQ(r.decision, truth);
        state = std::move(r.state);
      }
    }
  }
}

TEST_F(TrackerTest, DecisionIgnoresRenormalizationAndPruning) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = u(rng), b = u(rng), t = u(rng);
    const double s = a + b + t;
    const Bba exact = Bba::from_masses(fc, {{f.bits(), a / s}, {c.bits(), b / s}, {theta.bits(), t / s}});
    const Bba scaled = Bba::from_masses(fc, {{f.bits(), 3 * a}, {c.bits(), 3 * b}, {theta.bits(), 3 * t}});
    const Bba dusted = Bba::from_masses(
        fc, {{f.bits(), a / s}, {c.bits(), b / s}, {theta.bits(), t / s}, {theta.bits(), evfuse::kMassFloor / 8}});
    for (auto criterion : {DecisionCriterion::MaxBelief, DecisionCriterion::MaxPignistic}) {
      EXPECT_EQ(decide(exact, criterion), decide(scaled, criterion));
      EXPECT_EQ(decide(exact, criterion), decide(dusted, criterion));
    }
  }
}

TEST_F(TrackerTest, BeliefAndPignisticAgreeOnScenarioPosteriors) {
  const auto scenario = evfuse::default_scenario();
  for (const auto* cm : {&c1, &c2}) {
    for (FusionRule rule : evfuse::kAllRules) {
      const FusionRule rules[] = {rule};
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto bel = run_single(scenario, *cm, rules, seed, DecisionCriterion::MaxBelief);
        const auto betp = run_single(scenario, *cm, rules, seed, DecisionCriterion::MaxPignistic);
        EXPECT_EQ(bel.rules[0].decisions, betp.rules[0].decisions) << "seed " << seed;
      }
    }
  }
}

}  // namespace
