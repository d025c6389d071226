#include <gtest/gtest.h>

#include "quizreward/error.hpp"
#include "quizreward/rng.hpp"
#include "quizreward/threshold.hpp"

namespace quizreward {
namespace {

constexpr Outcome W = Outcome::Win;
constexpr Outcome L = Outcome::Loss;

TEST(ThresholdController, WindowFlushesAtExactlyW) {
  ThresholdController c{ControllerSettings{}};
  for (int i = 0; i < 4; ++i) EXPECT_FALSE(c.record_outcome(L));
  EXPECT_EQ(c.pending().size(), 4u);
  EXPECT_TRUE(c.record_outcome(W));
  EXPECT_TRUE(c.pending().empty());
  EXPECT_EQ(c.update_count(), 1);
}

TEST(ThresholdController, PartialWindowLeavesThresholdAlone) {
  ThresholdController c{ControllerSettings{}};
  c.record_outcome(W);
  EXPECT_FALSE(c.record_outcome(W));
  EXPECT_EQ(c.pending().size(), 2u);
  EXPECT_EQ(c.threshold(), 0.70);
}

TEST(ThresholdController, TargetSuccessRateKeepsBaseThreshold) {
  ThresholdController c{ControllerSettings{}};
  for (Outcome o : {L, L, L, L, W}) c.record_outcome(o);
  EXPECT_EQ(c.threshold(), 0.70);
}

TEST(ThresholdController, UpdateExamples) {
  ThresholdController c{ControllerSettings{}};
  EXPECT_EQ(c.update_threshold(0.20), 0.70);
  EXPECT_NEAR(c.update_threshold(1.00), 0.78, 1e-12);
  EXPECT_NEAR(c.update_threshold(0.00), 0.68, 1e-12);

  ControllerSettings aggressive;
  aggressive.gain = 2.0;
  ThresholdController clamped{aggressive};
  EXPECT_EQ(clamped.update_threshold(1.00), 0.95);
  EXPECT_EQ(clamped.update_threshold(0.00), 0.60);
  EXPECT_THROW(clamped.update_threshold(1.5), QuizError);
}

TEST(ThresholdController, UpdatesFromBaseNotFromCurrent) {
  ThresholdController c{ControllerSettings{}};
  c.update_threshold(1.0);
  c.update_threshold(1.0);
  EXPECT_NEAR(c.threshold(), 0.78, 1e-12);
}

TEST(ControllerSettings, RejectsInvalidFields) {
  const auto rejects = [](auto mutate, const char* field) {
    ControllerSettings s;
    mutate(s);
    try {
      s.validate();
      ADD_FAILURE() << "accepted invalid " << field;
    } catch (const QuizError& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  rejects([](auto& s) { s.base_threshold = 0.0; }, "t0");
  rejects([](auto& s) { s.gain = -1.0; }, "sf");
  rejects([](auto& s) { s.window = 0; }, "window");
  rejects([](auto& s) { s.min_threshold = 0.8; }, "t0");
  rejects([](auto& s) { s.max_threshold = 1.2; }, "t_max");
  rejects([](auto& s) { s.target_success = -0.1; }, "s_target");
}

TEST(ThresholdControllerProperties, BoundsHoldForEveryReachableState) {
  SimRng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    ControllerSettings s;
    s.gain = rng.uniform() * 5.0;
    s.window = 1 + static_cast<std::int64_t>(rng.below(9));
    s.target_success = rng.uniform();
    ThresholdController c{s};
    for (int i = 0; i < 200; ++i) {
      c.record_outcome(rng.uniform() < rng.uniform() ? W : L);
      ASSERT_GE(c.threshold(), s.min_threshold);
      ASSERT_LE(c.threshold(), s.max_threshold);
    }
  }
}

TEST(ThresholdControllerProperties, MonotoneInSuccessRate) {
  for (double gain : {0.0, 0.1, 0.5, 2.0}) {
    ControllerSettings s;
    s.gain = gain;
    ThresholdController c{s};
    double previous = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = c.update_threshold(i / 100.0);
      ASSERT_GE(t, previous);
      previous = t;
    }
  }
}

TEST(ThresholdControllerProperties, FixedPointForAnyGain) {
  for (double gain : {0.0, 0.1, 1.0, 7.5, 1e6}) {
    ControllerSettings s;
    s.gain = gain;
    ThresholdController c{s};
    EXPECT_EQ(c.update_threshold(0.2), 0.70) << gain;
  }
}

TEST(ThresholdControllerProperties, OneUpdatePerCompletedWindow) {
  for (std::int64_t window : {1, 2, 5, 7}) {
    ControllerSettings s;
    s.window = window;
    ThresholdController c{s};
    for (int n = 1; n <= 103; ++n) {
      c.record_outcome(n % 3 == 0 ? W : L);
      ASSERT_EQ(c.update_count(), n / window);
    }
  }
}

TEST(ThresholdControllerProperties, DefaultGainSpansNormalizedRange) {
  ThresholdController c{ControllerSettings{}};
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = c.update_threshold(i / 1000.0);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  EXPECT_NEAR(lo, 0.68, 1e-12);
  EXPECT_NEAR(hi, 0.78, 1e-12);
}

}  // namespace
}  // namespace quizreward
