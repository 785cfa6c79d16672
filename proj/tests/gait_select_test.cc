// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/gait_select.h"

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "tinygait/cost_model.h"
#include "tinygait/error.h"

namespace tinygait {
namespace {

GaitTable Bundled() { return GaitTable::Load(TINYGAIT_DATA_DIR "/gait_curves.csv"); }

GaitRegime BruteForce(const GaitTable& t, double f) {
  GaitRegime best = GaitRegime::kTrot;
  double best_r = -1.0;
  for (int g = 0; g < 3; ++g) {
    const double r = oracle::Interp(t.curves[g].points(), f);
    if (r > best_r) {
      best_r = r;
      best = static_cast<GaitRegime>(g);
    }
  }
  return best;
}

TEST(ClassifyGaitTest, Thresholds) {
  const GaitTable t;
  EXPECT_EQ(ClassifyGait(0.01, t), GaitRegime::kTrot);
  EXPECT_EQ(ClassifyGait(0.035, t), GaitRegime::kIntermediate);
  EXPECT_EQ(ClassifyGait(0.08, t), GaitRegime::kGallop);
  EXPECT_EQ(ClassifyGait(0.0, t), GaitRegime::kTrot);
  EXPECT_EQ(ClassifyGait(0.025, t), GaitRegime::kIntermediate);
  EXPECT_EQ(ClassifyGait(0.075, t), GaitRegime::kGallop);
  EXPECT_THROW(ClassifyGait(-0.01, t), DomainError);
}

TEST(RewardCurveTest, InterpolationAndClamping) {
  const RewardCurve c({{10.0, 0.2}, {20.0, 0.6}, {40.0, 1.0}});
  EXPECT_EQ(c.RewardAt(20.0), 0.6);
  EXPECT_DOUBLE_EQ(c.RewardAt(15.0), 0.4);
  EXPECT_DOUBLE_EQ(c.RewardAt(30.0), 0.8);
  EXPECT_EQ(c.RewardAt(1.0), 0.2);
  EXPECT_EQ(c.RewardAt(100.0), 1.0);
}

TEST(RewardCurveTest, RejectsMalformedCurves) {
  EXPECT_THROW(RewardCurve({{1.0, 0.5}}), DataError);
  EXPECT_THROW(RewardCurve({{2.0, 0.5}, {1.0, 0.6}}), DataError);
  EXPECT_THROW(RewardCurve({{1.0, 0.5}, {1.0, 0.6}}), DataError);
  EXPECT_THROW(RewardCurve({{1.0, -0.5}, {2.0, 0.6}}), DataError);
}

TEST(RewardCurveTest, MinFrequency) {
  const RewardCurve flat({{5.0, 0.7}, {50.0, 0.7}});
  EXPECT_EQ(flat.MinFrequencyFor(0.7), 5.0);
  const RewardCurve ramp({{10.0, 0.0}, {20.0, 1.0}});
  EXPECT_DOUBLE_EQ(ramp.MinFrequencyFor(0.5), 15.0);
  EXPECT_THROW(ramp.MinFrequencyFor(1.5), DomainError);
}

TEST(RewardCurveTest, MinFrequencyMonotoneInThreshold) {
  const GaitTable t = Bundled();
  for (GaitRegime g : kAllGaits) {
    const RewardCurve& c = t.curve(g);
    double prev = 0.0;
    for (double r = 0.0; r <= c.points().back().second; r += 0.005) {
      const double f = c.MinFrequencyFor(r);
      EXPECT_GE(f, prev);
      EXPECT_GE(c.RewardAt(f), r - 1e-12);
      prev = f;
    }
  }
}

TEST(SelectGaitTest, BundledDatasetBands) {
  const GaitTable t = Bundled();
  const double f = 47.62;
  EXPECT_EQ(SelectGait(t, f).gait, GaitRegime::kTrot);
  EXPECT_GT(t.curve(GaitRegime::kTrot).RewardAt(f), t.curve(GaitRegime::kIntermediate).RewardAt(f));
  EXPECT_GT(t.curve(GaitRegime::kIntermediate).RewardAt(f), t.curve(GaitRegime::kGallop).RewardAt(f));
  for (double x = 10.0; x <= 55.0; x += 0.5) EXPECT_EQ(SelectGait(t, x).gait, GaitRegime::kTrot) << x;
  for (double x = 60.0; x <= 80.0; x += 0.5) {
    EXPECT_EQ(SelectGait(t, x).gait, GaitRegime::kIntermediate) << x;
  }
  for (double x = 90.0; x <= 400.0; x += 1.0) EXPECT_EQ(SelectGait(t, x).gait, GaitRegime::kGallop) << x;
  const double sat_int = t.curve(GaitRegime::kIntermediate).points().back().second;
  const double sat_gal = t.curve(GaitRegime::kGallop).points().back().second;
  EXPECT_NEAR(t.curve(GaitRegime::kIntermediate).MinFrequencyFor(sat_int), 60.0, 1e-9);
  EXPECT_NEAR(t.curve(GaitRegime::kGallop).MinFrequencyFor(sat_gal), 85.0, 1e-9);
}

TEST(SelectGaitTest, AgreesWithBruteForce) {
  const GaitTable t = Bundled();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> f(0.0, 200.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = f(rng);
    EXPECT_EQ(SelectGait(t, x).gait, BruteForce(t, x)) << x;
  }
}

TEST(SelectGaitTest, TiesGoToSlowerGait) {
  GaitTable t;
  const RewardCurve same({{1.0, 0.5}, {100.0, 0.9}});
  t.curves = {same, same, same};
  EXPECT_EQ(SelectGait(t, 50.0).gait, GaitRegime::kTrot);
  t.curves[0] = RewardCurve({{1.0, 0.1}, {100.0, 0.1}});
  EXPECT_EQ(SelectGait(t, 50.0).gait, GaitRegime::kIntermediate);
}

TEST(SelectGaitTest, InvariantUnderUniformScaling) {
  const GaitTable t = Bundled();
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> f(0.0, 150.0);
  std::uniform_real_distribution<double> k(0.01, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double scale = k(rng);
    GaitTable s = t;
    for (int g = 0; g < 3; ++g) {
      auto pts = t.curves[g].points();
      for (auto& p : pts) p.second *= scale;
      s.curves[g] = RewardCurve(pts);
    }
    for (int i = 0; i < 40; ++i) {
      const double x = f(rng);
      EXPECT_EQ(SelectGait(s, x).gait, SelectGait(t, x).gait);
    }
  }
}

TEST(SelectGaitTest, PowerBudget) {
  const GaitTable t = Bundled();
  PowerParams p;  // 5 MHz sustainable clock
  const PowerGaitChoice c = SelectGaitForPower(t, p, 104998.0);
  EXPECT_NEAR(c.f_update_max_hz, 47.62, 0.01);
  EXPECT_EQ(c.gait, GaitRegime::kTrot);
  p.max_watts = PowerAtClock(p, RequiredClock(104998.0, 95.0));
  EXPECT_EQ(SelectGaitForPower(t, p, 104998.0).gait, GaitRegime::kGallop);
}

TEST(GaitTableTest, CsvRoundTripAndErrors) {
  const GaitTable t = Bundled();
  const GaitTable back = GaitTable::FromCsv(t.ToCsv());
  for (int g = 0; g < 3; ++g) EXPECT_EQ(back.curves[g].points(), t.curves[g].points());
  EXPECT_THROW(GaitTable::FromCsv("gait,f,r\n"), DataError);
  EXPECT_THROW(GaitTable::FromCsv("gait,f_update_hz,reward_ratio\ntrot,10,0.5\n"), DataError);
  EXPECT_THROW(GaitTable::FromCsv("gait,f_update_hz,reward_ratio\n"
                                  "trot,10,0.5\ntrot,5,0.6\n"
                                  "intermediate,1,0.1\nintermediate,2,0.2\n"
                                  "gallop,1,0.1\ngallop,2,0.2\n"),
               DataError);
  EXPECT_THROW(GaitTable::FromCsv("gait,f_update_hz,reward_ratio\nskip,1,0.1\n"), DataError);
  EXPECT_THROW(GaitTable::Load("/nonexistent/curves.csv"), DataError);
  EXPECT_EQ(ParseGaitRegime("gallop"), GaitRegime::kGallop);
  EXPECT_EQ(ToString(GaitRegime::kIntermediate), "intermediate");
}

}  // namespace
}  // namespace tinygait
