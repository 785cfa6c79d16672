// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/kinematics.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "tinygait/error.h"
#include "tinygait/kv_config.h"

namespace tinygait {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(IkTest, HandEvaluatedPoint) {
  const IkSolution s = Ik(LegGeometry{}, {0.0, 0.0});
  EXPECT_EQ(s.theta_y, 0.0);
  EXPECT_NEAR(s.theta_x, kPi / 6, 1e-15);
  EXPECT_NEAR(s.x_motor, -std::cos(kPi / 6), 1e-15);
  EXPECT_NEAR(s.y_motor, 1.0, 1e-15);
}

TEST(IkTest, ThetaYZeroAtMotorReference) {
  const LegGeometry g{0.8, 1.3, 0.25, -0.1};
  for (double y : {-1.2, -0.9, -0.5}) EXPECT_EQ(Ik(g, {0.25, y}).theta_y, 0.0);
}

TEST(IkTest, ThetaYDependsOnlyOnX) {
  const LegGeometry g{1.0, 2.0, 0.1, 0.2};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(-1.8, 2.0);
  std::uniform_real_distribution<double> y(-0.9, -0.5);
  for (int i = 0; i < 1000; ++i) {
    const double xe = x(rng);
    EXPECT_EQ(Ik(g, {xe, y(rng)}).theta_y, Ik(g, {xe, y(rng)}).theta_y);
  }
}

TEST(IkTest, RoundTripThroughFkOracle) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-kPi / 2 + 1e-6, kPi / 2 - 1e-6);
  std::uniform_real_distribution<double> len(0.2, 5.0);
  std::uniform_real_distribution<double> ref(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const LegGeometry g{len(rng), len(rng), ref(rng), ref(rng)};
    const double tx = angle(rng), ty = angle(rng);
    const IkSolution s = Ik(g, FkOracle(g, tx, ty));
    ASSERT_NEAR(s.theta_x, tx, 1e-9);
    ASSERT_NEAR(s.theta_y, ty, 1e-9);
  }
}

TEST(IkTest, WorkspaceBoundaryIsInclusive) {
  const LegGeometry g;
  EXPECT_NEAR(Ik(g, {1.0, 0.0}).theta_y, kPi / 2, 0.0);
  EXPECT_NEAR(Ik(g, {-1.0, 0.0}).theta_y, -kPi / 2, 0.0);
  EXPECT_NEAR(Ik(g, {0.0, 0.5}).theta_x, kPi / 2, 0.0);
  EXPECT_NEAR(Ik(g, {0.0, -1.5}).theta_x, -kPi / 2, 0.0);
  try {
    Ik(g, {1.0 + 1e-12, 0.0});
    FAIL();
  } catch (const WorkspaceError& e) {
    EXPECT_STREQ(e.equation(), "theta_y");
    EXPECT_GT(e.argument(), 1.0);
  }
  try {
    Ik(g, {0.0, 0.5 + 1e-12});
    FAIL();
  } catch (const WorkspaceError& e) {
    EXPECT_STREQ(e.equation(), "theta_x");
  }
  EXPECT_THROW(Ik(g, {NAN, 0.0}), WorkspaceError);
}

TEST(IkTest, RejectsBadGeometry) {
  EXPECT_THROW(Ik(LegGeometry{0.0, 1.0, 0, 0}, {0, 0}), DomainError);
  EXPECT_THROW(Ik(LegGeometry{1.0, -1.0, 0, 0}, {0, 0}), DomainError);
}

TEST(ActionToMotorTargetsTest, MatchesPerLegIk) {
  LegGeometries geoms;
  geoms[2].l_x = 2.0;
  geoms[3].x_motor_ref = 0.5;
  const std::vector<float> action = {0.1f, -0.2f, 0.3f, 0.4f, -0.5f, 0.0f, 1.0f, -1.0f};
  const auto targets = ActionToMotorTargets(action, geoms);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const double tx = action[2 * leg], ty = action[2 * leg + 1];
    const EndEffector e = FkOracle(geoms[leg], tx, ty);
    EXPECT_NEAR(targets[leg].x_motor,
                e.x_end - 0.5 * geoms[leg].l_y * std::sin(ty) - geoms[leg].l_x * std::cos(tx),
                1e-12);
    EXPECT_NEAR(targets[leg].y_motor, e.y_end + geoms[leg].l_y * std::cos(ty), 1e-12);
  }
  EXPECT_THROW(ActionToMotorTargets(std::vector<float>(7), geoms), ShapeError);
}

TEST(GeometriesFromKvTest, SharedKeysAndOverrides) {
  const LegGeometries g = GeometriesFromKv(KvConfig::Parse(
      "leg2.l_x = 3\n"
      "l_x = 0.5\n"
      "l_y = 0.7\n"
      "leg0.y_motor_ref = -0.2\n"));
  EXPECT_EQ(g[0].l_x, 0.5);
  EXPECT_EQ(g[2].l_x, 3.0);
  EXPECT_EQ(g[3].l_y, 0.7);
  EXPECT_EQ(g[0].y_motor_ref, -0.2);
  EXPECT_EQ(g[1].y_motor_ref, 0.0);
  EXPECT_THROW(GeometriesFromKv(KvConfig::Parse("leg4.l_x = 1\n")), DataError);
  EXPECT_THROW(GeometriesFromKv(KvConfig::Parse("length = 1\n")), DataError);
}

}  // namespace
}  // namespace tinygait
