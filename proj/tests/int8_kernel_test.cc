// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/int8_kernel.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_util.h"
#include "tinygait/error.h"

namespace tinygait {
namespace {

TEST(InferInt8Test, BitExactAgainstBigIntOracle) {
  for (int seed = 0; seed < 20; ++seed) {
    const QuantScheme scheme = seed % 2 ? QuantScheme::kPerFeature : QuantScheme::kPerTensor;
    const QuantizedPolicy qp = QuantizePolicy(testing::RandomPolicy(seed), scheme,
                                              testing::RandomObservations(500 + seed, 64));
    for (const auto& obs : testing::RandomObservations(900 + seed, 20)) {
      const auto q = QuantizeObs(obs, qp.observation.scale, qp.observation.zero_point);
      const Int8Result got = InferInt8(qp, q);
      const oracle::Int8Reference want = oracle::InferInt8(qp, q);
      ASSERT_EQ(got.action, want.action) << "seed " << seed;
      ASSERT_EQ(got.counters, want.counters);
    }
  }
}

// Extreme inputs drive every accumulator to its saturation rails.
TEST(InferInt8Test, BitExactOnRailInputs) {
  const QuantizedPolicy qp = QuantizePolicy(testing::RandomPolicy(77), QuantScheme::kPerFeature,
                                            testing::RandomObservations(78, 8));
  std::mt19937 rng(79);
  std::bernoulli_distribution coin;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int8_t> q(24);
    for (auto& v : q) v = coin(rng) ? 127 : -128;
    EXPECT_EQ(InferInt8(qp, q).action, oracle::InferInt8(qp, q).action);
  }
}

TEST(InferInt8Test, CountersForLocomotionNetwork) {
  const auto calib = testing::RandomObservations(1, 8);
  const Fp32Policy p = testing::RandomPolicy(1);
  const std::vector<std::int8_t> zeros(24, 0);
  const OpCounters pt = InferInt8(QuantizePolicy(p, QuantScheme::kPerTensor, calib), zeros).counters;
  EXPECT_EQ(pt.macs, 11776u);
  EXPECT_EQ(pt.activations, 192u);
  EXPECT_EQ(pt.requants, 200u);
  EXPECT_EQ(pt.param_loads, 0u);
  const OpCounters pf = InferInt8(QuantizePolicy(p, QuantScheme::kPerFeature, calib), zeros).counters;
  EXPECT_EQ(pf.macs, 11776u);
  EXPECT_EQ(pf.param_loads, 200u);
}

TEST(InferInt8Test, RejectsWrongWidth) {
  const QuantizedPolicy qp = QuantizePolicy(testing::RandomPolicy(2), QuantScheme::kPerTensor,
                                            testing::RandomObservations(2, 4));
  EXPECT_THROW(InferInt8(qp, std::vector<std::int8_t>(23)), ShapeError);
}

TEST(LeakyReluInt8Test, IdentityAboveZeroPoint) {
  const RequantParams slope = DeriveRequant(0.01);
  for (int z = -128; z <= 127; z += 5) {
    for (int y = z; y <= 127; ++y) {
      EXPECT_EQ(LeakyReluInt8(static_cast<std::int8_t>(y), static_cast<std::int8_t>(z), slope), y);
    }
  }
}

TEST(LeakyReluInt8Test, ExhaustiveAgainstOracle) {
  for (double alpha : {0.01, 0.1, 0.2, 0.5, 1.0}) {
    const RequantParams slope = DeriveRequant(alpha);
    for (int z = -128; z <= 127; ++z) {
      for (int y = -128; y <= 127; ++y) {
        const auto y8 = static_cast<std::int8_t>(y);
        const auto z8 = static_cast<std::int8_t>(z);
        ASSERT_EQ(LeakyReluInt8(y8, z8, slope), oracle::Leaky(y8, z, slope));
        // Output stays between the input and the zero-point.
        const int out = LeakyReluInt8(y8, z8, slope);
        if (y < z) {
          EXPECT_GE(out, y);
          EXPECT_LE(out, z);
        }
      }
    }
  }
}

TEST(QuantizeObsTest, RoundsAndClips) {
  const std::vector<float> obs = {0.0f, 0.26f, -0.24f, 100.0f, -100.0f};
  const auto q = QuantizeObs(obs, 0.5f, 3);
  EXPECT_EQ(q[0], 3);
  EXPECT_EQ(q[1], 4);
  EXPECT_EQ(q[2], 3);
  EXPECT_EQ(q[3], 127);
  EXPECT_EQ(q[4], -128);
}

// The integer pipeline tracks the float network to within a few output
// quantization steps on in-distribution inputs.
TEST(FusedInferDequantTest, CloseToFloat) {
  const Fp32Policy p = testing::RandomPolicy(31);
  const auto calib = testing::RandomObservations(32, 256);
  const QuantizedPolicy qp = QuantizePolicy(p, QuantScheme::kPerFeature, calib);
  double worst = 0.0;
  for (int n = 0; n < 64; ++n) {
    const auto ref = InferFp32(p, calib[n]);
    const auto got = FusedInferDequant(qp, calib[n]);
    for (int k = 0; k < 8; ++k) worst = std::max(worst, double(std::abs(ref[k] - got[k])));
  }
  EXPECT_LT(worst, 16 * qp.action().scale);
}

}  // namespace
}  // namespace tinygait
