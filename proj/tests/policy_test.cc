// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/policy.h"

#include <cmath>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"
#include "tinygait/error.h"

namespace tinygait {
namespace {

TEST(CountsTest, LocomotionNetwork) {
  const PolicySpec spec = PolicySpec::Locomotion();
  EXPECT_EQ(MacCount(spec), 11776);
  EXPECT_EQ(ParamCount(spec), 11976);
  EXPECT_EQ(ActivationCount(spec), 192);
  EXPECT_EQ(NeuronCount(spec), 200);
  EXPECT_EQ(Fp32PayloadBytes(spec), 47904);
}

// Counts from materialized tensors must agree with the closed forms for any
// layer stack.
TEST(CountsTest, MatchTensorSizesOnRandomStacks) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> depth(1, 6);
  std::uniform_int_distribution<int> width(1, 300);
  for (int trial = 0; trial < 200; ++trial) {
    PolicySpec spec;
    spec.hidden_activation = ActivationSpec::Elu();
    const int n = depth(rng);
    for (int i = 0; i <= n; ++i) spec.layer_dims.push_back(width(rng));
    const Fp32Policy p = Fp32Policy::Zeros(spec);
    std::int64_t weights = 0, biases = 0;
    for (const DenseLayer& l : p.layers) {
      weights += static_cast<std::int64_t>(l.weights.size());
      biases += static_cast<std::int64_t>(l.bias.size());
    }
    EXPECT_EQ(MacCount(spec), weights);
    EXPECT_EQ(ParamCount(spec), weights + biases);
    EXPECT_EQ(NeuronCount(spec), biases);
    EXPECT_EQ(ActivationCount(spec), biases - spec.output_dim());
  }
}

TEST(ActivationTest, EluAndLeaky) {
  const auto elu = ActivationSpec::Elu();
  const auto leaky = ActivationSpec::LeakyRelu();
  EXPECT_FLOAT_EQ(Activate(elu, 2.0f), 2.0f);
  EXPECT_FLOAT_EQ(Activate(elu, -1.0f), std::expm1(-1.0f));
  EXPECT_FLOAT_EQ(Activate(leaky, 3.0f), 3.0f);
  EXPECT_FLOAT_EQ(Activate(leaky, -3.0f), -0.03f);
  EXPECT_FLOAT_EQ(Activate(ActivationSpec::Elu(0.5f), -2.0f), 0.5f * std::expm1(-2.0f));
}

TEST(ActivationTest, RejectsBadAlpha) {
  EXPECT_THROW(ActivationSpec::Elu(0.0f).Validate(), DomainError);
  EXPECT_THROW(ActivationSpec::Elu(NAN).Validate(), DomainError);
  EXPECT_THROW(ActivationSpec::LeakyRelu(1.5f).Validate(), DomainError);
}

// Double-precision forward pass written out longhand.
std::vector<double> ReferenceForward(const Fp32Policy& p, const std::vector<float>& obs) {
  std::vector<double> x(obs.begin(), obs.end());
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const DenseLayer& L = p.layers[l];
    std::vector<double> y(L.out);
    for (int i = 0; i < L.out; ++i) {
      double acc = L.bias[i];
      for (int j = 0; j < L.in; ++j) acc += double{L.w(i, j)} * x[j];
      if (l + 1 < p.layers.size() && acc < 0) {
        acc = p.spec.hidden_activation.kind == ActivationKind::kElu
                  ? p.spec.hidden_activation.alpha * std::expm1(acc)
                  : p.spec.hidden_activation.alpha * acc;
      }
      y[i] = acc;
    }
    x = std::move(y);
  }
  return x;
}

TEST(InferFp32Test, MatchesDoubleReference) {
  for (ActivationSpec act : {ActivationSpec::Elu(), ActivationSpec::LeakyRelu()}) {
    for (int seed = 0; seed < 20; ++seed) {
      const Fp32Policy p = testing::RandomPolicy(seed, PolicySpec::Locomotion(act));
      for (const auto& obs : testing::RandomObservations(100 + seed, 10)) {
        const auto got = InferFp32(p, obs);
        const auto want = ReferenceForward(p, obs);
        ASSERT_EQ(got.size(), 8u);
        for (int k = 0; k < 8; ++k) EXPECT_NEAR(got[k], want[k], 1e-4);
      }
    }
  }
}

TEST(InferFp32Test, OutputLayerIsLinear) {
  Fp32Policy p = Fp32Policy::Zeros(PolicySpec::Locomotion());
  p.layers.back().bias.assign(8, -5.0f);
  const auto out = InferFp32(p, std::vector<float>(24, 0.0f));
  for (float v : out) EXPECT_EQ(v, -5.0f);
}

TEST(InferFp32Test, RejectsWrongWidth) {
  const Fp32Policy p = Fp32Policy::Zeros(PolicySpec::Locomotion());
  EXPECT_THROW(InferFp32(p, std::vector<float>(23)), ShapeError);
  EXPECT_THROW(InferFp32(p, std::vector<float>(25)), ShapeError);
}

TEST(SerializeTest, RoundTripIsExact) {
  const Fp32Policy p = testing::RandomPolicy(3, PolicySpec::Locomotion());
  const auto bytes = SerializePolicy(p);
  const Fp32Policy q = DeserializePolicy(bytes);
  EXPECT_EQ(q.spec.layer_dims, p.spec.layer_dims);
  EXPECT_EQ(q.spec.hidden_activation.kind, p.spec.hidden_activation.kind);
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    EXPECT_EQ(q.layers[l].weights, p.layers[l].weights);
    EXPECT_EQ(q.layers[l].bias, p.layers[l].bias);
  }
  // Header plus exactly the fp32 payload.
  const std::size_t header = 4 + 1 + 2 * 4 + 1 + 4;
  EXPECT_EQ(bytes.size(), header + static_cast<std::size_t>(Fp32PayloadBytes(p.spec)));
}

TEST(SerializeTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "tinygait_policy_test.tgp";
  const Fp32Policy p = testing::RandomPolicy(4);
  SavePolicy(p, path);
  const Fp32Policy q = LoadPolicy(path);
  EXPECT_EQ(q.layers[1].weights, p.layers[1].weights);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadPolicy(path), DataError);
}

TEST(SerializeTest, RejectsDamage) {
  const auto bytes = SerializePolicy(testing::RandomPolicy(5));
  auto bad_magic = bytes;
  bad_magic[0] ^= 0xFF;
  EXPECT_THROW(DeserializePolicy(bad_magic), FormatError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(DeserializePolicy(truncated), FormatError);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(DeserializePolicy(trailing), FormatError);
  auto bad_kind = bytes;
  bad_kind[4 + 1 + 8] = 9;
  EXPECT_THROW(DeserializePolicy(bad_kind), FormatError);
}

TEST(ObservationLayoutTest, DefaultsFillTheInput) {
  for (const auto& layout : {ObservationLayout::Default(), ObservationLayout::WithCommand()}) {
    EXPECT_EQ(layout.size(), 24);
    int offset = 0;
    for (const auto& seg : layout.segments()) {
      EXPECT_EQ(layout.Offset(seg.field), offset);
      offset += seg.width;
    }
  }
  EXPECT_EQ(ObservationLayout::Default().Offset(ObservationField::kCommand), -1);
  EXPECT_EQ(ObservationLayout::Default().Offset(ObservationField::kJointPosition), 9);
}

}  // namespace
}  // namespace tinygait
