// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

// Seeded generators shared by the unit and acceptance suites.

#ifndef TINYGAIT_TESTS_TEST_UTIL_H_
#define TINYGAIT_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tinygait/policy.h"

namespace tinygait::testing {

// Gaussian weights with Xavier-style variance. Each output row is scaled by
// a log-uniform factor in [0.01, 1], so rows differ in magnitude the way
// trained layers do.
inline Fp32Policy RandomPolicy(std::uint64_t seed,
                               const PolicySpec& spec = PolicySpec::Locomotion(
                                   ActivationSpec::LeakyRelu())) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> normal(0.0f, 1.0f);
  std::uniform_real_distribution<float> log_scale(std::log(0.01f), 0.0f);
  Fp32Policy p = Fp32Policy::Zeros(spec);
  for (DenseLayer& layer : p.layers) {
    const float std_dev = std::sqrt(2.0f / static_cast<float>(layer.in + layer.out));
    for (int i = 0; i < layer.out; ++i) {
      const float row_scale = std::exp(log_scale(rng));
      for (int j = 0; j < layer.in; ++j) {
        layer.weights[static_cast<std::size_t>(i) * layer.in + j] =
            row_scale * std_dev * normal(rng);
      }
      layer.bias[i] = 0.1f * normal(rng);
    }
  }
  return p;
}

inline std::vector<std::vector<float>> RandomObservations(std::uint64_t seed,
                                                          int count, int width = 24) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> normal(0.0f, 1.0f);
  std::vector<std::vector<float>> out(count, std::vector<float>(width));
  for (auto& obs : out) {
    for (float& v : obs) v = normal(rng);
  }
  return out;
}

}  // namespace tinygait::testing

#endif  // TINYGAIT_TESTS_TEST_UTIL_H_
