// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_DOMAIN_RANDOMIZATION_H_
#define TINYGAIT_DOMAIN_RANDOMIZATION_H_

#include <array>
#include <cstdint>
#include <random>

#include "tinygait/plant.h"

namespace tinygait {

// Additive Gaussian perturbation: the configured pair is (mean, stddev).
struct GaussianRange {
  double mean = 0.0;
  double stddev = 0.0;
};

// Multiplicative perturbation drawn uniformly from [lo, hi].
struct UniformRange {
  double lo = 1.0;
  double hi = 1.0;
};

struct DRConfig {
  GaussianRange observation;
  GaussianRange action;
  GaussianRange gravity;
  UniformRange mass;
  UniformRange friction;
  UniformRange restitution;
  UniformRange damping;
  UniformRange stiffness;
  GaussianRange dof_lower;
  GaussianRange dof_upper;

  // No perturbation at all.
  static DRConfig None() { return {}; }
  // The randomization table used for training the reference policy.
  static DRConfig TrainingDefaults();

  void Validate() const;
};

// Per-episode draw. Observation/action noise are per-step processes, so the
// set carries their distributions; everything else is drawn once.
struct PerturbationSet {
  GaussianRange observation_noise;
  GaussianRange action_noise;
  std::array<double, 3> gravity_offset{};
  double mass_scale = 1.0;
  double friction_scale = 1.0;
  double restitution_scale = 1.0;
  double damping_scale = 1.0;
  double stiffness_scale = 1.0;
  double dof_lower_offset = 0.0;
  double dof_upper_offset = 0.0;

  PlantParams Apply(PlantParams nominal) const;
};

// Deterministic in (cfg, seed). A zero stddev yields exactly the mean and a
// degenerate [a, a] range yields exactly a.
PerturbationSet SampleDr(const DRConfig& cfg, std::uint64_t seed);

double DrawGaussian(const GaussianRange& r, std::mt19937_64& rng);
double DrawUniform(const UniformRange& r, std::mt19937_64& rng);

}  // namespace tinygait

#endif  // TINYGAIT_DOMAIN_RANDOMIZATION_H_
