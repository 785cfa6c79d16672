// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/domain_randomization.h"

#include <cmath>

#include "tinygait/error.h"

namespace tinygait {
namespace {

void CheckGaussian(const GaussianRange& g, const char* name) {
  if (!std::isfinite(g.mean) || !(g.stddev >= 0.0) || !std::isfinite(g.stddev)) {
    throw DataError(std::string(name) + ": stddev must be finite and >= 0");
  }
}

void CheckUniform(const UniformRange& u, const char* name) {
  if (!std::isfinite(u.lo) || !std::isfinite(u.hi) || u.lo > u.hi) {
    throw DataError(std::string(name) + ": range lower bound exceeds upper");
  }
}

}  // namespace

DRConfig DRConfig::TrainingDefaults() {
  DRConfig c;
  c.observation = {0.0, 0.002};
  c.action = {0.0, 0.02};
  c.gravity = {0.0, 0.4};
  c.mass = {0.05, 0.15};
  c.friction = {0.07, 0.13};
  c.restitution = {0.0, 0.7};
  c.damping = {0.5, 1.5};
  c.stiffness = {0.5, 1.5};
  c.dof_lower = {0.0, 0.01};
  c.dof_upper = {0.0, 0.01};
  return c;
}

void DRConfig::Validate() const {
  CheckGaussian(observation, "observation");
  CheckGaussian(action, "action");
  CheckGaussian(gravity, "gravity");
  CheckGaussian(dof_lower, "dof_lower");
  CheckGaussian(dof_upper, "dof_upper");
  CheckUniform(mass, "mass");
  CheckUniform(friction, "friction");
  CheckUniform(restitution, "restitution");
  CheckUniform(damping, "damping");
  CheckUniform(stiffness, "stiffness");
}

double DrawGaussian(const GaussianRange& r, std::mt19937_64& rng) {
  if (r.stddev == 0.0) return r.mean;
  return std::normal_distribution<double>(r.mean, r.stddev)(rng);
}

double DrawUniform(const UniformRange& r, std::mt19937_64& rng) {
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

PerturbationSet SampleDr(const DRConfig& cfg, std::uint64_t seed) {
  cfg.Validate();
  std::mt19937_64 rng(seed);
  PerturbationSet p;
  p.observation_noise = cfg.observation;
  p.action_noise = cfg.action;
  for (double& g : p.gravity_offset) g = DrawGaussian(cfg.gravity, rng);
  p.mass_scale = DrawUniform(cfg.mass, rng);
  p.friction_scale = DrawUniform(cfg.friction, rng);
  p.restitution_scale = DrawUniform(cfg.restitution, rng);
  p.damping_scale = DrawUniform(cfg.damping, rng);
  p.stiffness_scale = DrawUniform(cfg.stiffness, rng);
  p.dof_lower_offset = DrawGaussian(cfg.dof_lower, rng);
  p.dof_upper_offset = DrawGaussian(cfg.dof_upper, rng);
  return p;
}

PlantParams PerturbationSet::Apply(PlantParams nominal) const {
  nominal.mass_scale *= mass_scale;
  nominal.friction_scale *= friction_scale;
  nominal.restitution_scale *= restitution_scale;
  nominal.damping_scale *= damping_scale;
  nominal.stiffness_scale *= stiffness_scale;
  nominal.dof_lower_offset += dof_lower_offset;
  nominal.dof_upper_offset += dof_upper_offset;
  for (int k = 0; k < 3; ++k) nominal.gravity_offset[k] += gravity_offset[k];
  return nominal;
}

}  // namespace tinygait
