// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/reward.h"

#include <cmath>

#include "tinygait/error.h"

namespace tinygait {

void RewardWeights::Validate() const {
  if (!(dt > 0.0)) throw DomainError("reward dt must be positive");
  if (!(sigma_sq > 0.0)) throw DomainError("tracking sigma must be positive");
}

double TrackingKernel(double error, double sigma_sq) {
  return std::exp(-(error * error) / sigma_sq);
}

RewardTerms RewardStep(const PlantState& s, const VelocityCommand& cmd,
                       const RewardWeights& w) {
  w.Validate();
  RewardTerms r;
  r.lin_track = w.lin_track * w.dt * TrackingKernel(cmd.v_x - s.v_b[0], w.sigma_sq);
  r.ang_track = w.ang_track * w.dt * TrackingKernel(cmd.w_z - s.w_b[2], w.sigma_sq);
  r.lin_penalty = -w.lin_penalty * w.dt * (s.v_b[1] * s.v_b[1]);
  r.ang_penalty =
      -w.ang_penalty * w.dt * (s.w_b[0] * s.w_b[0] + s.w_b[1] * s.w_b[1]);
  double air = 0.0;
  for (int f = 0; f < kNumLegs; ++f) {
    if (s.touchdown[f]) air += s.air_time[f] - w.air_time_target;
  }
  r.air_time = w.air_time * w.dt * air;
  r.total = r.lin_track + r.ang_track + r.lin_penalty + r.ang_penalty + r.air_time;
  return r;
}

}  // namespace tinygait
