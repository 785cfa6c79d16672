// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_REWARD_H_
#define TINYGAIT_REWARD_H_

#include "tinygait/plant.h"

namespace tinygait {

struct VelocityCommand {
  double v_x = 0.0;  // m/s, forward
  double w_z = 0.0;  // rad/s, yaw
};

// Term coefficients; each is multiplied by dt.
struct RewardWeights {
  double dt = 1.0 / 120.0;
  double lin_track = 1.0;
  double ang_track = 0.5;
  double lin_penalty = 0.5;
  double ang_penalty = 0.05;
  double air_time = 1.0;
  double sigma_sq = 0.25;  // tracking kernel exp(-e^2 / sigma^2)
  double air_time_target = 0.5;

  void Validate() const;
};

struct RewardTerms {
  double lin_track = 0.0;
  double ang_track = 0.0;
  double lin_penalty = 0.0;  // <= 0
  double ang_penalty = 0.0;  // <= 0
  double air_time = 0.0;
  double total = 0.0;
};

double TrackingKernel(double error, double sigma_sq);

// Weighted per-step reward. The air-time term only counts feet whose
// touchdown flag is set on this step.
RewardTerms RewardStep(const PlantState& s, const VelocityCommand& cmd,
                       const RewardWeights& w);

}  // namespace tinygait

#endif  // TINYGAIT_REWARD_H_
