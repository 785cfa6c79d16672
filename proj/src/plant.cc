// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/plant.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tinygait/error.h"

namespace tinygait {
namespace {

// +1 for left legs, -1 for right legs.
constexpr std::array<double, kNumLegs> kSide = {1.0, -1.0, 1.0, -1.0};
// +1 for front legs, -1 for rear legs.
constexpr std::array<double, kNumLegs> kFront = {1.0, 1.0, -1.0, -1.0};

double LagBlend(double dt, double tau) { return -std::expm1(-dt / tau); }

}  // namespace

void PlantState::Validate() const {
  auto finite = [](const auto& arr) {
    return std::all_of(arr.begin(), arr.end(),
                       [](double v) { return std::isfinite(v); });
  };
  if (!std::isfinite(t) || !std::isfinite(x) || !finite(v_b) || !finite(w_b) ||
      !finite(tilt) || !finite(q) || !finite(qd) || !finite(q_target) ||
      !finite(air_time)) {
    throw DomainError("plant state is not finite");
  }
  for (double a : air_time) {
    if (a < 0.0) throw DomainError("negative air timer");
  }
}

PlantState PlantStep(const PlantState& s, std::span<const double> targets,
                     double dt, const PlantParams& p) {
  if (targets.size() != kNumJoints) {
    throw ShapeError("plant expects 8 joint targets");
  }
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  PlantState n = s;
  n.t = s.t + dt;

  const double lo = -p.joint_limit + p.dof_lower_offset;
  const double hi = p.joint_limit + p.dof_upper_offset;
  const double wn = 2.0 * std::numbers::pi * p.joint_natural_hz *
                    std::sqrt(p.stiffness_scale);
  const double zeta = p.joint_damping_ratio * p.damping_scale;
  for (int j = 0; j < kNumJoints; ++j) {
    n.q_target[j] = std::clamp(targets[j], lo, hi);
    const double acc =
        wn * wn * (n.q_target[j] - s.q[j]) - 2.0 * zeta * wn * s.qd[j];
    n.qd[j] = s.qd[j] + acc * dt;
    n.q[j] = s.q[j] + n.qd[j] * dt;
  }

  double drive = 0.0;
  double side_drive = 0.0;
  double support_front = 0.0;
  double support_side = 0.0;
  double kick = 0.0;
  int stance = 0;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const bool down = n.q[2 * leg] <= 0.0;
    if (down) {
      const double stride_rate = -n.qd[2 * leg + 1];
      drive += stride_rate;
      side_drive += kSide[leg] * stride_rate;
      support_front += kFront[leg];
      support_side += kSide[leg];
      ++stance;
    }
    if (down) {
      if (!s.contact[leg] && s.air_time[leg] > 0.0) {
        n.touchdown[leg] = true;
        kick += std::abs(n.qd[2 * leg]);
      } else {
        n.touchdown[leg] = false;
        n.air_time[leg] = 0.0;
      }
    } else {
      n.touchdown[leg] = false;
      n.air_time[leg] = (s.touchdown[leg] ? 0.0 : s.air_time[leg]) + dt;
    }
    n.contact[leg] = down;
  }
  if (stance > 0) {
    drive /= stance;
    side_drive /= stance;
    support_front /= stance;
    support_side /= stance;
  }

  const double blend = LagBlend(dt, p.velocity_lag_s * p.mass_scale);
  const double traction = p.traction();
  n.v_b[0] = s.v_b[0] + (p.stride_gain * traction * drive - s.v_b[0]) * blend;
  n.v_b[1] = s.v_b[1] + (p.lateral_gain * traction * side_drive - s.v_b[1]) * blend;
  n.v_b[2] = 0.0;
  n.w_b[2] = s.w_b[2] + (p.yaw_gain * traction * side_drive - s.w_b[2]) * blend;

  const double tilt_blend = LagBlend(dt, p.tilt_lag_s * p.mass_scale);
  const double kick_tilt = p.touchdown_kick * p.restitution_scale * kick;
  const std::array<double, 2> tilt_target = {
      p.tilt_gain * support_side + kick_tilt,
      p.tilt_gain * support_front + kick_tilt};
  for (int k = 0; k < 2; ++k) {
    n.tilt[k] = s.tilt[k] + (tilt_target[k] - s.tilt[k]) * tilt_blend;
    n.w_b[k] = (n.tilt[k] - s.tilt[k]) / dt;
  }
  n.x = s.x + n.v_b[0] * dt;
  return n;
}

std::array<double, 3> ProjectedGravity(const PlantState& s, const PlantParams& p) {
  const double roll = s.tilt[0];
  const double pitch = s.tilt[1];
  return {-std::sin(pitch) + p.gravity_offset[0],
          std::sin(roll) * std::cos(pitch) + p.gravity_offset[1],
          -std::cos(roll) * std::cos(pitch) + p.gravity_offset[2]};
}

}  // namespace tinygait
