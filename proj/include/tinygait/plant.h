// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

// Toy quadruped surrogate for closed-loop tests. This is NOT a model of any
// physical robot: it exists to exercise zero-order hold, reward accounting,
// the wire codec and update-frequency sweeps with deterministic dynamics.
//
// Model, per step of length dt:
//   joints   q'' = w^2 (q* - q) - 2 zeta w q'   (semi-implicit Euler)
//   contact  foot f is down while its lift joint theta_x <= 0
//   drive    mean over stance feet of -theta_y' (stride swept backwards)
//   v_x      first-order lag towards stride_gain * traction * drive
//   v_y, w_z first-order lags towards left/right stance imbalance
//   tilt     roll/pitch lag towards front/back and left/right support
//            imbalance plus a touchdown kick scaled by restitution

#ifndef TINYGAIT_PLANT_H_
#define TINYGAIT_PLANT_H_

#include <array>
#include <span>

#include "tinygait/kinematics.h"

namespace tinygait {

inline constexpr int kNumJoints = 2 * kNumLegs;

// Leg order: front-left, front-right, rear-left, rear-right. Joint 2*leg is
// the lift angle theta_x, joint 2*leg+1 the stride angle theta_y.
struct PlantState {
  double t = 0.0;
  double x = 0.0;                       // distance travelled, m
  std::array<double, 3> v_b{};          // base linear velocity, m/s
  std::array<double, 3> w_b{};          // base angular velocity, rad/s
  std::array<double, 2> tilt{};         // roll, pitch (a_b), rad
  std::array<double, kNumJoints> q{};   // joint positions, rad
  std::array<double, kNumJoints> qd{};  // joint velocities, rad/s
  std::array<double, kNumJoints> q_target{};
  std::array<double, kNumLegs> air_time{};  // s since lift-off
  std::array<bool, kNumLegs> contact{true, true, true, true};
  // Set on the step a foot lands; air_time still holds the flight time.
  std::array<bool, kNumLegs> touchdown{};

  void Validate() const;
};

// Nominal toy constants. The *_scale fields are the domain-randomization
// multipliers and are 1 for the nominal plant.
struct PlantParams {
  double joint_natural_hz = 6.0;
  double joint_damping_ratio = 1.0;
  double velocity_lag_s = 0.1;
  double stride_gain = 0.02;   // m per rad of stance stride
  double lateral_gain = 0.004;
  double yaw_gain = 0.05;
  double tilt_gain = 0.1;
  double tilt_lag_s = 0.05;
  double touchdown_kick = 0.03;
  double traction_half = 0.05;  // friction scale giving 50% traction
  double joint_limit = 1.5;     // |q*| clamp before DoF perturbation, rad

  double mass_scale = 1.0;
  double friction_scale = 1.0;
  double restitution_scale = 1.0;
  double damping_scale = 1.0;
  double stiffness_scale = 1.0;
  double dof_lower_offset = 0.0;
  double dof_upper_offset = 0.0;
  std::array<double, 3> gravity_offset{};

  double traction() const {
    return friction_scale / (friction_scale + traction_half);
  }
};

// Advances the plant by dt with joint-angle targets `targets` (8 values,
// clamped to the joint limits). Deterministic.
PlantState PlantStep(const PlantState& s, std::span<const double> targets,
                     double dt, const PlantParams& p);

// Unit gravity direction in the base frame for the current roll/pitch, plus
// the plant's gravity perturbation.
std::array<double, 3> ProjectedGravity(const PlantState& s, const PlantParams& p);

}  // namespace tinygait

#endif  // TINYGAIT_PLANT_H_
