// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_KINEMATICS_H_
#define TINYGAIT_KINEMATICS_H_

#include <array>
#include <filesystem>
#include <span>

#include "tinygait/error.h"
#include "tinygait/kv_config.h"

namespace tinygait {

inline constexpr int kNumLegs = 4;

// Linkage lengths and prismatic-motor reference location of one leg, meters.
struct LegGeometry {
  double l_x = 1.0;
  double l_y = 1.0;
  double x_motor_ref = 0.0;
  double y_motor_ref = 0.0;

  void Validate() const;
};

struct EndEffector {
  double x_end = 0.0;
  double y_end = 0.0;
};

struct IkSolution {
  double theta_x = 0.0;
  double theta_y = 0.0;
  double x_motor = 0.0;
  double y_motor = 0.0;
};

// Raised when an arcsine argument leaves [-1, 1].
class WorkspaceError : public DomainError {
 public:
  WorkspaceError(const char* equation, double argument);
  const char* equation() const { return equation_; }
  double argument() const { return argument_; }

 private:
  const char* equation_;
  double argument_;
};

// Closed-form leg IK (principal arcsine branch):
//   theta_y = asin((x_end - x_ref) / l_y)
//   theta_x = asin((y_end + (0.5 l_y cos theta_y - y_ref)) / l_x)
//   x_motor = x_end - 0.5 l_y sin theta_y - l_x cos theta_x
//   y_motor = y_end + l_y cos theta_y
// The workspace boundary |argument| == 1 is accepted.
IkSolution Ik(const LegGeometry& g, const EndEffector& e);

// Inverse of the two angle equations above:
//   x_end = x_ref + l_y sin theta_y
//   y_end = y_ref + l_x sin theta_x - 0.5 l_y cos theta_y
EndEffector FkOracle(const LegGeometry& g, double theta_x, double theta_y);

using LegGeometries = std::array<LegGeometry, kNumLegs>;

struct MotorTarget {
  double x_motor = 0.0;
  double y_motor = 0.0;
};

// Action layout is per leg (theta_x, theta_y), legs 0..3. Each angle pair is
// mapped to an end-effector with FkOracle and back through Ik.
std::array<MotorTarget, kNumLegs> ActionToMotorTargets(
    std::span<const float> action, const LegGeometries& geoms);

// Keys `l_x`, `l_y`, `x_motor_ref`, `y_motor_ref` set every leg;
// `leg<N>.<key>` overrides leg N. Missing keys keep the defaults.
LegGeometries GeometriesFromKv(const KvConfig& kv);

}  // namespace tinygait

#endif  // TINYGAIT_KINEMATICS_H_
