// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/kinematics.h"

#include <cmath>
#include <string>

namespace tinygait {
namespace {

double CheckedAsin(double arg, const char* equation) {
  if (!(std::abs(arg) <= 1.0)) throw WorkspaceError(equation, arg);
  return std::asin(arg);
}

void ApplyKey(LegGeometry& g, const std::string& key, double v) {
  if (key == "l_x") g.l_x = v;
  else if (key == "l_y") g.l_y = v;
  else if (key == "x_motor_ref") g.x_motor_ref = v;
  else if (key == "y_motor_ref") g.y_motor_ref = v;
  else throw DataError("unknown geometry key '" + key + "'");
}

}  // namespace

WorkspaceError::WorkspaceError(const char* equation, double argument)
    : DomainError(std::string("target out of workspace: ") + equation +
                  " arcsine argument " + std::to_string(argument) +
                  " outside [-1, 1]"),
      equation_(equation),
      argument_(argument) {}

void LegGeometry::Validate() const {
  if (!(l_x > 0.0) || !(l_y > 0.0) || !std::isfinite(l_x) ||
      !std::isfinite(l_y)) {
    throw DomainError("linkage lengths must be positive and finite");
  }
  if (!std::isfinite(x_motor_ref) || !std::isfinite(y_motor_ref)) {
    throw DomainError("motor reference must be finite");
  }
}

IkSolution Ik(const LegGeometry& g, const EndEffector& e) {
  g.Validate();
  IkSolution s;
  s.theta_y = CheckedAsin((e.x_end - g.x_motor_ref) / g.l_y, "theta_y");
  s.theta_x = CheckedAsin(
      (e.y_end + (0.5 * g.l_y * std::cos(s.theta_y) - g.y_motor_ref)) / g.l_x,
      "theta_x");
  s.x_motor = e.x_end - 0.5 * g.l_y * std::sin(s.theta_y) -
              g.l_x * std::cos(s.theta_x);
  s.y_motor = e.y_end + g.l_y * std::cos(s.theta_y);
  return s;
}

EndEffector FkOracle(const LegGeometry& g, double theta_x, double theta_y) {
  g.Validate();
  return {g.x_motor_ref + g.l_y * std::sin(theta_y),
          g.y_motor_ref + g.l_x * std::sin(theta_x) -
              0.5 * g.l_y * std::cos(theta_y)};
}

std::array<MotorTarget, kNumLegs> ActionToMotorTargets(
    std::span<const float> action, const LegGeometries& geoms) {
  if (action.size() != 2 * kNumLegs) {
    throw ShapeError("action must have " + std::to_string(2 * kNumLegs) +
                     " components");
  }
  std::array<MotorTarget, kNumLegs> out;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const double tx = action[2 * leg];
    const double ty = action[2 * leg + 1];
    const IkSolution s = Ik(geoms[leg], FkOracle(geoms[leg], tx, ty));
    out[leg] = {s.x_motor, s.y_motor};
  }
  return out;
}

LegGeometries GeometriesFromKv(const KvConfig& kv) {
  LegGeometries geoms;
  // Shared keys first so that per-leg overrides win regardless of file order.
  for (const auto& [key, value] : kv.values()) {
    if (key.rfind("leg", 0) == 0) continue;
    const double v = ParseDouble(value, key);
    for (LegGeometry& g : geoms) ApplyKey(g, key, v);
  }
  for (const auto& [key, value] : kv.values()) {
    if (key.rfind("leg", 0) != 0) continue;
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot != 4 || key[3] < '0' ||
        key[3] >= '0' + kNumLegs) {
      throw DataError("bad per-leg geometry key '" + key + "'");
    }
    ApplyKey(geoms[key[3] - '0'], key.substr(dot + 1), ParseDouble(value, key));
  }
  for (const LegGeometry& g : geoms) g.Validate();
  return geoms;
}

}  // namespace tinygait
