// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_GAIT_SELECT_H_
#define TINYGAIT_GAIT_SELECT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tinygait/cost_model.h"

namespace tinygait {

// Ordered slowest to fastest; the order is also the tie-break preference.
enum class GaitRegime : std::uint8_t { kTrot = 0, kIntermediate = 1, kGallop = 2 };

inline constexpr std::array<GaitRegime, 3> kAllGaits = {
    GaitRegime::kTrot, GaitRegime::kIntermediate, GaitRegime::kGallop};

std::string ToString(GaitRegime g);
GaitRegime ParseGaitRegime(const std::string& name);

// Reward ratio sampled at strictly increasing update frequencies.
class RewardCurve {
 public:
  RewardCurve() = default;
  // Throws DataError unless >= 2 points, f strictly increasing and every
  // reward finite and >= 0.
  explicit RewardCurve(std::vector<std::pair<double, double>> points);

  // Piecewise-linear; clamps to the end values outside the sampled range.
  double RewardAt(double f_update_hz) const;
  // Smallest f in the sampled range with RewardAt(f) >= r_min. Throws
  // DomainError when the curve never reaches r_min.
  double MinFrequencyFor(double r_min) const;

  const std::vector<std::pair<double, double>>& points() const { return points_; }
  double min_frequency() const { return points_.front().first; }
  double max_frequency() const { return points_.back().first; }

 private:
  std::vector<std::pair<double, double>> points_;
};

struct GaitTable {
  std::array<RewardCurve, 3> curves;
  double v_trot_max = 0.025;  // m/s
  double v_intermediate_max = 0.075;

  const RewardCurve& curve(GaitRegime g) const {
    return curves[static_cast<std::size_t>(g)];
  }
  void Validate() const;

  // CSV with header `gait,f_update_hz,reward_ratio`; rows for one gait may be
  // interleaved with others but must be in increasing f order.
  static GaitTable FromCsv(const std::string& text);
  static GaitTable Load(const std::filesystem::path& path);
  std::string ToCsv() const;
};

GaitRegime ClassifyGait(double v_cmd, const GaitTable& table);

struct GaitChoice {
  GaitRegime gait = GaitRegime::kTrot;
  double reward = 0.0;
};

// argmax_g R_g(f_update); exact ties go to the slower gait.
GaitChoice SelectGait(const GaitTable& table, double f_update_hz);

struct PowerGaitChoice {
  GaitRegime gait = GaitRegime::kTrot;
  double f_update_max_hz = 0.0;
  double reward = 0.0;
};

PowerGaitChoice SelectGaitForPower(const GaitTable& table, const PowerParams& p,
                                   double cycles);

}  // namespace tinygait

#endif  // TINYGAIT_GAIT_SELECT_H_
