// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/gait_select.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tinygait/error.h"
#include "tinygait/kv_config.h"

namespace tinygait {
namespace {

std::string Strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  return s;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(Strip(f));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string ToString(GaitRegime g) {
  switch (g) {
    case GaitRegime::kTrot: return "trot";
    case GaitRegime::kIntermediate: return "intermediate";
    case GaitRegime::kGallop: return "gallop";
  }
  return "unknown";
}

GaitRegime ParseGaitRegime(const std::string& name) {
  for (GaitRegime g : kAllGaits) {
    if (ToString(g) == name) return g;
  }
  throw DataError("unknown gait '" + name + "'");
}

RewardCurve::RewardCurve(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) throw DataError("reward curve needs at least 2 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto [f, r] = points_[i];
    if (!std::isfinite(f) || !std::isfinite(r) || r < 0.0) {
      throw DataError("reward curve point must be finite with reward >= 0");
    }
    if (i > 0 && !(f > points_[i - 1].first)) {
      throw DataError("reward curve frequencies must be strictly increasing");
    }
  }
}

double RewardCurve::RewardAt(double f) const {
  if (points_.empty()) throw DataError("empty reward curve");
  if (f <= points_.front().first) return points_.front().second;
  if (f >= points_.back().first) return points_.back().second;
  std::size_t hi = 1;
  while (points_[hi].first < f) ++hi;
  const auto [f0, r0] = points_[hi - 1];
  const auto [f1, r1] = points_[hi];
  if (f == f1) return r1;
  const double t = (f - f0) / (f1 - f0);
  return r0 + t * (r1 - r0);
}

double RewardCurve::MinFrequencyFor(double r_min) const {
  if (points_.empty()) throw DataError("empty reward curve");
  if (points_.front().second >= r_min) return points_.front().first;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto [f0, r0] = points_[i - 1];
    const auto [f1, r1] = points_[i];
    if (r1 >= r_min) {
      // r0 < r_min <= r1, so the crossing lies inside this segment.
      const double t = (r_min - r0) / (r1 - r0);
      return std::min(f1, f0 + t * (f1 - f0));
    }
  }
  throw DomainError("reward curve never reaches " + std::to_string(r_min));
}

void GaitTable::Validate() const {
  if (!(v_trot_max > 0.0) || !(v_intermediate_max > v_trot_max)) {
    throw DataError("gait thresholds must be positive and strictly increasing");
  }
  for (GaitRegime g : kAllGaits) {
    if (curve(g).points().size() < 2) {
      throw DataError("missing reward curve for gait " + ToString(g));
    }
  }
}

GaitTable GaitTable::FromCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::array<std::vector<std::pair<double, double>>, 3> pts;
  while (std::getline(in, line)) {
    ++line_no;
    line = Strip(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = SplitCsv(line);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"gait", "f_update_hz", "reward_ratio"}) {
        throw DataError("gait CSV header must be gait,f_update_hz,reward_ratio");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw DataError("gait CSV line " + std::to_string(line_no) +
                      ": expected 3 fields");
    }
    const GaitRegime g = ParseGaitRegime(fields[0]);
    const std::string where = "gait CSV line " + std::to_string(line_no);
    auto& v = pts[static_cast<std::size_t>(g)];
    const double f = ParseDouble(fields[1], where);
    if (!v.empty() && !(f > v.back().first)) {
      throw DataError(where + ": f_update_hz not increasing for gait " +
                      fields[0]);
    }
    v.emplace_back(f, ParseDouble(fields[2], where));
  }
  if (!header_seen) throw DataError("gait CSV is empty");
  GaitTable table;
  for (GaitRegime g : kAllGaits) {
    auto& v = pts[static_cast<std::size_t>(g)];
    if (v.size() < 2) {
      throw DataError("gait CSV needs at least 2 points for " + ToString(g));
    }
    table.curves[static_cast<std::size_t>(g)] = RewardCurve(std::move(v));
  }
  table.Validate();
  return table;
}

GaitTable GaitTable::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return FromCsv(ss.str());
}

std::string GaitTable::ToCsv() const {
  std::ostringstream out;
  out.precision(17);
  out << "gait,f_update_hz,reward_ratio\n";
  for (GaitRegime g : kAllGaits) {
    for (const auto& [f, r] : curve(g).points()) {
      out << ToString(g) << ',' << f << ',' << r << '\n';
    }
  }
  return out.str();
}

GaitRegime ClassifyGait(double v_cmd, const GaitTable& table) {
  if (!(v_cmd >= 0.0) || !std::isfinite(v_cmd)) {
    throw DomainError("command velocity must be finite and >= 0");
  }
  if (v_cmd < table.v_trot_max) return GaitRegime::kTrot;
  if (v_cmd < table.v_intermediate_max) return GaitRegime::kIntermediate;
  return GaitRegime::kGallop;
}

GaitChoice SelectGait(const GaitTable& table, double f_update_hz) {
  GaitChoice best{GaitRegime::kTrot, table.curve(GaitRegime::kTrot).RewardAt(f_update_hz)};
  for (GaitRegime g : {GaitRegime::kIntermediate, GaitRegime::kGallop}) {
    const double r = table.curve(g).RewardAt(f_update_hz);
    if (r > best.reward) best = {g, r};
  }
  return best;
}

PowerGaitChoice SelectGaitForPower(const GaitTable& table, const PowerParams& p,
                                   double cycles) {
  const double f = FeasibleUpdateRate(p, cycles);
  const GaitChoice c = SelectGait(table, f);
  return {c.gait, f, c.reward};
}

}  // namespace tinygait
