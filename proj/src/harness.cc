// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <thread>

#include "tinygait/error.h"
#include "tinygait/gait_select.h"
#include "tinygait/int8_kernel.h"

namespace tinygait {
namespace {

constexpr double kFallAngle = std::numbers::pi / 4.0;

void CheckAction(const std::vector<float>& a) {
  if (a.size() != kNumJoints) {
    throw ShapeError("policy returned " + std::to_string(a.size()) +
                     " actions, expected 8");
  }
  for (float v : a) {
    if (!std::isfinite(v)) throw DomainError("policy returned a non-finite action");
  }
}

template <typename Source>
void FillSegment(std::vector<float>& obs, int offset, int width,
                 const Source& src, ObservationField field) {
  if (width > static_cast<int>(std::size(src))) {
    throw ShapeError("observation segment " + ToString(field) + " wider than " +
                     std::to_string(std::size(src)));
  }
  for (int i = 0; i < width; ++i) obs[offset + i] = static_cast<float>(src[i]);
}

}  // namespace

Fp32Runtime::Fp32Runtime(Fp32Policy policy) : policy_(std::move(policy)) {
  policy_.Validate();
}

std::vector<float> Fp32Runtime::Act(std::span<const float> obs) {
  return InferFp32(policy_, obs);
}

Int8Runtime::Int8Runtime(QuantizedPolicy policy) : policy_(std::move(policy)) {
  policy_.Validate();
}

std::vector<float> Int8Runtime::Act(std::span<const float> obs) {
  return FusedInferDequant(policy_, obs);
}

ScriptedGaitController::ScriptedGaitController(VelocityCommand cmd,
                                               double update_hz,
                                               ObservationLayout layout,
                                               Params params, PlantParams plant)
    : cmd_(cmd), update_hz_(update_hz), layout_(std::move(layout)), params_(params) {
  if (!(update_hz > 0.0)) throw DomainError("update rate must be positive");
  if (!(params.max_stride > 0.0)) {
    throw DomainError("stride limit must be positive");
  }
  constexpr double kPi = std::numbers::pi;
  GaitTable thresholds;
  switch (ClassifyGait(std::abs(cmd.v_x), thresholds)) {
    case GaitRegime::kTrot:
      gait_hz_ = params_.trot_hz;
      phase_offset_ = {0.0, kPi, kPi, 0.0};
      break;
    case GaitRegime::kIntermediate:
      gait_hz_ = params_.intermediate_hz;
      phase_offset_ = {0.0, kPi, 0.5 * kPi, 1.5 * kPi};
      break;
    case GaitRegime::kGallop:
      gait_hz_ = params_.gallop_hz;
      phase_offset_ = {0.0, 0.0, kPi, kPi};
      break;
  }
  // Mean stance stride rate of -d/dt(-A cos) over the stance half-cycle is
  // A * omega * 2/pi, with A the commanded stride times the joint's gain at
  // the gait frequency.
  const double omega = 2.0 * kPi * gait_hz_;
  const double wn = 2.0 * kPi * plant.joint_natural_hz;
  const double joint_gain =
      wn * wn / std::hypot(wn * wn - omega * omega,
                           2.0 * plant.joint_damping_ratio * wn * omega);
  stride_ff_ = cmd.v_x / (plant.stride_gain * plant.traction() * joint_gain *
                          omega * 2.0 / kPi);
  stride_ = std::clamp(stride_ff_, -params_.max_stride, params_.max_stride);
}

std::vector<float> ScriptedGaitController::Act(std::span<const float> obs) {
  const int v_off = layout_.Offset(ObservationField::kBaseLinearVelocity);
  const double v_meas = v_off >= 0 ? obs[v_off] : cmd_.v_x;
  const double t = static_cast<double>(ticks_) / update_hz_;
  ++ticks_;
  const auto cycle = static_cast<std::int64_t>(std::floor(gait_hz_ * t));
  if (cycle != cycle_ && speed_samples_ > 0) {
    const double mean_speed = speed_sum_ / static_cast<double>(speed_samples_);
    stride_ = std::clamp(stride_ff_ + params_.feedback_gain * (cmd_.v_x - mean_speed),
                         -params_.max_stride, params_.max_stride);
    speed_sum_ = 0.0;
    speed_samples_ = 0;
  }
  cycle_ = cycle;
  speed_sum_ += v_meas;
  ++speed_samples_;

  std::vector<float> a(kNumJoints);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const double phase = 2.0 * std::numbers::pi * gait_hz_ * t + phase_offset_[leg];
    a[2 * leg] = static_cast<float>(params_.lift * std::sin(phase));
    a[2 * leg + 1] = static_cast<float>(-stride_ * std::cos(phase));
  }
  return a;
}

CodecRuntime::CodecRuntime(std::unique_ptr<PolicyRuntime> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw DataError("codec runtime needs an inner runtime");
}

CodecRuntime::CodecRuntime(QuantizedPolicy policy) : quantized_(std::move(policy)) {
  quantized_->Validate();
  if (quantized_->spec.input_dim() != wire::kObservationWidth ||
      quantized_->spec.output_dim() != wire::kActionWidth) {
    throw ShapeError("wire codec carries 24 observations and 8 actions");
  }
}

void CodecRuntime::Reset() {
  if (inner_) inner_->Reset();
  host_ = wire::HostSession();
  device_ = wire::DeviceSession();
  channel_ = wire::LoopbackChannel();
}

std::vector<float> CodecRuntime::Act(std::span<const float> obs) {
  wire::WireValues out;
  if (quantized_) {
    out = QuantizeObs(obs, quantized_->observation.scale,
                      quantized_->observation.zero_point);
  } else {
    out = std::vector<float>(obs.begin(), obs.end());
  }
  const auto request = host_.SendObservation(out);
  channel_.HostWrite(request);

  const auto device_in = channel_.DeviceReadAll();
  const auto reply = device_.Step(device_in, [this](const wire::WireValues& v) {
    if (quantized_) {
      return wire::WireValues(
          InferInt8(*quantized_, std::get<std::vector<std::int8_t>>(v)).action);
    }
    return wire::WireValues(inner_->Act(std::get<std::vector<float>>(v)));
  });
  channel_.DeviceWrite(reply);

  const auto host_in = channel_.HostReadAll();
  wire::WireValues action = host_.ReceiveAction(host_in);
  frames_ += 2;
  bytes_ += request.size() + reply.size();
  if (quantized_) {
    return DequantizeAction(std::get<std::vector<std::int8_t>>(action),
                            quantized_->action().scale,
                            quantized_->action().zero_point);
  }
  return std::get<std::vector<float>>(std::move(action));
}

void SimConfig::Validate() const {
  if (!(f_sim_hz > 0.0) || !(episode_s > 0.0)) {
    throw DomainError("f_sim and episode length must be positive");
  }
  if (!(f_update_hz > 0.0) || f_update_hz > f_sim_hz) {
    throw DomainError("f_update must lie in (0, f_sim]");
  }
}

std::int64_t SimConfig::steps() const {
  return std::llround(episode_s * f_sim_hz);
}

std::int64_t SimConfig::hold_steps() const {
  return std::max<std::int64_t>(1, std::llround(f_sim_hz / f_update_hz));
}

std::vector<float> AssembleObservation(const ObservationLayout& layout,
                                       const PlantState& s,
                                       const PlantParams& p,
                                       const VelocityCommand& cmd,
                                       std::span<const float> prev_action) {
  std::vector<float> obs(layout.size(), 0.0f);
  int offset = 0;
  for (const ObservationSegment& seg : layout.segments()) {
    switch (seg.field) {
      case ObservationField::kBaseLinearVelocity:
        FillSegment(obs, offset, seg.width, s.v_b, seg.field);
        break;
      case ObservationField::kBaseAngularVelocity:
        FillSegment(obs, offset, seg.width, s.w_b, seg.field);
        break;
      case ObservationField::kProjectedGravity:
        FillSegment(obs, offset, seg.width, ProjectedGravity(s, p), seg.field);
        break;
      case ObservationField::kCommand:
        FillSegment(obs, offset, seg.width, std::array<double, 2>{cmd.v_x, cmd.w_z},
                    seg.field);
        break;
      case ObservationField::kJointPosition:
        FillSegment(obs, offset, seg.width, s.q, seg.field);
        break;
      case ObservationField::kJointVelocity:
        FillSegment(obs, offset, seg.width, s.qd, seg.field);
        break;
      case ObservationField::kPreviousAction:
        FillSegment(obs, offset, seg.width, prev_action, seg.field);
        break;
    }
    offset += seg.width;
  }
  return obs;
}

EpisodeResult RunEpisode(PolicyRuntime& runtime, const SimConfig& sim,
                         const DRConfig& dr, const VelocityCommand& cmd,
                         std::optional<double> baseline_reward) {
  sim.Validate();
  const PerturbationSet pert = SampleDr(dr, sim.seed);
  const PlantParams plant = pert.Apply(sim.plant);
  std::mt19937_64 noise_rng(sim.seed ^ 0x9E3779B97F4A7C15ull);
  RewardWeights weights = sim.weights;
  weights.dt = 1.0 / sim.f_sim_hz;
  const double dt = weights.dt;

  runtime.Reset();
  EpisodeResult result;
  result.seed = sim.seed;
  const std::int64_t steps = sim.steps();
  const std::int64_t hold = sim.hold_steps();
  result.trajectory.reserve(static_cast<std::size_t>(steps));

  PlantState state;
  std::vector<float> prev_action(kNumJoints, 0.0f);
  std::vector<double> targets(kNumJoints, 0.0);
  for (std::int64_t step = 0; step < steps; ++step) {
    if (step % hold == 0) {
      std::vector<float> obs =
          AssembleObservation(sim.layout, state, plant, cmd, prev_action);
      for (float& v : obs) {
        v += static_cast<float>(DrawGaussian(pert.observation_noise, noise_rng));
      }
      std::vector<float> action = runtime.Act(obs);
      CheckAction(action);
      for (int j = 0; j < kNumJoints; ++j) {
        targets[j] = action[j] + DrawGaussian(pert.action_noise, noise_rng);
      }
      prev_action = std::move(action);
      ++result.inferences;
    }
    state = PlantStep(state, targets, dt, plant);
    const RewardTerms terms = RewardStep(state, cmd, weights);
    result.total_reward += terms.total;
    result.trajectory.push_back(
        {state.t, state.v_b[0], state.v_b[1], state.w_b[2], terms});
    ++result.steps;
    if (std::abs(state.tilt[0]) > kFallAngle || std::abs(state.tilt[1]) > kFallAngle) {
      result.fell = true;
      break;
    }
  }
  if (baseline_reward) {
    if (*baseline_reward == 0.0) throw DomainError("baseline reward is zero");
    result.reward_ratio = result.total_reward / *baseline_reward;
  }
  return result;
}

std::vector<EpisodeResult> RunEpisodes(const RuntimeFactory& factory,
                                       const SimConfig& sim, const DRConfig& dr,
                                       const VelocityCommand& cmd,
                                       std::span<const std::uint64_t> seeds,
                                       std::optional<double> baseline_reward,
                                       int max_threads) {
  std::vector<EpisodeResult> results(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        SimConfig cfg = sim;
        cfg.seed = seeds[i];
        auto runtime = factory();
        results[i] = RunEpisode(*runtime, cfg, dr, cmd, baseline_reward);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n_threads = max_threads > 0 ? static_cast<unsigned>(max_threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(seeds.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string TrajectoryCsv(const EpisodeResult& r) {
  std::string out =
      "t,vx,vy,wz,reward_total,reward_lin,reward_ang,pen_lin,pen_ang,reward_air\n";
  char line[320];
  for (const TrajectoryRow& row : r.trajectory) {
    std::snprintf(line, sizeof(line),
                  "%.6f,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", row.t,
                  row.vx, row.vy, row.wz, row.reward.total, row.reward.lin_track,
                  row.reward.ang_track, row.reward.lin_penalty,
                  row.reward.ang_penalty, row.reward.air_time);
    out += line;
  }
  return out;
}

std::string EpisodeSummary(const EpisodeResult& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "seed=%llu\nsteps=%lld\ninferences=%lld\nfell=%d\n"
                "total_reward=%.9g\n",
                static_cast<unsigned long long>(r.seed),
                static_cast<long long>(r.steps),
                static_cast<long long>(r.inferences), r.fell ? 1 : 0,
                r.total_reward);
  std::string out = buf;
  if (r.reward_ratio) {
    std::snprintf(buf, sizeof(buf), "reward_ratio=%.9g\n", *r.reward_ratio);
    out += buf;
  }
  return out;
}

}  // namespace tinygait
