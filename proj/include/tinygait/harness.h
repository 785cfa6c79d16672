// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_HARNESS_H_
#define TINYGAIT_HARNESS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tinygait/domain_randomization.h"
#include "tinygait/policy.h"
#include "tinygait/quant.h"
#include "tinygait/reward.h"
#include "tinygait/wire.h"

namespace tinygait {

// Anything that maps an observation to an 8-wide joint-angle action.
class PolicyRuntime {
 public:
  virtual ~PolicyRuntime() = default;
  virtual std::vector<float> Act(std::span<const float> obs) = 0;
  // Called at the start of each episode.
  virtual void Reset() {}
};

class Fp32Runtime : public PolicyRuntime {
 public:
  explicit Fp32Runtime(Fp32Policy policy);
  std::vector<float> Act(std::span<const float> obs) override;

 private:
  Fp32Policy policy_;
};

class Int8Runtime : public PolicyRuntime {
 public:
  explicit Int8Runtime(QuantizedPolicy policy);
  std::vector<float> Act(std::span<const float> obs) override;

 private:
  QuantizedPolicy policy_;
};

// Gait generator with step-to-step speed feedback. It keeps its own control
// clock (one tick per call at `update_hz`), as firmware on the device would.
// Legs follow
//   theta_x = lift * sin(phase), theta_y = -stride * cos(phase)
// with per-leg phase offsets chosen by the gait regime of the command. The
// stride is fixed within a gait cycle and corrected at each cycle boundary
// from the mean measured speed over the cycle just finished.
// Gait frequencies are kept off integer divisors of the usual update rates
// so the hold instants do not lock onto the lift zero crossings.
struct GaitControllerParams {
  double trot_hz = 0.9;
  double intermediate_hz = 1.3;
  double gallop_hz = 2.2;
  double lift = 0.3;            // rad
  double feedback_gain = 5.0;   // rad of stride per m/s of speed error
  double max_stride = 1.2;
};

class ScriptedGaitController : public PolicyRuntime {
 public:
  using Params = GaitControllerParams;

  ScriptedGaitController(VelocityCommand cmd, double update_hz,
                         ObservationLayout layout = ObservationLayout::Default(),
                         Params params = Params(),
                         PlantParams plant = PlantParams());

  std::vector<float> Act(std::span<const float> obs) override;
  void Reset() override {
    ticks_ = 0;
    cycle_ = 0;
    speed_sum_ = 0.0;
    speed_samples_ = 0;
    stride_ = stride_ff_;
  }

  double gait_hz() const { return gait_hz_; }
  double feedforward_stride() const { return stride_ff_; }

 private:
  VelocityCommand cmd_;
  double update_hz_;
  ObservationLayout layout_;
  Params params_;
  std::array<double, kNumLegs> phase_offset_{};
  double gait_hz_ = 1.0;
  double stride_ff_ = 0.0;
  std::int64_t ticks_ = 0;
  std::int64_t cycle_ = 0;
  double speed_sum_ = 0.0;
  std::int64_t speed_samples_ = 0;
  double stride_ = 0.0;
};

// Routes every inference through the wire codec over an in-memory loopback:
// host session -> frame -> device session -> inner runtime -> frame -> host.
// With a quantized policy the frames carry int8 payloads and the device runs
// the integer kernel; otherwise fp32 payloads are forwarded to `inner`.
class CodecRuntime : public PolicyRuntime {
 public:
  explicit CodecRuntime(std::unique_ptr<PolicyRuntime> inner);
  explicit CodecRuntime(QuantizedPolicy policy);

  std::vector<float> Act(std::span<const float> obs) override;
  void Reset() override;

  std::uint64_t frames_exchanged() const { return frames_; }
  std::uint64_t bytes_exchanged() const { return bytes_; }

 private:
  std::unique_ptr<PolicyRuntime> inner_;
  std::optional<QuantizedPolicy> quantized_;
  wire::LoopbackChannel channel_;
  wire::HostSession host_;
  wire::DeviceSession device_;
  std::uint64_t frames_ = 0;
  std::uint64_t bytes_ = 0;
};

struct SimConfig {
  double f_sim_hz = 120.0;
  double episode_s = 10.0;
  double f_update_hz = 120.0;
  std::uint64_t seed = 0;
  ObservationLayout layout = ObservationLayout::Default();
  PlantParams plant;
  RewardWeights weights;  // dt is overwritten with 1/f_sim

  void Validate() const;
  std::int64_t steps() const;
  // Plant steps between policy updates, round(f_sim / f_update).
  std::int64_t hold_steps() const;
};

struct TrajectoryRow {
  double t = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double wz = 0.0;
  RewardTerms reward;
};

struct EpisodeResult {
  std::vector<TrajectoryRow> trajectory;
  double total_reward = 0.0;
  std::optional<double> reward_ratio;
  std::int64_t steps = 0;
  std::int64_t inferences = 0;
  bool fell = false;  // roll or pitch beyond pi/4
  std::uint64_t seed = 0;
};

// Builds the observation vector for `layout` from the plant state.
std::vector<float> AssembleObservation(const ObservationLayout& layout,
                                       const PlantState& s,
                                       const PlantParams& p,
                                       const VelocityCommand& cmd,
                                       std::span<const float> prev_action);

// Plant at f_sim, policy every hold_steps() plant steps, action held in
// between. Ends at the time-out or when roll/pitch exceeds pi/4.
// `baseline_reward`, when given, yields reward_ratio = total / baseline.
EpisodeResult RunEpisode(PolicyRuntime& runtime, const SimConfig& sim,
                         const DRConfig& dr, const VelocityCommand& cmd,
                         std::optional<double> baseline_reward = std::nullopt);

using RuntimeFactory = std::function<std::unique_ptr<PolicyRuntime>()>;

// One episode per seed, run concurrently on independent runtimes. Results
// are returned in seed order and do not depend on scheduling.
std::vector<EpisodeResult> RunEpisodes(const RuntimeFactory& factory,
                                       const SimConfig& sim, const DRConfig& dr,
                                       const VelocityCommand& cmd,
                                       std::span<const std::uint64_t> seeds,
                                       std::optional<double> baseline_reward,
                                       int max_threads = 0);

// `t,vx,vy,wz,reward_total,reward_lin,reward_ang,pen_lin,pen_ang,reward_air`
std::string TrajectoryCsv(const EpisodeResult& r);
// key=value lines.
std::string EpisodeSummary(const EpisodeResult& r);

}  // namespace tinygait

#endif  // TINYGAIT_HARNESS_H_
