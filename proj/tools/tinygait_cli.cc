// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

// tinygait command-line front end.
//
// Exit codes: 0 success, 2 usage, 3 data error, 4 domain error.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "tinygait/cost_model.h"
#include "tinygait/error.h"
#include "tinygait/gait_select.h"
#include "tinygait/harness.h"
#include "tinygait/int8_kernel.h"
#include "tinygait/kinematics.h"
#include "tinygait/kv_config.h"
#include "tinygait/policy.h"
#include "tinygait/quant.h"
#include "tinygait/wire.h"

namespace tinygait::cli {
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitDomain = 4;

// Ordered key/value report. Plain mode prints `key=value` lines; --pretty
// aligns them into a two-column table.
class Report {
 public:
  void Add(std::string key, std::string value) {
    rows_.emplace_back(std::move(key), std::move(value));
  }
  void Add(std::string key, double value) { Add(std::move(key), fmt::format("{:.9g}", value)); }
  void Add(std::string key, std::int64_t value) { Add(std::move(key), std::to_string(value)); }
  void Add(std::string key, int value) { Add(std::move(key), std::to_string(value)); }
  void Add(std::string key, bool value) { Add(std::move(key), std::string(value ? "true" : "false")); }

  void Print(bool pretty) const {
    if (!pretty) {
      for (const auto& [k, v] : rows_) fmt::print("{}={}\n", k, v);
      return;
    }
    std::size_t width = 0;
    for (const auto& row : rows_) width = std::max(width, row.first.size());
    for (const auto& [k, v] : rows_) fmt::print("{:<{}}  {}\n", k, width, v);
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One observation per line, comma separated. Blank lines and lines starting
// with '#' are skipped.
std::vector<std::vector<float>> LoadCalibration(const std::filesystem::path& path) {
  std::istringstream lines(ReadText(path));
  std::vector<std::vector<float>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<float> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      row.push_back(static_cast<float>(
          ParseDouble(cell, fmt::format("{}:{}", path.string(), line_no))));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("calibration file " + path.string() + " has no rows");
  return rows;
}

std::string Hex(std::span<const std::uint8_t> bytes) {
  std::string s;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i) s += ' ';
    s += fmt::format("{:02X}", bytes[i]);
  }
  return s;
}

std::vector<std::uint8_t> ParseHex(const std::string& text) {
  std::vector<std::uint8_t> out;
  int nibble = -1;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ':') continue;
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw DataError(fmt::format("invalid hex character '{}'", c));
    }
    const int v = std::isdigit(static_cast<unsigned char>(c))
                      ? c - '0'
                      : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
    if (nibble < 0) {
      nibble = v;
    } else {
      out.push_back(static_cast<std::uint8_t>(nibble * 16 + v));
      nibble = -1;
    }
  }
  if (nibble >= 0) throw DataError("odd number of hex digits");
  return out;
}

PowerParams PowerFrom(const std::vector<double>& v) {
  PowerParams p{v.at(0), v.at(1), v.at(2)};
  p.Validate();
  return p;
}

Fp32Policy RandomPolicy(std::uint64_t seed, const PolicySpec& spec) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> normal(0.0f, 1.0f);
  Fp32Policy p = Fp32Policy::Zeros(spec);
  for (DenseLayer& layer : p.layers) {
    const float sd = std::sqrt(2.0f / static_cast<float>(layer.in + layer.out));
    for (float& w : layer.weights) w = sd * normal(rng);
    for (float& b : layer.bias) b = 0.1f * normal(rng);
  }
  return p;
}

// ---- quantize

struct QuantizeArgs {
  std::string model, scheme = "per-feature", calib, out;
};

void RunQuantize(const QuantizeArgs& a, Report& r) {
  const Fp32Policy policy = LoadPolicy(a.model);
  const QuantScheme scheme = ParseQuantScheme(a.scheme);
  const auto calib = LoadCalibration(a.calib);
  const QuantizedPolicy qp = QuantizePolicy(policy, scheme, calib);
  SaveQuantized(qp, a.out);

  std::vector<std::vector<float>> ref, test;
  for (const auto& obs : calib) {
    ref.push_back(InferFp32(policy, obs));
    test.push_back(FusedInferDequant(qp, obs));
  }
  const auto fp32 = Fp32PayloadBytes(policy.spec);
  const auto i8 = Int8PayloadBytes(qp);
  r.Add("scheme", ToString(scheme));
  r.Add("calibration_rows", static_cast<std::int64_t>(calib.size()));
  r.Add("sqnr_db", SqnrDb(ref, test));
  r.Add("param_count", ParamCount(policy.spec));
  r.Add("fp32_payload_bytes", fp32);
  r.Add("int8_payload_bytes", i8);
  r.Add("size_ratio", fmt::format("{:.4f}", static_cast<double>(fp32) / static_cast<double>(i8)));
  r.Add("int8_file_bytes", static_cast<std::int64_t>(std::filesystem::file_size(a.out)));
  r.Add("reference_fp32_kb", std::string("204.54"));
  r.Add("reference_int8_kb", std::string("51.136"));
  r.Add("reference_ratio", std::string("4.0000"));
  r.Add("out", a.out);
}

// ---- init-policy

struct InitArgs {
  std::string out, activation = "leaky-relu", calib_out;
  std::uint64_t seed = 0;
  int calib_rows = 256;
};

void RunInit(const InitArgs& a, Report& r) {
  const ActivationSpec act =
      a.activation == "elu" ? ActivationSpec::Elu() : ActivationSpec::LeakyRelu();
  const Fp32Policy p = RandomPolicy(a.seed, PolicySpec::Locomotion(act));
  SavePolicy(p, a.out);
  r.Add("out", a.out);
  r.Add("activation", a.activation);
  r.Add("param_count", ParamCount(p.spec));
  r.Add("file_bytes", static_cast<std::int64_t>(std::filesystem::file_size(a.out)));
  if (!a.calib_out.empty()) {
    std::mt19937_64 rng(a.seed ^ 0xC0FFEEULL);
    std::normal_distribution<float> normal(0.0f, 1.0f);
    std::ofstream f(a.calib_out);
    if (!f) throw DataError("cannot write " + a.calib_out);
    for (int i = 0; i < a.calib_rows; ++i) {
      for (int j = 0; j < p.spec.layer_dims.front(); ++j) {
        f << (j ? "," : "") << fmt::format("{:.7g}", normal(rng));
      }
      f << '\n';
    }
    r.Add("calib_out", a.calib_out);
    r.Add("calib_rows", a.calib_rows);
  }
}

// ---- cost

struct CostArgs {
  std::optional<double> cycles;
  std::vector<double> measured;  // f_clk, f_update
  std::optional<double> clock;
  std::vector<double> power;     // V, I per MHz, P max
  std::vector<double> targets;
  std::string budget;
};

void RunCost(const CostArgs& a, Report& r) {
  BudgetConfig budget;
  if (!a.budget.empty()) budget = BudgetConfig::FromKv(KvConfig::Load(a.budget));
  std::optional<double> cycles = a.cycles ? a.cycles : budget.cycles_per_update;
  std::optional<double> clock = a.clock ? a.clock : budget.f_clk_hz;
  std::optional<PowerParams> power = budget.power;
  if (!a.power.empty()) power = PowerFrom(a.power);
  if (!a.measured.empty()) {
    cycles = MeasuredCycles(a.measured[0], a.measured[1]);
    if (!clock) clock = a.measured[0];
  }
  if (!cycles) throw CLI::ValidationError("cost", "one of --cycles, --measured or a budget file with cycles_per_update is required");

  r.Add("cycles_per_update", *cycles);
  if (clock) {
    r.Add("f_clk_hz", *clock);
    r.Add("f_update_max_hz", MaxUpdateRate(*clock, *cycles));
  }
  if (power) {
    r.Add("p_max_watts", power->max_watts);
    r.Add("power_max_clock_hz", MaxClock(*power));
    r.Add("power_f_update_max_hz", FeasibleUpdateRate(*power, *cycles));
  }
  for (double t : a.targets) {
    const double req = RequiredClock(*cycles, t);
    const std::string key = fmt::format("target_{:g}hz", t);
    r.Add(key + ".f_clk_req_hz", req);
    if (power) {
      r.Add(key + ".power_watts", PowerAtClock(*power, req));
      r.Add(key + ".within_budget", PowerAtClock(*power, req) <= power->max_watts);
    }
  }
}

// ---- select-gait

struct SelectArgs {
  std::string curves;
  std::optional<double> f_update;
  std::vector<double> power;
  std::optional<double> cycles;
};

void RunSelect(const SelectArgs& a, Report& r) {
  const GaitTable table = GaitTable::Load(a.curves);
  double f = 0.0;
  if (a.f_update) {
    f = *a.f_update;
  } else {
    if (a.power.empty() || !a.cycles) {
      throw CLI::ValidationError("select-gait", "need --f-update, or --power with --cycles");
    }
    const PowerParams p = PowerFrom(a.power);
    f = FeasibleUpdateRate(p, *a.cycles);
    r.Add("max_clock_hz", MaxClock(p));
  }
  if (!(f >= 0.0) || !std::isfinite(f)) throw DomainError("update rate must be finite and >= 0");
  const GaitChoice c = SelectGait(table, f);
  r.Add("f_update_hz", f);
  r.Add("gait", ToString(c.gait));
  r.Add("reward", c.reward);
  for (GaitRegime g : kAllGaits) r.Add("reward." + ToString(g), table.curve(g).RewardAt(f));
}

// ---- run-loop

struct LoopArgs {
  std::string model, csv_out, dr = "training";
  bool quantized = false, codec = false;
  double f_update = 120.0, command = 0.08, yaw = 0.0;
  std::uint64_t seed = 0;
  int episodes = 1, threads = 0;
  std::optional<double> baseline;
};

void RunLoop(const LoopArgs& a, Report& r) {
  if (a.episodes < 1) throw DomainError("--episodes must be >= 1");
  SimConfig sim;
  sim.f_update_hz = a.f_update;
  sim.Validate();
  DRConfig dr;
  if (a.dr == "training") {
    dr = DRConfig::TrainingDefaults();
  } else if (a.dr != "none") {
    throw CLI::ValidationError("--dr", "expected none or training");
  }
  const VelocityCommand cmd{a.command, a.yaw};

  std::optional<Fp32Policy> fp32;
  std::optional<QuantizedPolicy> int8;
  if (!a.model.empty()) {
    if (a.quantized) {
      int8 = LoadQuantized(a.model);
    } else {
      fp32 = LoadPolicy(a.model);
    }
  }
  const auto factory_at = [&](double rate) -> RuntimeFactory {
    return [&, rate]() -> std::unique_ptr<PolicyRuntime> {
      if (int8) {
        if (a.codec) return std::make_unique<CodecRuntime>(*int8);
        return std::make_unique<Int8Runtime>(*int8);
      }
      if (fp32) {
        auto inner = std::make_unique<Fp32Runtime>(*fp32);
        if (a.codec) return std::make_unique<CodecRuntime>(std::move(inner));
        return inner;
      }
      auto scripted = std::make_unique<ScriptedGaitController>(cmd, rate);
      if (a.codec) return std::make_unique<CodecRuntime>(std::move(scripted));
      return scripted;
    };
  };

  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < a.episodes; ++i) seeds.push_back(a.seed + static_cast<std::uint64_t>(i));

  // Baseline: the same runtime and seeds updated at the simulation rate.
  double baseline = 0.0;
  if (a.baseline) {
    baseline = *a.baseline;
  } else {
    SimConfig full = sim;
    full.f_update_hz = sim.f_sim_hz;
    const auto base = RunEpisodes(factory_at(full.f_update_hz), full, dr, cmd, seeds,
                                  std::nullopt, a.threads);
    for (const auto& e : base) baseline += e.total_reward;
    baseline /= static_cast<double>(base.size());
  }
  const auto results =
      RunEpisodes(factory_at(sim.f_update_hz), sim, dr, cmd, seeds, baseline, a.threads);

  r.Add("runtime", std::string(int8 ? "int8" : (fp32 ? "fp32" : "scripted")));
  r.Add("codec", a.codec);
  r.Add("f_update_hz", sim.f_update_hz);
  r.Add("hold_steps", sim.hold_steps());
  r.Add("command_vx", a.command);
  r.Add("gait_regime", ToString(ClassifyGait(a.command, GaitTable())));
  r.Add("episodes", a.episodes);
  r.Add("baseline_reward", baseline);
  double total = 0.0, ratio = 0.0;
  int falls = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const EpisodeResult& e = results[i];
    const std::string k = fmt::format("episode.{}.", i);
    r.Add(k + "seed", static_cast<std::int64_t>(e.seed));
    r.Add(k + "steps", e.steps);
    r.Add(k + "inferences", e.inferences);
    r.Add(k + "fell", e.fell);
    r.Add(k + "total_reward", e.total_reward);
    r.Add(k + "reward_ratio", *e.reward_ratio);
    total += e.total_reward;
    ratio += *e.reward_ratio;
    falls += e.fell ? 1 : 0;
  }
  r.Add("mean_total_reward", total / static_cast<double>(results.size()));
  r.Add("mean_reward_ratio", ratio / static_cast<double>(results.size()));
  r.Add("falls", falls);

  if (!a.csv_out.empty()) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      std::filesystem::path path = a.csv_out;
      if (results.size() > 1) {
        path.replace_filename(fmt::format("{}_{}{}", path.stem().string(), results[i].seed,
                                          path.extension().string()));
      }
      std::ofstream f(path, std::ios::binary);
      if (!f) throw DataError("cannot write " + path.string());
      f << TrajectoryCsv(results[i]);
      r.Add(fmt::format("episode.{}.csv", i), path.string());
    }
  }
}

// ---- ik

struct IkArgs {
  std::string geometry;
  int leg = 0;
  double x = 0.0, y = 0.0;
};

void RunIk(const IkArgs& a, Report& r) {
  LegGeometries geoms{};
  if (!a.geometry.empty()) geoms = GeometriesFromKv(KvConfig::Load(a.geometry));
  const LegGeometry& g = geoms.at(static_cast<std::size_t>(a.leg));
  const IkSolution s = Ik(g, {a.x, a.y});
  r.Add("leg", a.leg);
  r.Add("theta_x", s.theta_x);
  r.Add("theta_y", s.theta_y);
  r.Add("x_motor", s.x_motor);
  r.Add("y_motor", s.y_motor);
}

// ---- codec

struct CodecArgs {
  bool selftest = false;
  std::string decode;
  int cases = 10000;
  std::uint64_t seed = 0;
};

std::string TypeName(wire::MsgType t) {
  switch (t) {
    case wire::MsgType::kObservationF32: return "observation_f32";
    case wire::MsgType::kActionF32: return "action_f32";
    case wire::MsgType::kObservationI8: return "observation_i8";
    case wire::MsgType::kActionI8: return "action_i8";
  }
  return "unknown";
}

std::string ValuesText(const wire::Frame& f) {
  const std::vector<std::uint8_t> bytes = wire::EncodeFrame(f);
  const bool obs = f.type == wire::MsgType::kObservationF32 ||
                   f.type == wire::MsgType::kObservationI8;
  const wire::Message m = obs ? wire::DecodeObservation(bytes) : wire::DecodeAction(bytes);
  std::string s;
  std::visit(
      [&](const auto& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
          if (i) s += ',';
          if constexpr (std::is_same_v<std::decay_t<decltype(vals[i])>, float>) {
            s += fmt::format("{:.9g}", vals[i]);
          } else {
            s += std::to_string(vals[i]);
          }
        }
      },
      m.values);
  return s;
}

int RunCodec(const CodecArgs& a, Report& r) {
  if (a.selftest == !a.decode.empty()) {
    throw CLI::ValidationError("codec", "exactly one of --selftest or --decode is required");
  }
  if (!a.decode.empty()) {
    const std::vector<std::uint8_t> bytes = ParseHex(ReadText(a.decode));
    wire::FrameReader reader;
    reader.Push(bytes);
    int n = 0;
    while (auto f = reader.Next()) {
      const std::string k = fmt::format("frame.{}.", n++);
      r.Add(k + "type", TypeName(f->type));
      r.Add(k + "seq", static_cast<int>(f->seq));
      r.Add(k + "values", ValuesText(*f));
    }
    if (n == 0) wire::DecodeFrame(bytes);  // reports why the bytes are not a frame
    r.Add("frames", n);
    r.Add("dropped_bytes", static_cast<std::int64_t>(reader.dropped_bytes()));
    r.Add("trailing_bytes", static_cast<std::int64_t>(reader.buffered_bytes()));
    return 0;
  }

  const std::string check = "123456789";
  const std::uint8_t crc =
      wire::Crc8({reinterpret_cast<const std::uint8_t*>(check.data()), check.size()});
  std::vector<std::uint8_t> golden = {0x7E, 0x11, 0x00, 0x18, 0x00};
  golden.insert(golden.end(), 24, 0x00);
  golden.push_back(0x9A);
  const auto zero_frame = wire::EncodeObservation(std::vector<std::int8_t>(24, 0), 0);

  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<std::uint32_t> bits;
  std::uniform_int_distribution<int> i8(-128, 127);
  std::uniform_int_distribution<int> delta(1, 255);
  int round_trip_ok = 0, detected = 0;
  for (int i = 0; i < a.cases; ++i) {
    const bool obs = i % 2 == 0;
    const std::size_t n = obs ? 24 : 8;
    wire::WireValues v;
    if (i % 4 < 2) {
      std::vector<float> f(n);
      for (float& x : f) {
        const std::uint32_t b = bits(rng);
        std::memcpy(&x, &b, 4);
      }
      v = std::move(f);
    } else {
      std::vector<std::int8_t> q(n);
      for (auto& x : q) x = static_cast<std::int8_t>(i8(rng));
      v = std::move(q);
    }
    const auto seq = static_cast<std::uint8_t>(i & 0xFF);
    auto frame = obs ? wire::EncodeObservation(v, seq) : wire::EncodeAction(v, seq);
    // Equal frames after re-encoding means the payload bits survived.
    const wire::Message m = obs ? wire::DecodeObservation(frame) : wire::DecodeAction(frame);
    const auto again = obs ? wire::EncodeObservation(m.values, m.seq)
                           : wire::EncodeAction(m.values, m.seq);
    if (again == frame) ++round_trip_ok;
    std::uniform_int_distribution<std::size_t> pos(0, frame.size() - 1);
    frame[pos(rng)] ^= static_cast<std::uint8_t>(delta(rng));
    try {
      wire::DecodeFrame(frame);
    } catch (const wire::WireError&) {
      ++detected;
    }
  }
  const bool ok = crc == 0xF4 && zero_frame == golden && round_trip_ok == a.cases &&
                  detected == a.cases;
  r.Add("crc_check", fmt::format("0x{:02X}", crc));
  r.Add("golden_frame", Hex(zero_frame));
  r.Add("golden_match", zero_frame == golden);
  r.Add("cases", a.cases);
  r.Add("round_trip_ok", round_trip_ok);
  r.Add("corruptions_detected", detected);
  r.Add("result", std::string(ok ? "ok" : "fail"));
  return ok ? 0 : 1;
}

}  // namespace
}  // namespace tinygait::cli

int main(int argc, char** argv) {
  using namespace tinygait;
  using namespace tinygait::cli;

  CLI::App app{"tinygait: int8 locomotion policy tooling"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Aligned table output instead of key=value lines");

  QuantizeArgs qa;
  auto* quantize = app.add_subcommand("quantize", "Post-training int8 quantization");
  quantize->add_option("--model", qa.model, "FP32 policy file")->required();
  quantize->add_option("--scheme", qa.scheme, "per-tensor or per-feature")
      ->check(CLI::IsMember({"per-tensor", "per-feature"}));
  quantize->add_option("--calib", qa.calib, "Calibration CSV, one observation per row")
      ->required();
  quantize->add_option("--out", qa.out, "Quantized policy output file")->required();

  InitArgs ia;
  auto* init = app.add_subcommand("init-policy", "Write a randomly initialized FP32 policy");
  init->add_option("--out", ia.out, "Policy output file")->required();
  init->add_option("--seed", ia.seed, "Random seed");
  init->add_option("--activation", ia.activation, "leaky-relu or elu")
      ->check(CLI::IsMember({"leaky-relu", "elu"}));
  init->add_option("--calib-out", ia.calib_out, "Also write a random calibration CSV");
  init->add_option("--calib-rows", ia.calib_rows, "Rows in the calibration CSV")
      ->check(CLI::PositiveNumber);

  CostArgs ca;
  auto* cost = app.add_subcommand("cost", "Cycle, clock and power budget arithmetic");
  auto* cyc = cost->add_option("--cycles", ca.cycles, "Cycles per update");
  cost->add_option("--measured", ca.measured, "f_clk,f_update in Hz")
      ->expected(2)->delimiter(',')->excludes(cyc);
  cost->add_option("--clock", ca.clock, "Core clock in Hz");
  cost->add_option("--power", ca.power, "V,I_per_MHz,P_max")->expected(3)->delimiter(',');
  cost->add_option("--target-hz", ca.targets, "Update rates to size the clock for")
      ->delimiter(',');
  cost->add_option("--budget", ca.budget, "Budget key=value file");

  SelectArgs sa;
  auto* select = app.add_subcommand("select-gait", "Pick the gait for an update rate or power budget");
  select->add_option("--curves", sa.curves, "Gait reward curve CSV")->required();
  auto* fu = select->add_option("--f-update", sa.f_update, "Update rate in Hz");
  select->add_option("--power", sa.power, "V,I_per_MHz,P_max")
      ->expected(3)->delimiter(',')->excludes(fu);
  select->add_option("--cycles", sa.cycles, "Cycles per update (with --power)");

  LoopArgs la;
  auto* loop = app.add_subcommand("run-loop", "Closed-loop episodes on the toy plant");
  loop->add_option("--model", la.model, "Policy file; omit for the scripted gait controller")
      ;
  loop->add_flag("--quantized", la.quantized, "--model is a quantized policy file");
  loop->add_flag("--codec", la.codec, "Route every inference through the wire codec");
  loop->add_option("--f-update", la.f_update, "Policy update rate in Hz");
  loop->add_option("--command", la.command, "Forward velocity command in m/s");
  loop->add_option("--yaw", la.yaw, "Yaw rate command in rad/s");
  loop->add_option("--seed", la.seed, "First episode seed");
  loop->add_option("--episodes", la.episodes, "Number of episodes (consecutive seeds)");
  loop->add_option("--threads", la.threads, "Worker threads, 0 for automatic");
  loop->add_option("--dr", la.dr, "Domain randomization: none or training")
      ->check(CLI::IsMember({"none", "training"}));
  loop->add_option("--baseline", la.baseline, "Reward used as the ratio denominator");
  loop->add_option("--csv-out", la.csv_out, "Trajectory CSV output");

  IkArgs ka;
  auto* ik = app.add_subcommand("ik", "Leg inverse kinematics");
  ik->add_option("--geometry", ka.geometry, "Leg geometry key=value file");
  ik->add_option("--leg", ka.leg, "Leg index")->check(CLI::Range(0, 3));
  ik->add_option("--x", ka.x, "End-effector x")->required();
  ik->add_option("--y", ka.y, "End-effector y")->required();

  CodecArgs da;
  auto* codec = app.add_subcommand("codec", "Wire codec checks and frame decoding");
  codec->add_flag("--selftest", da.selftest, "Golden frame, round-trip and corruption fuzz");
  codec->add_option("--decode", da.decode, "Hex dump file of frames to decode")
      ;
  codec->add_option("--cases", da.cases, "Fuzz cases for --selftest")->check(CLI::PositiveNumber);
  codec->add_option("--seed", da.seed, "Fuzz seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Report report;
  int rc = 0;
  try {
    if (*quantize) RunQuantize(qa, report);
    if (*init) RunInit(ia, report);
    if (*cost) RunCost(ca, report);
    if (*select) RunSelect(sa, report);
    if (*loop) RunLoop(la, report);
    if (*ik) RunIk(ka, report);
    if (*codec) rc = RunCodec(da, report);
  } catch (const CLI::ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const DataError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitData;
  } catch (const DomainError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitDomain;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitData;
  }
  report.Print(pretty);
  return rc;
}
