// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/policy.h"

#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>

#include "byte_io.h"
#include "tinygait/error.h"

namespace tinygait {
namespace {

constexpr std::array<std::uint8_t, 4> kPolicyMagic = {0x54, 0x47, 0x50, 0x31};

}  // namespace

void ActivationSpec::Validate() const {
  if (!(alpha > 0.0f) || !std::isfinite(alpha)) {
    throw DomainError("activation alpha must be positive and finite");
  }
  if (kind == ActivationKind::kLeakyRelu && alpha > 1.0f) {
    throw DomainError("LeakyReLU alpha must be <= 1");
  }
  if (kind != ActivationKind::kElu && kind != ActivationKind::kLeakyRelu) {
    throw FormatError("unknown activation kind");
  }
}

float Activate(const ActivationSpec& a, float x) {
  if (x >= 0.0f) return x;
  switch (a.kind) {
    case ActivationKind::kElu:
      return a.alpha * std::expm1(x);
    case ActivationKind::kLeakyRelu:
      return a.alpha * x;
  }
  return x;
}

void PolicySpec::Validate() const {
  if (layer_dims.size() < 2) {
    throw ShapeError("policy needs at least an input and an output layer");
  }
  for (int d : layer_dims) {
    if (d <= 0 || d > std::numeric_limits<std::uint16_t>::max()) {
      throw ShapeError("layer width out of range: " + std::to_string(d));
    }
  }
  if (layer_dims.size() > std::numeric_limits<std::uint8_t>::max()) {
    throw ShapeError("too many layers");
  }
  hidden_activation.Validate();
}

std::int64_t MacCount(const PolicySpec& spec) {
  std::int64_t n = 0;
  for (std::size_t l = 1; l < spec.layer_dims.size(); ++l) {
    n += std::int64_t{spec.layer_dims[l - 1]} * spec.layer_dims[l];
  }
  return n;
}

std::int64_t NeuronCount(const PolicySpec& spec) {
  return std::accumulate(spec.layer_dims.begin() + 1, spec.layer_dims.end(),
                         std::int64_t{0});
}

std::int64_t ParamCount(const PolicySpec& spec) {
  return MacCount(spec) + NeuronCount(spec);
}

std::int64_t ActivationCount(const PolicySpec& spec) {
  return NeuronCount(spec) - spec.layer_dims.back();
}

std::int64_t Fp32PayloadBytes(const PolicySpec& spec) {
  return 4 * ParamCount(spec);
}

Fp32Policy Fp32Policy::Zeros(const PolicySpec& spec) {
  spec.Validate();
  Fp32Policy p;
  p.spec = spec;
  for (int l = 1; l <= spec.num_layers(); ++l) {
    DenseLayer layer;
    layer.in = spec.layer_dims[l - 1];
    layer.out = spec.layer_dims[l];
    layer.weights.assign(static_cast<std::size_t>(layer.in) * layer.out, 0.0f);
    layer.bias.assign(layer.out, 0.0f);
    p.layers.push_back(std::move(layer));
  }
  return p;
}

void Fp32Policy::Validate() const {
  spec.Validate();
  if (static_cast<int>(layers.size()) != spec.num_layers()) {
    throw ShapeError("layer count does not match spec");
  }
  for (int l = 0; l < spec.num_layers(); ++l) {
    const DenseLayer& layer = layers[l];
    if (layer.in != spec.layer_dims[l] || layer.out != spec.layer_dims[l + 1] ||
        layer.weights.size() !=
            static_cast<std::size_t>(layer.in) * layer.out ||
        layer.bias.size() != static_cast<std::size_t>(layer.out)) {
      throw ShapeError("layer " + std::to_string(l) +
                       " shape does not match spec");
    }
    for (float v : layer.weights) {
      if (!std::isfinite(v)) throw DataError("non-finite weight");
    }
    for (float v : layer.bias) {
      if (!std::isfinite(v)) throw DataError("non-finite bias");
    }
  }
}

std::vector<float> InferFp32(const Fp32Policy& policy,
                             std::span<const float> obs) {
  if (static_cast<int>(obs.size()) != policy.spec.input_dim()) {
    throw ShapeError("observation has " + std::to_string(obs.size()) +
                     " components, policy expects " +
                     std::to_string(policy.spec.input_dim()));
  }
  std::vector<float> x(obs.begin(), obs.end());
  std::vector<float> y;
  const int last = static_cast<int>(policy.layers.size()) - 1;
  for (int l = 0; l <= last; ++l) {
    const DenseLayer& layer = policy.layers[l];
    y.assign(layer.out, 0.0f);
    for (int i = 0; i < layer.out; ++i) {
      const float* row = &layer.weights[static_cast<std::size_t>(i) * layer.in];
      float acc = layer.bias[i];
      for (int j = 0; j < layer.in; ++j) acc += row[j] * x[j];
      y[i] = l == last ? acc : Activate(policy.spec.hidden_activation, acc);
    }
    x.swap(y);
  }
  return x;
}

std::vector<std::uint8_t> SerializePolicy(const Fp32Policy& policy) {
  policy.Validate();
  internal::ByteWriter w;
  w.PutBytes(kPolicyMagic);
  w.Put(static_cast<std::uint8_t>(policy.spec.layer_dims.size()));
  for (int d : policy.spec.layer_dims) w.Put(static_cast<std::uint16_t>(d));
  w.Put(static_cast<std::uint8_t>(policy.spec.hidden_activation.kind));
  w.Put(policy.spec.hidden_activation.alpha);
  for (const DenseLayer& layer : policy.layers) {
    w.PutAll<float>(layer.weights);
    w.PutAll<float>(layer.bias);
  }
  return w.Take();
}

Fp32Policy DeserializePolicy(std::span<const std::uint8_t> bytes) {
  internal::ByteReader r(bytes);
  for (std::uint8_t m : kPolicyMagic) {
    if (r.Get<std::uint8_t>() != m) throw FormatError("bad policy magic");
  }
  PolicySpec spec;
  const int n_dims = r.Get<std::uint8_t>();
  for (int i = 0; i < n_dims; ++i) spec.layer_dims.push_back(r.Get<std::uint16_t>());
  const auto kind = r.Get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(ActivationKind::kLeakyRelu)) {
    throw FormatError("unknown activation kind " + std::to_string(kind));
  }
  spec.hidden_activation.kind = static_cast<ActivationKind>(kind);
  spec.hidden_activation.alpha = r.Get<float>();
  spec.Validate();

  Fp32Policy p = Fp32Policy::Zeros(spec);
  for (DenseLayer& layer : p.layers) {
    layer.weights = r.GetVector<float>(layer.weights.size());
    layer.bias = r.GetVector<float>(layer.bias.size());
  }
  if (r.remaining() != 0) {
    throw FormatError("trailing bytes after policy payload");
  }
  p.Validate();
  return p;
}

void SavePolicy(const Fp32Policy& policy, const std::filesystem::path& path) {
  internal::WriteFileBytes(path.string(), SerializePolicy(policy));
}

Fp32Policy LoadPolicy(const std::filesystem::path& path) {
  return DeserializePolicy(internal::ReadFileBytes(path.string()));
}

ObservationLayout::ObservationLayout(std::vector<ObservationSegment> segments)
    : segments_(std::move(segments)) {
  for (const auto& s : segments_) {
    if (s.width <= 0) throw ShapeError("observation segment width must be > 0");
    if (Offset(s.field) != size_) {
      throw ShapeError("duplicate observation field " + ToString(s.field));
    }
    size_ += s.width;
  }
}

ObservationLayout ObservationLayout::Default() {
  return ObservationLayout({{ObservationField::kBaseLinearVelocity, 3},
                            {ObservationField::kBaseAngularVelocity, 3},
                            {ObservationField::kProjectedGravity, 3},
                            {ObservationField::kJointPosition, 8},
                            {ObservationField::kPreviousAction, 7}});
}

ObservationLayout ObservationLayout::WithCommand() {
  return ObservationLayout({{ObservationField::kBaseLinearVelocity, 3},
                            {ObservationField::kBaseAngularVelocity, 3},
                            {ObservationField::kProjectedGravity, 3},
                            {ObservationField::kCommand, 2},
                            {ObservationField::kJointPosition, 8},
                            {ObservationField::kPreviousAction, 5}});
}

int ObservationLayout::Offset(ObservationField field) const {
  int offset = 0;
  for (const auto& s : segments_) {
    if (s.field == field) return offset;
    offset += s.width;
  }
  return -1;
}

std::string ToString(ObservationField field) {
  switch (field) {
    case ObservationField::kBaseLinearVelocity: return "base_lin_vel";
    case ObservationField::kBaseAngularVelocity: return "base_ang_vel";
    case ObservationField::kProjectedGravity: return "gravity";
    case ObservationField::kCommand: return "command";
    case ObservationField::kJointPosition: return "joint_pos";
    case ObservationField::kJointVelocity: return "joint_vel";
    case ObservationField::kPreviousAction: return "prev_action";
  }
  return "unknown";
}

namespace internal {

std::vector<std::uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace internal
}  // namespace tinygait
