// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/quant.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "byte_io.h"
#include "tinygait/error.h"

namespace tinygait {
namespace {

constexpr std::array<std::uint8_t, 4> kQuantMagic = {0x54, 0x47, 0x51, 0x31};
constexpr std::int64_t kInt32Limit = std::int64_t{1} << 31;

std::int8_t SaturateInt8(std::int64_t v) {
  return static_cast<std::int8_t>(std::clamp<std::int64_t>(v, -128, 127));
}

void PutRequant(internal::ByteWriter& w, const RequantParams& rp) {
  w.Put(rp.multiplier);
  w.Put(static_cast<std::uint8_t>(rp.shift));
  w.Put(rp.zero_point);
}

RequantParams GetRequant(internal::ByteReader& r) {
  RequantParams rp;
  rp.multiplier = r.Get<std::int32_t>();
  rp.shift = r.Get<std::uint8_t>();
  rp.zero_point = r.Get<std::int8_t>();
  if (rp.shift > 31) throw FormatError("requant shift out of range");
  rp.rounding = RequantParams::RoundingFor(rp.shift);
  rp.Validate();
  return rp;
}

void ValidateActivationQuant(const ActivationQuant& q, const char* what) {
  if (!(q.scale > 0.0f) || !std::isfinite(q.scale)) {
    throw DataError(std::string(what) + " scale must be positive and finite");
  }
}

}  // namespace

std::string ToString(QuantScheme scheme) {
  return scheme == QuantScheme::kPerTensor ? "per-tensor" : "per-feature";
}

QuantScheme ParseQuantScheme(const std::string& name) {
  if (name == "per-tensor") return QuantScheme::kPerTensor;
  if (name == "per-feature") return QuantScheme::kPerFeature;
  throw DataError("unknown quantization scheme '" + name +
                  "' (expected per-tensor or per-feature)");
}

void RequantParams::Validate() const {
  if (shift < 0 || shift > 31) throw DataError("requant shift out of [0, 31]");
  if (multiplier < 0) throw DataError("requant multiplier must be >= 0");
  if (rounding != RoundingFor(shift)) {
    throw DataError("requant rounding term must be 2^(shift-1)");
  }
}

double RequantParams::Ratio() const {
  return std::ldexp(static_cast<double>(multiplier), -shift);
}

std::int8_t Requantize(std::int32_t acc, const RequantParams& rp) {
  const std::int64_t scaled =
      (std::int64_t{rp.multiplier} * acc + rp.rounding) >> rp.shift;
  return SaturateInt8(scaled + rp.zero_point);
}

RequantParams DeriveRequant(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw DomainError("requant ratio must be positive and finite");
  }
  if (ratio >= static_cast<double>(kInt32Limit)) {
    throw DomainError("requant ratio overflows a 31-bit multiplier");
  }
  for (int shift = 31; shift >= 0; --shift) {
    const double scaled = std::ldexp(ratio, shift);
    if (scaled >= static_cast<double>(kInt32Limit)) continue;
    const auto m = static_cast<std::int64_t>(std::llround(scaled));
    if (m >= kInt32Limit) continue;
    RequantParams rp;
    rp.multiplier = static_cast<std::int32_t>(m);
    rp.shift = shift;
    rp.rounding = RequantParams::RoundingFor(shift);
    return rp;
  }
  throw DomainError("requant ratio overflows a 31-bit multiplier");
}

ActivationQuant ActivationQuant::FromRange(float min, float max) {
  min = std::min(min, 0.0f);
  max = std::max(max, 0.0f);
  ActivationQuant q;
  if (!(max > min)) return q;
  q.scale = (max - min) / 255.0f;
  const float zp = -128.0f - min / q.scale;
  q.zero_point = SaturateInt8(std::lround(zp));
  return q;
}

void QuantizedPolicy::Validate() const {
  spec.Validate();
  if (spec.hidden_activation.kind != ActivationKind::kLeakyRelu) {
    throw DataError("integer kernel requires a LeakyReLU hidden activation");
  }
  ValidateActivationQuant(observation, "observation");
  leaky_slope.Validate();
  if (static_cast<int>(layers.size()) != spec.num_layers()) {
    throw ShapeError("quantized layer count does not match spec");
  }
  for (int l = 0; l < spec.num_layers(); ++l) {
    const QuantizedLayer& layer = layers[l];
    const std::size_t n_params =
        scheme == QuantScheme::kPerFeature ? layer.out : 1;
    if (layer.in != spec.layer_dims[l] || layer.out != spec.layer_dims[l + 1] ||
        layer.weights.size() != static_cast<std::size_t>(layer.in) * layer.out ||
        layer.bias.size() != static_cast<std::size_t>(layer.out) ||
        layer.weight_scales.size() != n_params ||
        layer.requant.size() != n_params) {
      throw ShapeError("quantized layer " + std::to_string(l) +
                       " shape does not match spec");
    }
    ValidateActivationQuant(layer.input, "layer input");
    ValidateActivationQuant(layer.output, "layer output");
    const ActivationQuant& expected_in =
        l == 0 ? observation : layers[l - 1].output;
    if (layer.input.scale != expected_in.scale ||
        layer.input.zero_point != expected_in.zero_point) {
      throw DataError("layer " + std::to_string(l) +
                      " input encoding does not match the previous output");
    }
    for (float s : layer.weight_scales) {
      if (!(s > 0.0f) || !std::isfinite(s)) {
        throw DataError("weight scale must be positive and finite");
      }
    }
    for (std::int8_t w : layer.weights) {
      if (w == -128) throw DataError("weights must lie in [-127, 127]");
    }
    for (const RequantParams& rp : layer.requant) {
      rp.Validate();
      if (rp.zero_point != layer.output.zero_point) {
        throw DataError("requant zero-point differs from output zero-point");
      }
    }
    std::int64_t max_bias = 0;
    for (std::int32_t b : layer.bias) {
      max_bias = std::max<std::int64_t>(max_bias, std::abs(std::int64_t{b}));
    }
    if (std::int64_t{layer.in} * 127 * 255 + max_bias >= kInt32Limit) {
      throw DataError("layer " + std::to_string(l) +
                      " can overflow the int32 accumulator");
    }
  }
}

float QuantizeSymmetric(std::span<const float> values,
                        std::span<std::int8_t> out) {
  float max_abs = 0.0f;
  for (float v : values) max_abs = std::max(max_abs, std::abs(v));
  const float scale = max_abs > 0.0f ? max_abs / 127.0f : 1.0f;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const long q = std::lround(values[i] / scale);
    out[i] = static_cast<std::int8_t>(std::clamp<long>(q, -127, 127));
  }
  return scale;
}

QuantizedPolicy QuantizePolicy(const Fp32Policy& policy, QuantScheme scheme,
                               std::span<const std::vector<float>> calib) {
  policy.Validate();
  if (policy.spec.hidden_activation.kind != ActivationKind::kLeakyRelu) {
    throw DomainError(
        "integer kernel supports LeakyReLU only; convert the policy first");
  }
  if (calib.empty()) throw DataError("calibration set is empty");
  for (const auto& obs : calib) {
    if (static_cast<int>(obs.size()) != policy.spec.input_dim()) {
      throw ShapeError("calibration observation has wrong width");
    }
  }

  QuantizedPolicy qp;
  qp.spec = policy.spec;
  qp.scheme = scheme;
  qp.leaky_slope = DeriveRequant(policy.spec.hidden_activation.alpha);

  std::vector<std::vector<float>> acts(calib.begin(), calib.end());
  float lo = std::numeric_limits<float>::max();
  float hi = std::numeric_limits<float>::lowest();
  for (const auto& a : acts) {
    for (float v : a) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  qp.observation = ActivationQuant::FromRange(lo, hi);

  const int last = policy.spec.num_layers() - 1;
  for (int l = 0; l <= last; ++l) {
    const DenseLayer& src = policy.layers[l];
    QuantizedLayer layer;
    layer.in = src.in;
    layer.out = src.out;
    layer.input = l == 0 ? qp.observation : qp.layers.back().output;

    // Pre-activation range over the calibration set.
    lo = std::numeric_limits<float>::max();
    hi = std::numeric_limits<float>::lowest();
    for (auto& a : acts) {
      std::vector<float> pre(src.out);
      for (int i = 0; i < src.out; ++i) {
        float acc = src.bias[i];
        for (int j = 0; j < src.in; ++j) acc += src.w(i, j) * a[j];
        pre[i] = acc;
        lo = std::min(lo, acc);
        hi = std::max(hi, acc);
      }
      if (l != last) {
        for (float& v : pre) v = Activate(policy.spec.hidden_activation, v);
      }
      a = std::move(pre);
    }
    layer.output = ActivationQuant::FromRange(lo, hi);

    layer.weights.resize(src.weights.size());
    if (scheme == QuantScheme::kPerTensor) {
      layer.weight_scales.push_back(QuantizeSymmetric(src.weights, layer.weights));
    } else {
      for (int i = 0; i < src.out; ++i) {
        const std::size_t off = static_cast<std::size_t>(i) * src.in;
        layer.weight_scales.push_back(QuantizeSymmetric(
            std::span(src.weights).subspan(off, src.in),
            std::span(layer.weights).subspan(off, src.in)));
      }
    }

    for (float ws : layer.weight_scales) {
      RequantParams rp = DeriveRequant(layer.input.scale, ws, layer.output.scale);
      rp.zero_point = layer.output.zero_point;
      layer.requant.push_back(rp);
    }

    layer.bias.resize(src.out);
    for (int i = 0; i < src.out; ++i) {
      const double bias_scale =
          double{layer.input.scale} * layer.weight_scale_for(i);
      std::int64_t b = std::llround(src.bias[i] / bias_scale);
      std::int64_t row_sum = 0;
      for (int j = 0; j < src.in; ++j) {
        row_sum += layer.weights[static_cast<std::size_t>(i) * src.in + j];
      }
      b -= std::int64_t{layer.input.zero_point} * row_sum;
      if (b >= kInt32Limit || b < -kInt32Limit) {
        throw DomainError("quantized bias of layer " + std::to_string(l) +
                          " overflows int32");
      }
      layer.bias[i] = static_cast<std::int32_t>(b);
    }
    qp.layers.push_back(std::move(layer));
  }
  qp.Validate();
  return qp;
}

std::vector<float> DequantizeWeights(const QuantizedLayer& layer) {
  std::vector<float> out(layer.weights.size());
  for (int i = 0; i < layer.out; ++i) {
    for (int j = 0; j < layer.in; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * layer.in + j;
      out[k] = layer.weights[k] * layer.weight_scale_for(i);
    }
  }
  return out;
}

std::vector<float> DequantizeAction(std::span<const std::int8_t> q, float scale,
                                    std::int8_t zero_point) {
  std::vector<float> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[i] = static_cast<float>(int{q[i]} - int{zero_point}) * scale;
  }
  return out;
}

double SqnrDb(std::span<const std::vector<float>> reference,
              std::span<const std::vector<float>> test) {
  if (reference.size() != test.size()) {
    throw ShapeError("SQNR inputs differ in sample count");
  }
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t n = 0; n < reference.size(); ++n) {
    if (reference[n].size() != test[n].size()) {
      throw ShapeError("SQNR inputs differ in vector width");
    }
    for (std::size_t i = 0; i < reference[n].size(); ++i) {
      const double r = reference[n][i];
      const double e = r - double{test[n][i]};
      signal += r * r;
      noise += e * e;
    }
  }
  if (signal == 0.0) throw DataError("SQNR undefined for an all-zero reference");
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / noise);
}

std::int64_t Int8PayloadBytes(const QuantizedPolicy& qp) {
  std::int64_t bytes = 4 + 1;  // observation scale + zero-point
  bytes += 4 + 1;              // integer LeakyReLU multiplier + shift
  for (const QuantizedLayer& layer : qp.layers) {
    bytes += static_cast<std::int64_t>(layer.weights.size());
    bytes += 4 * static_cast<std::int64_t>(layer.bias.size());
    bytes += 6 * static_cast<std::int64_t>(layer.requant.size());
    bytes += 1;  // output zero-point
  }
  return bytes;
}

std::vector<std::uint8_t> SerializeQuantized(const QuantizedPolicy& qp) {
  qp.Validate();
  internal::ByteWriter w;
  w.PutBytes(kQuantMagic);
  w.Put(static_cast<std::uint8_t>(qp.scheme));
  w.Put(static_cast<std::uint8_t>(qp.spec.layer_dims.size()));
  for (int d : qp.spec.layer_dims) w.Put(static_cast<std::uint16_t>(d));
  w.Put(static_cast<std::uint8_t>(qp.spec.hidden_activation.kind));
  w.Put(qp.spec.hidden_activation.alpha);
  w.Put(qp.observation.scale);
  w.Put(qp.observation.zero_point);
  PutRequant(w, qp.leaky_slope);
  for (const QuantizedLayer& layer : qp.layers) {
    w.PutAll<std::int8_t>(layer.weights);
    w.PutAll<std::int32_t>(layer.bias);
    w.Put(layer.input.scale);
    w.Put(layer.output.scale);
    w.PutAll<float>(layer.weight_scales);
    w.Put(layer.input.zero_point);
    w.Put(layer.output.zero_point);
    for (const RequantParams& rp : layer.requant) PutRequant(w, rp);
  }
  return w.Take();
}

QuantizedPolicy DeserializeQuantized(std::span<const std::uint8_t> bytes) {
  internal::ByteReader r(bytes);
  for (std::uint8_t m : kQuantMagic) {
    if (r.Get<std::uint8_t>() != m) throw FormatError("bad quantized-policy magic");
  }
  QuantizedPolicy qp;
  const auto scheme = r.Get<std::uint8_t>();
  if (scheme > 1) throw FormatError("unknown quantization scheme byte");
  qp.scheme = static_cast<QuantScheme>(scheme);
  const int n_dims = r.Get<std::uint8_t>();
  for (int i = 0; i < n_dims; ++i) qp.spec.layer_dims.push_back(r.Get<std::uint16_t>());
  const auto kind = r.Get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(ActivationKind::kLeakyRelu)) {
    throw FormatError("unknown activation kind");
  }
  qp.spec.hidden_activation.kind = static_cast<ActivationKind>(kind);
  qp.spec.hidden_activation.alpha = r.Get<float>();
  qp.spec.Validate();
  qp.observation.scale = r.Get<float>();
  qp.observation.zero_point = r.Get<std::int8_t>();
  qp.leaky_slope = GetRequant(r);

  const bool per_feature = qp.scheme == QuantScheme::kPerFeature;
  for (int l = 0; l < qp.spec.num_layers(); ++l) {
    QuantizedLayer layer;
    layer.in = qp.spec.layer_dims[l];
    layer.out = qp.spec.layer_dims[l + 1];
    const std::size_t n_params = per_feature ? layer.out : 1;
    layer.weights =
        r.GetVector<std::int8_t>(static_cast<std::size_t>(layer.in) * layer.out);
    layer.bias = r.GetVector<std::int32_t>(layer.out);
    layer.input.scale = r.Get<float>();
    layer.output.scale = r.Get<float>();
    layer.weight_scales = r.GetVector<float>(n_params);
    layer.input.zero_point = r.Get<std::int8_t>();
    layer.output.zero_point = r.Get<std::int8_t>();
    for (std::size_t i = 0; i < n_params; ++i) layer.requant.push_back(GetRequant(r));
    qp.layers.push_back(std::move(layer));
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after quantized policy");
  qp.Validate();
  return qp;
}

void SaveQuantized(const QuantizedPolicy& qp, const std::filesystem::path& path) {
  internal::WriteFileBytes(path.string(), SerializeQuantized(qp));
}

QuantizedPolicy LoadQuantized(const std::filesystem::path& path) {
  return DeserializeQuantized(internal::ReadFileBytes(path.string()));
}

}  // namespace tinygait
