// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/int8_kernel.h"

#include <algorithm>
#include <cmath>

#include "tinygait/error.h"

namespace tinygait {

std::int8_t LeakyReluInt8(std::int8_t y, std::int8_t zero_point,
                          const RequantParams& slope) {
  std::int32_t d = std::int32_t{y} - zero_point;
  if (d < 0) {
    d = static_cast<std::int32_t>(
        (std::int64_t{slope.multiplier} * d + slope.rounding) >> slope.shift);
  }
  return static_cast<std::int8_t>(std::clamp(d + zero_point, -128, 127));
}

Int8Result InferInt8(const QuantizedPolicy& qp,
                     std::span<const std::int8_t> obs_q) {
  if (static_cast<int>(obs_q.size()) != qp.spec.input_dim()) {
    throw ShapeError("quantized observation has " + std::to_string(obs_q.size()) +
                     " components, policy expects " +
                     std::to_string(qp.spec.input_dim()));
  }
  Int8Result result;
  OpCounters& c = result.counters;
  const bool per_feature = qp.scheme == QuantScheme::kPerFeature;

  std::vector<std::int8_t> x(obs_q.begin(), obs_q.end());
  std::vector<std::int8_t> y;
  const std::size_t last = qp.layers.size() - 1;
  for (std::size_t l = 0; l < qp.layers.size(); ++l) {
    const QuantizedLayer& layer = qp.layers[l];
    y.resize(layer.out);
    for (int i = 0; i < layer.out; ++i) {
      const std::int8_t* row = &layer.weights[static_cast<std::size_t>(i) * layer.in];
      std::int32_t acc = layer.bias[i];
      for (int j = 0; j < layer.in; ++j) {
        acc += std::int32_t{row[j]} * std::int32_t{x[j]};
      }
      // Validate() bounds |acc| below 2^31 for every input.
      c.macs += static_cast<std::uint64_t>(layer.in);
      if (per_feature) ++c.param_loads;
      std::int8_t out = Requantize(acc, layer.requant_for(i));
      ++c.requants;
      if (l != last) {
        out = LeakyReluInt8(out, layer.output.zero_point, qp.leaky_slope);
        ++c.activations;
      }
      y[i] = out;
    }
    x.swap(y);
  }
  result.action = std::move(x);
  return result;
}

std::vector<std::int8_t> QuantizeObs(std::span<const float> obs, float scale,
                                     std::int8_t zero_point) {
  std::vector<std::int8_t> q(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const long v = std::lround(obs[i] / scale) + zero_point;
    q[i] = static_cast<std::int8_t>(std::clamp<long>(v, -128, 127));
  }
  return q;
}

std::vector<float> FusedInferDequant(const QuantizedPolicy& qp,
                                     std::span<const float> obs) {
  const auto obs_q = QuantizeObs(obs, qp.observation.scale, qp.observation.zero_point);
  const Int8Result r = InferInt8(qp, obs_q);
  return DequantizeAction(r.action, qp.action().scale, qp.action().zero_point);
}

}  // namespace tinygait
