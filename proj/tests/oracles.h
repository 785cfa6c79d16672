// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

// Reference implementations used to check the library. They follow the
// formulas directly and share no code with src/.

#ifndef TINYGAIT_TESTS_ORACLES_H_
#define TINYGAIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tinygait/int8_kernel.h"
#include "tinygait/plant.h"
#include "tinygait/quant.h"
#include "tinygait/reward.h"

namespace tinygait::oracle {

using BigInt = boost::multiprecision::cpp_int;

// floor(num / 2^shift) by division, not by shifting.
inline BigInt FloorDivPow2(const BigInt& num, int shift) {
  const BigInt den = BigInt(1) << shift;
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

inline std::int8_t ClipInt8(const BigInt& v) {
  if (v < -128) return -128;
  if (v > 127) return 127;
  return static_cast<std::int8_t>(static_cast<int>(v));
}

// clip(floor((m * acc + r) / 2^s) + z) in unbounded arithmetic.
inline std::int8_t Requant(const BigInt& acc, std::int64_t m, int s, int z) {
  const BigInt r = s >= 1 ? BigInt(1) << (s - 1) : BigInt(0);
  return ClipInt8(FloorDivPow2(BigInt(m) * acc + r, s) + z);
}

// Same formula in __int128, which cannot overflow for 32-bit inputs. Used
// where the sweep is too large for heap-backed integers.
inline std::int8_t Requant128(std::int64_t acc, std::int64_t m, int s, int z) {
  const __int128 num = static_cast<__int128>(m) * acc +
                       (s >= 1 ? static_cast<__int128>(1) << (s - 1) : 0);
  const __int128 den = static_cast<__int128>(1) << s;
  __int128 q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  q += z;
  return static_cast<std::int8_t>(q < -128 ? -128 : (q > 127 ? 127 : q));
}

inline std::int8_t Leaky(std::int8_t y, int z, const RequantParams& slope) {
  const int d = y - z;
  if (d >= 0) return y;
  const BigInt r = slope.shift >= 1 ? BigInt(1) << (slope.shift - 1) : BigInt(0);
  return ClipInt8(FloorDivPow2(BigInt(slope.multiplier) * d + r, slope.shift) + z);
}

struct Int8Reference {
  std::vector<std::int8_t> action;
  OpCounters counters;
};

// Integer forward pass with arbitrary-precision accumulators. The expected
// counters come from the layer shapes, not from instrumenting the loop.
inline Int8Reference InferInt8(const QuantizedPolicy& qp,
                               std::span<const std::int8_t> obs) {
  std::vector<std::int8_t> x(obs.begin(), obs.end());
  const std::size_t n_layers = qp.layers.size();
  for (std::size_t l = 0; l < n_layers; ++l) {
    const QuantizedLayer& L = qp.layers[l];
    std::vector<std::int8_t> y(L.out);
    for (int i = 0; i < L.out; ++i) {
      BigInt acc = L.bias[i];
      for (int j = 0; j < L.in; ++j) {
        acc += BigInt(L.weights[static_cast<std::size_t>(i) * L.in + j]) * x[j];
      }
      const RequantParams& rp = L.requant.size() == 1 ? L.requant[0] : L.requant[i];
      y[i] = Requant(acc, rp.multiplier, rp.shift, rp.zero_point);
      if (l + 1 < n_layers) y[i] = Leaky(y[i], L.output.zero_point, qp.leaky_slope);
    }
    x = std::move(y);
  }
  Int8Reference ref;
  ref.action = std::move(x);
  for (std::size_t l = 0; l < n_layers; ++l) {
    const auto in = static_cast<std::uint64_t>(qp.spec.layer_dims[l]);
    const auto out = static_cast<std::uint64_t>(qp.spec.layer_dims[l + 1]);
    ref.counters.macs += in * out;
    ref.counters.requants += out;
    if (l + 1 < n_layers) ref.counters.activations += out;
    if (qp.scheme == QuantScheme::kPerFeature) ref.counters.param_loads += out;
  }
  return ref;
}

// Bit-at-a-time CRC-8, polynomial x^8 + x^2 + x + 1, initial value 0.
inline std::uint8_t Crc8Bitwise(std::span<const std::uint8_t> bytes) {
  std::uint8_t crc = 0;
  for (std::uint8_t b : bytes) {
    crc ^= b;
    for (int k = 0; k < 8; ++k) {
      crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ 0x07)
                         : static_cast<std::uint8_t>(crc << 1);
    }
  }
  return crc;
}

struct RewardReference {
  double lin_track, ang_track, lin_penalty, ang_penalty, air_time, total;
};

// Reward terms written out from the table of weights, with the kernel
// exp(-e^2 / 0.25) and the 0.5 s air-time target.
inline RewardReference Reward(const PlantState& s, double v_cmd, double w_cmd,
                              double dt) {
  RewardReference r{};
  const double ev = v_cmd - s.v_b[0];
  const double ew = w_cmd - s.w_b[2];
  r.lin_track = 1.0 * dt * std::exp(-ev * ev / 0.25);
  r.ang_track = 0.5 * dt * std::exp(-ew * ew / 0.25);
  r.lin_penalty = -0.5 * dt * s.v_b[1] * s.v_b[1];
  r.ang_penalty = -0.05 * dt * (s.w_b[0] * s.w_b[0] + s.w_b[1] * s.w_b[1]);
  double air = 0.0;
  for (int f = 0; f < 4; ++f) {
    if (s.touchdown[f]) air += s.air_time[f] - 0.5;
  }
  r.air_time = 1.0 * dt * air;
  r.total = r.lin_track + r.ang_track + r.lin_penalty + r.ang_penalty + r.air_time;
  return r;
}

// Piecewise-linear interpolation with end clamping over (f, reward) knots.
inline double Interp(const std::vector<std::pair<double, double>>& pts, double f) {
  if (f <= pts.front().first) return pts.front().second;
  if (f >= pts.back().first) return pts.back().second;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (f <= pts[k].first) {
      const auto [f0, r0] = pts[k - 1];
      const auto [f1, r1] = pts[k];
      return r0 + (r1 - r0) * (f - f0) / (f1 - f0);
    }
  }
  return pts.back().second;
}

}  // namespace tinygait::oracle

#endif  // TINYGAIT_TESTS_ORACLES_H_
