// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_INT8_KERNEL_H_
#define TINYGAIT_INT8_KERNEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "tinygait/quant.h"

namespace tinygait {

// Operation tallies for one integer inference. For a spec S:
//   macs = MacCount(S), activations = ActivationCount(S),
//   requants = NeuronCount(S), param_loads = NeuronCount(S) (per-feature) / 0.
struct OpCounters {
  std::uint64_t macs = 0;
  std::uint64_t activations = 0;
  std::uint64_t requants = 0;
  std::uint64_t param_loads = 0;

  bool operator==(const OpCounters&) const = default;
};

struct Int8Result {
  std::vector<std::int8_t> action;
  OpCounters counters;
};

// Integer LeakyReLU around the zero-point: negative offsets are scaled by the
// policy's slope multiplier/shift, then re-saturated.
std::int8_t LeakyReluInt8(std::int8_t y, std::int8_t zero_point,
                          const RequantParams& slope);

// Integer-only forward pass: int8 x int8 products into an int32 accumulator
// seeded with the (zero-point folded) bias, per-feature requantization, and
// the integer LeakyReLU on hidden layers.
Int8Result InferInt8(const QuantizedPolicy& qp, std::span<const std::int8_t> obs_q);

std::vector<std::int8_t> QuantizeObs(std::span<const float> obs, float scale,
                                     std::int8_t zero_point);

// QuantizeObs -> InferInt8 -> DequantizeAction.
std::vector<float> FusedInferDequant(const QuantizedPolicy& qp,
                                     std::span<const float> obs);

}  // namespace tinygait

#endif  // TINYGAIT_INT8_KERNEL_H_
