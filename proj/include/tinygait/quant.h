// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_QUANT_H_
#define TINYGAIT_QUANT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tinygait/policy.h"

namespace tinygait {

enum class QuantScheme : std::uint8_t { kPerTensor = 0, kPerFeature = 1 };

std::string ToString(QuantScheme scheme);
QuantScheme ParseQuantScheme(const std::string& name);

// Fixed-point rescale of an int32 accumulator:
//   y = clip_[-128,127](((multiplier * a + rounding) >> shift) + zero_point)
// with rounding = 2^(shift-1) for shift >= 1 and 0 otherwise.
struct RequantParams {
  std::int32_t multiplier = 0;
  int shift = 0;
  std::int32_t rounding = 0;
  std::int8_t zero_point = 0;

  static std::int32_t RoundingFor(int shift) {
    return shift >= 1 ? std::int32_t{1} << (shift - 1) : 0;
  }
  void Validate() const;
  // multiplier / 2^shift
  double Ratio() const;
};

std::int8_t Requantize(std::int32_t acc, const RequantParams& rp);

// Encodes `ratio` as multiplier / 2^shift using the largest shift in [0, 31]
// that keeps multiplier < 2^31. Relative error is <= 2^-24 whenever
// ratio >= 2^-8; below that the absolute error is <= 2^-32.
// Throws DomainError for ratio >= 2^31 or ratio <= 0.
RequantParams DeriveRequant(double ratio);
inline RequantParams DeriveRequant(double input_scale, double weight_scale,
                                   double output_scale) {
  return DeriveRequant(input_scale * weight_scale / output_scale);
}

// Affine int8 activation encoding: real = (q - zero_point) * scale.
struct ActivationQuant {
  float scale = 1.0f;
  std::int8_t zero_point = 0;

  // Range is widened to include 0; a degenerate range gets scale 1.
  static ActivationQuant FromRange(float min, float max);
};

struct QuantizedLayer {
  int in = 0;
  int out = 0;
  std::vector<std::int8_t> weights;  // row-major out x in, in [-127, 127]
  // Bias at scale input_scale * weight_scale, with the input zero-point
  // correction -z_in * sum_j w_q[i][j] folded in.
  std::vector<std::int32_t> bias;
  ActivationQuant input;
  ActivationQuant output;
  std::vector<float> weight_scales;      // 1 (per-tensor) or `out`
  std::vector<RequantParams> requant;    // 1 (per-tensor) or `out`

  const RequantParams& requant_for(int row) const {
    return requant.size() == 1 ? requant[0] : requant[row];
  }
  float weight_scale_for(int row) const {
    return weight_scales.size() == 1 ? weight_scales[0] : weight_scales[row];
  }
};

struct QuantizedPolicy {
  PolicySpec spec;
  QuantScheme scheme = QuantScheme::kPerTensor;
  ActivationQuant observation;
  // Integer LeakyReLU slope for negative inputs (multiplier/shift).
  RequantParams leaky_slope;
  std::vector<QuantizedLayer> layers;

  const ActivationQuant& action() const { return layers.back().output; }

  // Shapes, ranges and the int32 accumulator bound
  // n_in * 127 * 255 + |bias| < 2^31 for every layer.
  void Validate() const;
};

// Post-training quantization. Weights: symmetric int8 with one scale per
// tensor or per output row. Activations: asymmetric int8 from min/max of the
// calibration set propagated through the FP32 network (pre-activation
// values for hidden layers). The hidden activation must be LeakyReLU.
QuantizedPolicy QuantizePolicy(const Fp32Policy& policy, QuantScheme scheme,
                               std::span<const std::vector<float>> calib);

// Symmetric int8 quantization of one weight row set; exposed for tests.
// Returns the scale used (|max|/127, or 1 for an all-zero block).
float QuantizeSymmetric(std::span<const float> values,
                        std::span<std::int8_t> out);

std::vector<float> DequantizeWeights(const QuantizedLayer& layer);

std::vector<float> DequantizeAction(std::span<const std::int8_t> q, float scale,
                                    std::int8_t zero_point);

// Returns +infinity when the error energy is exactly zero. Throws DataError
// on shape mismatch or an all-zero reference.
double SqnrDb(std::span<const std::vector<float>> reference,
              std::span<const std::vector<float>> test);

// Bytes the device must hold to run the network: int8 weights, int32 biases,
// requant tables (6 bytes each) and the per-layer zero-points, plus the
// observation encoding and the integer activation slope.
std::int64_t Int8PayloadBytes(const QuantizedPolicy& qp);

// Binary quantized-policy file ("TGQ1"). See README for the layout.
std::vector<std::uint8_t> SerializeQuantized(const QuantizedPolicy& qp);
QuantizedPolicy DeserializeQuantized(std::span<const std::uint8_t> bytes);
void SaveQuantized(const QuantizedPolicy& qp, const std::filesystem::path& path);
QuantizedPolicy LoadQuantized(const std::filesystem::path& path);

}  // namespace tinygait

#endif  // TINYGAIT_QUANT_H_
