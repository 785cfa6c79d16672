// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_POLICY_H_
#define TINYGAIT_POLICY_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tinygait {

enum class ActivationKind : std::uint8_t { kElu = 0, kLeakyRelu = 1 };

struct ActivationSpec {
  ActivationKind kind = ActivationKind::kElu;
  float alpha = 1.0f;

  static ActivationSpec Elu(float alpha = 1.0f) {
    return {ActivationKind::kElu, alpha};
  }
  static ActivationSpec LeakyRelu(float alpha = 0.01f) {
    return {ActivationKind::kLeakyRelu, alpha};
  }

  // alpha > 0, and alpha <= 1 for LeakyReLU.
  void Validate() const;
};

float Activate(const ActivationSpec& a, float x);

// Layer widths [n0, n1, ..., nL]. Hidden layers use `hidden_activation`; the
// output layer is always identity.
struct PolicySpec {
  std::vector<int> layer_dims;
  ActivationSpec hidden_activation;

  static PolicySpec Locomotion(ActivationSpec act = ActivationSpec::Elu()) {
    return {{24, 128, 64, 8}, act};
  }

  void Validate() const;
  int num_layers() const { return static_cast<int>(layer_dims.size()) - 1; }
  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
};

// Sum over layers of n_{l-1} * n_l.
std::int64_t MacCount(const PolicySpec& spec);
// MacCount plus one bias per non-input neuron.
std::int64_t ParamCount(const PolicySpec& spec);
// Number of hidden units, i.e. activation evaluations per inference.
std::int64_t ActivationCount(const PolicySpec& spec);
// Number of neuron outputs across all non-input layers (hidden + output).
std::int64_t NeuronCount(const PolicySpec& spec);

struct DenseLayer {
  int in = 0;
  int out = 0;
  std::vector<float> weights;  // row-major, out x in
  std::vector<float> bias;     // out

  float w(int row, int col) const { return weights[row * in + col]; }
};

struct Fp32Policy {
  PolicySpec spec;
  std::vector<DenseLayer> layers;

  // All-zero weights and biases with shapes taken from `spec`.
  static Fp32Policy Zeros(const PolicySpec& spec);

  // Shapes match spec exactly and every value is finite.
  void Validate() const;
};

// Dense forward pass. Throws ShapeError when obs.size() != n0.
std::vector<float> InferFp32(const Fp32Policy& policy,
                             std::span<const float> obs);

// Binary policy file ("TGP1", little-endian). See README for the layout.
std::vector<std::uint8_t> SerializePolicy(const Fp32Policy& policy);
Fp32Policy DeserializePolicy(std::span<const std::uint8_t> bytes);
void SavePolicy(const Fp32Policy& policy, const std::filesystem::path& path);
Fp32Policy LoadPolicy(const std::filesystem::path& path);

// Raw weight+bias payload in bytes at 32-bit precision: 4 * ParamCount.
std::int64_t Fp32PayloadBytes(const PolicySpec& spec);

// Named slots of the policy input vector. The toolkit's math never looks at
// this; only the closed-loop harness and the wire codec need a fixed order.
enum class ObservationField : std::uint8_t {
  kBaseLinearVelocity,
  kBaseAngularVelocity,
  kProjectedGravity,
  kCommand,
  kJointPosition,
  kJointVelocity,
  kPreviousAction,
};

struct ObservationSegment {
  ObservationField field;
  int width;
};

class ObservationLayout {
 public:
  explicit ObservationLayout(std::vector<ObservationSegment> segments);

  // v_b(3), w_b(3), gravity(3), q_j(8), previous action(7).
  static ObservationLayout Default();
  // v_b(3), w_b(3), gravity(3), command(2), q_j(8), previous action(5).
  static ObservationLayout WithCommand();

  int size() const { return size_; }
  const std::vector<ObservationSegment>& segments() const { return segments_; }
  // Offset of the first slot of `field`, or -1 when absent.
  int Offset(ObservationField field) const;

 private:
  std::vector<ObservationSegment> segments_;
  int size_ = 0;
};

std::string ToString(ObservationField field);

}  // namespace tinygait

#endif  // TINYGAIT_POLICY_H_
