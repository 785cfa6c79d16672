// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef TINYGAIT_COST_MODEL_H_
#define TINYGAIT_COST_MODEL_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tinygait/kv_config.h"
#include "tinygait/policy.h"
#include "tinygait/quant.h"

namespace tinygait {

// Cycles per operation. `c0` is a fixed per-update overhead.
struct CycleCoeffs {
  double c_mac = 0.0;
  double c_phi = 0.0;
  double c_q = 0.0;
  double c_load = 0.0;
  double c0 = 0.0;

  void Validate() const;
};

// Linear active-power model P = V * I_MHz * f_clk / 1e6.
struct PowerParams {
  double volts = 1.0;
  double amps_per_mhz = 50e-6;  // illustrative default, not a measured part
  double max_watts = 250e-6;

  void Validate() const;
};

struct RateMeasurement {
  double f_clk_hz = 0.0;
  double f_update_hz = 0.0;
  QuantScheme scheme = QuantScheme::kPerFeature;
  PolicySpec spec = PolicySpec::Locomotion();

  void Validate() const;
};

// c_mac*N_MAC + c_q*N_neurons + c_phi*N_phi + c0, plus c_load*N_neurons for
// the per-feature scheme.
double CyclesDecomposed(const CycleCoeffs& c, const PolicySpec& spec,
                        QuantScheme scheme);

// End-to-end cycles per update inferred from an observed rate: f_clk/f_update.
double MeasuredCycles(const RateMeasurement& m);
double MeasuredCycles(double f_clk_hz, double f_update_hz);

double MaxUpdateRate(double f_clk_hz, double cycles);
double PowerAtClock(const PowerParams& p, double f_clk_hz);
double MaxClock(const PowerParams& p);
double FeasibleUpdateRate(const PowerParams& p, double cycles);
double RequiredClock(double cycles, double f_target_hz);

struct CycleObservation {
  PolicySpec spec;
  QuantScheme scheme;
  double cycles;
};

struct CoeffFit {
  CycleCoeffs coeffs;
  std::vector<double> residuals;  // observed - predicted, per observation
  double rms_residual = 0.0;
};

// Nonnegative least squares (Lawson-Hanson) over the decomposition above.
// Throws DataError naming the unidentifiable coefficients when the design
// matrix is rank deficient.
CoeffFit FitCoeffs(std::span<const CycleObservation> observations);

// Budget file keys: f_clk_hz, v_volts, i_per_mhz_amps, p_max_watts,
// cycles_per_update. All optional; power keys must appear together.
struct BudgetConfig {
  std::optional<double> f_clk_hz;
  std::optional<PowerParams> power;
  std::optional<double> cycles_per_update;

  static BudgetConfig FromKv(const KvConfig& kv);
};

}  // namespace tinygait

#endif  // TINYGAIT_COST_MODEL_H_
