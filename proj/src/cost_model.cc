// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/cost_model.h"

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "tinygait/error.h"

namespace tinygait {
namespace {

constexpr int kNumCoeffs = 5;
constexpr std::array<const char*, kNumCoeffs> kCoeffNames = {
    "c_mac", "c_phi", "c_q", "c_load", "c0"};

void RequirePositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void RequireNonNegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be nonnegative and finite");
  }
}

Eigen::Matrix<double, 1, kNumCoeffs> DesignRow(const PolicySpec& spec,
                                               QuantScheme scheme) {
  const double neurons = static_cast<double>(NeuronCount(spec));
  Eigen::Matrix<double, 1, kNumCoeffs> row;
  row << static_cast<double>(MacCount(spec)),
      static_cast<double>(ActivationCount(spec)), neurons,
      scheme == QuantScheme::kPerFeature ? neurons : 0.0, 1.0;
  return row;
}

// Lawson-Hanson active-set NNLS: min ||Ax - b|| subject to x >= 0.
Eigen::VectorXd Nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.cols());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * a.norm() * std::max(1.0, b.norm());

  auto solve_passive = [&]() {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
    const Eigen::VectorXd sp = ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(k);
    return s;
  };

  for (int outer = 0; outer < 10 * n; ++outer) {
    const Eigen::VectorXd w = a.transpose() * (b - a * x);
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > tol && (best < 0 || w(j) > w(best))) best = j;
    }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < 10 * n; ++inner) {
      const Eigen::VectorXd s = solve_passive();
      bool feasible = true;
      double step = 1.0;
      for (int j = 0; j < n; ++j) {
        if (passive[j] && s(j) <= 0.0) {
          feasible = false;
          step = std::min(step, x(j) / (x(j) - s(j)));
        }
      }
      if (feasible) {
        x = s;
        break;
      }
      x += step * (s - x);
      for (int j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
  }
  return x;
}

}  // namespace

void CycleCoeffs::Validate() const {
  RequireNonNegative(c_mac, "c_mac");
  RequireNonNegative(c_phi, "c_phi");
  RequireNonNegative(c_q, "c_q");
  RequireNonNegative(c_load, "c_load");
  RequireNonNegative(c0, "c0");
}

void PowerParams::Validate() const {
  RequirePositive(volts, "V");
  RequirePositive(amps_per_mhz, "I_MHz");
  RequirePositive(max_watts, "P_max");
}

void RateMeasurement::Validate() const {
  RequirePositive(f_update_hz, "f_update");
  RequirePositive(f_clk_hz, "f_clk");
  if (f_clk_hz < f_update_hz) {
    throw DomainError("f_clk must not be below f_update");
  }
  spec.Validate();
}

double CyclesDecomposed(const CycleCoeffs& c, const PolicySpec& spec,
                        QuantScheme scheme) {
  c.Validate();
  spec.Validate();
  const auto row = DesignRow(spec, scheme);
  Eigen::Matrix<double, kNumCoeffs, 1> coeffs;
  coeffs << c.c_mac, c.c_phi, c.c_q, c.c_load, c.c0;
  return row * coeffs;
}

double MeasuredCycles(double f_clk_hz, double f_update_hz) {
  RequirePositive(f_update_hz, "f_update");
  RequireNonNegative(f_clk_hz, "f_clk");
  return f_clk_hz / f_update_hz;
}

double MeasuredCycles(const RateMeasurement& m) {
  m.Validate();
  return MeasuredCycles(m.f_clk_hz, m.f_update_hz);
}

double MaxUpdateRate(double f_clk_hz, double cycles) {
  RequireNonNegative(f_clk_hz, "f_clk");
  RequirePositive(cycles, "cycles per update");
  return f_clk_hz / cycles;
}

double PowerAtClock(const PowerParams& p, double f_clk_hz) {
  RequirePositive(p.volts, "V");
  RequirePositive(p.amps_per_mhz, "I_MHz");
  RequireNonNegative(f_clk_hz, "f_clk");
  return p.volts * p.amps_per_mhz * (f_clk_hz / 1e6);
}

double MaxClock(const PowerParams& p) {
  p.Validate();
  return 1e6 * p.max_watts / (p.volts * p.amps_per_mhz);
}

double FeasibleUpdateRate(const PowerParams& p, double cycles) {
  return MaxUpdateRate(MaxClock(p), cycles);
}

double RequiredClock(double cycles, double f_target_hz) {
  RequirePositive(cycles, "cycles per update");
  RequireNonNegative(f_target_hz, "target update rate");
  return cycles * f_target_hz;
}

CoeffFit FitCoeffs(std::span<const CycleObservation> observations) {
  const auto m = static_cast<Eigen::Index>(observations.size());
  Eigen::MatrixXd a(m, kNumCoeffs);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const CycleObservation& o = observations[i];
    o.spec.Validate();
    RequireNonNegative(o.cycles, "observed cycles");
    a.row(i) = DesignRow(o.spec, o.scheme);
    b(i) = o.cycles;
  }

  // Column scaling keeps N_MAC (~1e4) and the constant column comparable.
  Eigen::VectorXd scale(kNumCoeffs);
  for (int j = 0; j < kNumCoeffs; ++j) {
    const double norm = a.col(j).norm();
    scale(j) = norm > 0.0 ? norm : 1.0;
  }
  const Eigen::MatrixXd as = a * scale.cwiseInverse().asDiagonal();

  Eigen::FullPivLU<Eigen::MatrixXd> lu(as);
  lu.setThreshold(1e-10);
  if (lu.rank() < kNumCoeffs) {
    std::string names;
    if (m == 0) {
      names = "all";
    } else {
      const Eigen::MatrixXd kernel = lu.kernel();
      for (int j = 0; j < kNumCoeffs; ++j) {
        if (kernel.row(j).cwiseAbs().maxCoeff() > 1e-9) {
          if (!names.empty()) names += ", ";
          names += kCoeffNames[j];
        }
      }
    }
    throw DataError("underdetermined cycle fit (rank " +
                    std::to_string(m == 0 ? 0 : lu.rank()) + " of " +
                    std::to_string(kNumCoeffs) +
                    "); unidentifiable coefficients: " + names);
  }

  const Eigen::VectorXd x = Nnls(as, b).cwiseQuotient(scale);
  CoeffFit fit;
  fit.coeffs = {x(0), x(1), x(2), x(3), x(4)};
  const Eigen::VectorXd r = b - a * x;
  fit.residuals.assign(r.data(), r.data() + r.size());
  fit.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(m));
  return fit;
}

BudgetConfig BudgetConfig::FromKv(const KvConfig& kv) {
  static const std::array<const char*, 5> kKnown = {
      "f_clk_hz", "v_volts", "i_per_mhz_amps", "p_max_watts",
      "cycles_per_update"};
  for (const auto& [key, value] : kv.values()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw DataError("unknown budget key '" + key + "'");
  }
  BudgetConfig cfg;
  cfg.f_clk_hz = kv.GetOptionalDouble("f_clk_hz");
  cfg.cycles_per_update = kv.GetOptionalDouble("cycles_per_update");
  const int power_keys = kv.Has("v_volts") + kv.Has("i_per_mhz_amps") +
                         kv.Has("p_max_watts");
  if (power_keys != 0 && power_keys != 3) {
    throw DataError(
        "power budget needs all of v_volts, i_per_mhz_amps, p_max_watts");
  }
  if (power_keys == 3) {
    PowerParams p;
    p.volts = kv.GetDouble("v_volts");
    p.amps_per_mhz = kv.GetDouble("i_per_mhz_amps");
    p.max_watts = kv.GetDouble("p_max_watts");
    p.Validate();
    cfg.power = p;
  }
  return cfg;
}

}  // namespace tinygait
