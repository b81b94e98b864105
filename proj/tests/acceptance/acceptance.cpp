// Copyright 2026 The krylov-circuits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "krylov/analytics.hpp"
#include "krylov/circuits.hpp"
#include "krylov/complexity.hpp"
#include "krylov/ensembles.hpp"
#include "krylov/error.hpp"
#include "krylov/floquet_spins.hpp"
#include "krylov/gaussian.hpp"
#include "krylov/krylov_basis.hpp"
#include "krylov/statevector.hpp"
#include "oracles.hpp"
#include "stats.hpp"

using namespace krylov;

namespace {

// Tolerances.
constexpr double kHaarCurveSigmas = 3.0;
constexpr double kPlateauBand = 0.03;
constexpr double kScalingLow = 1.6;
constexpr double kScalingHigh = 2.4;
constexpr double kBoundEpsilon = 0.1;
constexpr double kBoundFraction = 0.9;
constexpr double kChiSquareAlpha = 0.01;
constexpr double kThresholdFlatness = 0.10;
constexpr double kThresholdGrowth = 1.5;
constexpr double kAndersonRatio = 0.5;
constexpr double kAndersonDrift = 0.10;
constexpr double kH0Low = 0.2;
constexpr double kH0High = 0.4;
constexpr double kSublinearLow = 0.25;
constexpr double kSublinearHigh = 0.45;
constexpr double kOrthonormality = 1e-10;
constexpr double kDenseOracle = 1e-12;
constexpr double kKsAlpha = 0.01;
constexpr double kProbabilitySum = 1e-10;
constexpr double kOperatorBand = 0.10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

// Shared global Haar run for criteria 1 and 2.
const DisorderAverage& global_haar_run() {
  static const DisorderAverage run = [] {
    GlobalHaarRunConfig config;
    config.n_qubits = 8;
    config.steps = 4 * 256;
    AverageOptions options;
    options.samples = 200;
    options.master_seed = 1001;
    return run_global_haar_ensemble(config, options);
  }();
  return run;
}

Outcome closed_form_haar() {
  const auto& run = global_haar_run();
  constexpr double kDim = 256;
  double worst = 0.0;
  std::size_t worst_t = 0;
  int violations = 0;
  for (std::size_t t = 0; t <= 200; ++t) {
    const double expected = t - t * (t - 1.0) / (2 * kDim);
    const double se = run.series.standard_error[t];
    const double dev = std::abs(run.series.mean[t] - expected);
    const double z = se > 0 ? dev / se : (dev > 1e-12 ? INFINITY : 0.0);
    if (z > kHaarCurveSigmas) ++violations;
    if (z > worst) {
      worst = z;
      worst_t = t;
    }
  }
  return {violations == 0, std::to_string(violations) + " of 201 points beyond " +
                               fmt(kHaarCurveSigmas) + " SE; worst z = " + fmt(worst) +
                               " at t = " + std::to_string(worst_t)};
}

Outcome saturation_value() {
  const auto& run = global_haar_run();
  if (!run.saturation) return {false, "no plateau detected"};
  const double c = run.saturation->c_inf;
  return {std::abs(c / 128.0 - 1.0) <= kPlateauBand,
          "C_inf = " + fmt(c, 6) + " +- " + fmt(run.c_inf_stderr) + " (target 128)"};
}

Outcome saturation_scaling() {
  std::vector<double> t_sat;
  std::string detail = "t_sat:";
  for (int n = 6; n <= 9; ++n) {
    BrickworkRunConfig config;
    config.n_qubits = n;
    config.steps = std::size_t{4} << n;
    AverageOptions options;
    options.samples = 64;
    options.master_seed = 3000 + n;
    const auto run = run_brickwork_ensemble(config, options);
    if (!run.saturation) return {false, "no plateau at N = " + std::to_string(n)};
    t_sat.push_back(static_cast<double>(run.saturation->t_sat));
    detail += " N=" + std::to_string(n) + ":" + fmt(t_sat.back());
  }
  bool pass = true;
  detail += "; ratios";
  for (std::size_t i = 0; i + 1 < t_sat.size(); ++i) {
    const double r = t_sat[i + 1] / t_sat[i];
    pass = pass && r >= kScalingLow && r <= kScalingHigh;
    detail += " " + fmt(r);
  }
  return {pass, detail};
}

Outcome measured_limit() {
  bool pass = true;
  std::string detail;
  for (int n : {5, 6}) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t bound = analytics::saturation_time_bound(dim, kBoundEpsilon).draws;
    BrickworkRunConfig config;
    config.n_qubits = n;
    config.p = 1.0;
    config.steps = 3 * bound;
    AverageOptions options;
    options.samples = 500;
    options.master_seed = 4000 + n;
    options.keep_realizations = true;
    const auto run = run_brickwork_ensemble(config, options);

    std::size_t within = 0;
    for (const auto& t : run.completion_steps) {
      if (t && *t <= bound) ++within;
    }
    const double fraction = static_cast<double>(within) / run.completion_steps.size();

    // The Krylov dimension after `bound` steps counts distinct basis states
    // among bound + 1 uniform draws (the initial state included).
    std::vector<double> observed(dim, 0.0), probs(dim, 0.0);
    for (const auto& r : run.realizations) observed[r.krylov_dim[bound] - 1] += 1;
    for (std::uint64_t m = 1; m <= dim; ++m) {
      probs[m - 1] = analytics::partial_coverage_probability(bound + 1, m, dim);
    }
    const auto chi = stats::chi_square(observed, probs);
    pass = pass && fraction >= kBoundFraction && chi.p_value > kChiSquareAlpha;
    detail += "N=" + std::to_string(n) + ": n=" + std::to_string(bound) +
              " complete-by-n " + fmt(fraction) + ", chi2 p = " + fmt(chi.p_value) + "; ";
  }
  return {pass, detail};
}

Outcome threshold_shape() {
  bool pass = true;
  std::string detail;
  for (int n = 5; n <= 8; ++n) {
    std::vector<double> t(10, NAN);
    for (int k = 0; k <= 9; ++k) {
      BrickworkRunConfig config;
      config.n_qubits = n;
      config.p = 0.1 * k;
      config.steps = std::size_t{16} << n;
      AverageOptions options;
      options.samples = 40;
      options.master_seed = 5000 + 16 * n + k;
      const auto run = run_brickwork_ensemble(config, options);
      if (auto m = mean_completion_step(run)) t[k] = *m;
    }
    detail += "N=" + std::to_string(n) + " ratios";
    for (int k = 0; k <= 9; ++k) {
      const double r = t[k] / t[0];
      detail += " " + fmt(r, 3);
      if (k <= 3 && !(std::abs(r - 1.0) <= kThresholdFlatness)) pass = false;
    }
    if (!(t[8] / t[0] >= kThresholdGrowth * (t[3] / t[0]))) pass = false;
    detail += "; ";
  }
  return {pass, detail};
}

Outcome anderson_suppression() {
  AverageOptions options;
  options.samples = 200;
  options.master_seed = 6000;
  auto plateau = [&](int n_sites, bool homogeneous) {
    gaussian::GaussianRunConfig config;
    config.n_sites = n_sites;
    config.homogeneous = homogeneous;
    config.mode = gaussian::Mode::SingleParticle;
    const auto run = gaussian::run_gaussian_ensemble(config, options);
    return run.saturation ? run.saturation->c_inf : NAN;
  };
  const double hom = plateau(100, true);
  const double inhom100 = plateau(100, false);
  const double inhom80 = plateau(80, false);
  const double drift = std::abs(inhom100 - inhom80) / inhom100;
  return {inhom100 < kAndersonRatio * hom && drift < kAndersonDrift,
          "homogeneous N=100 " + fmt(hom) + ", inhomogeneous N=100 " + fmt(inhom100) +
              ", N=80 " + fmt(inhom80) + ", drift " + fmt(drift)};
}

Outcome mbl_crossover() {
  bool pass = true;
  std::string detail;
  for (int n : {6, 7, 8}) {
    spins::ScanConfig config;
    config.n_qubits = n;
    for (int k = 1; k <= 12; ++k) config.h_grid.push_back(0.05 * k);
    AverageOptions options;
    options.samples = 200;
    options.master_seed = 7000 + n;
    spins::TransitionScan scan;
    try {
      scan = spins::scan_mbl_transition(config, options);
    } catch (const spins::EstimationError& e) {
      scan = e.partial();
    }
    detail += "N=" + std::to_string(n) + " C/C(0.6)";
    for (double v : scan.normalized) detail += " " + fmt(v, 3);
    if (scan.h0) {
      detail += " h0=" + fmt(*scan.h0, 3);
      pass = pass && *scan.h0 >= kH0Low && *scan.h0 <= kH0High;
    } else {
      detail += " h0=none";
      pass = false;
    }
    // Diagnostic only: the half-way point of the min-max rescaled curve.
    const auto [lo, hi] = std::minmax_element(scan.c_inf.begin(), scan.c_inf.end());
    if (hi != scan.c_inf.end() && *hi > *lo) {
      std::vector<double> rescaled;
      for (double c : scan.c_inf) rescaled.push_back((c - *lo) / (*hi - *lo));
      if (auto h = spins::interpolate_crossing(scan.h, rescaled, 0.5)) {
        detail += " (min-max h=" + fmt(*h, 3) + ")";
      }
    }
    detail += "; ";
  }
  return {pass, detail};
}

Outcome sublinear_combinatorics() {
  std::vector<double> log_t, log_m;
  for (std::uint64_t t = 8; t <= 512; t *= 2) {
    const auto est = analytics::min_complexity_estimate(t, 256);
    log_t.push_back(std::log(static_cast<double>(t)));
    log_m.push_back(std::log(static_cast<double>(est.m_max)));
  }
  const double slope = stats::ols_slope(log_t, log_m);
  return {slope >= kSublinearLow && slope <= kSublinearHigh,
          "log-log slope of m_max = " + fmt(slope)};
}

bool krylov_orthonormality(std::string& detail) {
  constexpr int kN = 8;
  Rng rng(9001);
  const auto circuit = spins::build_floquet_circuit(kN, GateEnsemble::mbl(0.1), rng);
  QuantumState state = QuantumState::alternating(kN);
  KrylovBasis<Complex> basis(state.dim());
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    basis.extend_and_project(state.amplitudes(), i);
    if (basis.size() < 32 || (i + 1) % 1000 == 0 || basis.size() == state.dim()) {
      worst = std::max(worst, basis.orthonormality_defect());
    }
    circuit.step(state);
  }
  worst = std::max(worst, basis.orthonormality_defect());
  detail += "orthonormality " + fmt(worst, 3) + "; ";
  return worst < kOrthonormality;
}

bool dense_oracle(std::string& detail) {
  double worst = 0.0;
  Rng rng(9002);
  for (int n = 2; n <= 5; ++n) {
    for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
      if (b == Boundary::Periodic && (n % 2 != 0 || n == 2)) continue;
      const auto even = sample_layer(Parity::Even, n, b, GateEnsemble::haar_u4(), rng);
      const auto odd = sample_layer(Parity::Odd, n, b, GateEnsemble::haar_u4(), rng);
      const CVector psi0 = sample_haar_state(Eigen::Index{1} << n, rng);

      for (const auto* layer : {&even, &odd}) {
        for (const auto& g : layer->gates) {
          QuantumState s = QuantumState::from_amplitudes(n, psi0);
          apply_two_qubit_gate(s, g.gate, g.link, b);
          const auto [qa, qb] = link_qubits(g.link, n, b);
          const CVector ref = oracle::embed_pair(g.gate, qa, qb, n) * psi0;
          worst = std::max(worst, (s.amplitudes() - ref).cwiseAbs().maxCoeff());
        }
      }

      oracle::CMatrix u_even = oracle::identity(1 << n), u_odd = oracle::identity(1 << n);
      for (const auto& g : even.gates) {
        const auto [qa, qb] = link_qubits(g.link, n, b);
        u_even = oracle::embed_pair(g.gate, qa, qb, n) * u_even;
      }
      for (const auto& g : odd.gates) {
        const auto [qa, qb] = link_qubits(g.link, n, b);
        u_odd = oracle::embed_pair(g.gate, qa, qb, n) * u_odd;
      }
      QuantumState s = QuantumState::from_amplitudes(n, psi0);
      brickwork_step(s, odd, even, b);
      worst = std::max(worst, (s.amplitudes() - u_odd * u_even * psi0).cwiseAbs().maxCoeff());

      for (int site = 0; site < n; ++site) {
        QuantumState m = QuantumState::from_amplitudes(n, psi0);
        const auto record = measure_site(m, site, rng);
        CVector ref = oracle::z_projector(site, record.outcome_plus, n) * psi0;
        ref /= ref.norm();
        worst = std::max(worst, (m.amplitudes() - ref).cwiseAbs().maxCoeff());
      }
    }
  }
  detail += "dense oracle " + fmt(worst, 3) + "; ";
  return worst < kDenseOracle;
}

bool porter_thomas(std::string& detail) {
  constexpr int kDim = 16;
  Rng rng(9003);
  std::vector<double> p;
  p.reserve(100000);
  for (int i = 0; i < 100000; ++i) p.push_back(std::norm(sample_haar_unitary(kDim, rng)(0, 0)));
  const auto exponential =
      stats::ks_one_sample(p, [](double x) { return 1.0 - std::exp(-kDim * x); });
  const auto beta =
      stats::ks_one_sample(p, [](double x) { return 1.0 - std::pow(1.0 - x, kDim - 1); });
  detail += "Porter-Thomas KS p = " + fmt(exponential.p_value, 3) + " (finite-D law p = " +
            fmt(beta.p_value, 3) + "); ";
  return exponential.p_value > kKsAlpha;
}

bool stirling_identities(std::string& detail) {
  const auto& s = analytics::stirling_table();
  bool ok = true;
  for (std::uint64_t n = 1; n <= s.n_max(); ++n) {
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (s(n, m) != m * s(n - 1, m) + s(n - 1, m - 1)) ok = false;
    }
  }
  // Σ_m S(n,m)·D(D-1)...(D-m+1) = D^n.
  for (std::uint64_t dim : {2u, 5u, 64u}) {
    for (std::uint64_t n = 0; n <= s.n_max(); ++n) {
      analytics::BigInt sum = 0, falling = 1;
      for (std::uint64_t m = 0; m <= std::min(n, dim); ++m) {
        sum += s(n, m) * falling;
        falling *= dim - m;
      }
      if (sum != boost::multiprecision::pow(analytics::BigInt(dim), static_cast<unsigned>(n))) {
        ok = false;
      }
    }
  }
  detail += std::string("Stirling ") + (ok ? "exact" : "MISMATCH") + "; ";
  return ok;
}

bool occupancy_normalization(std::string& detail) {
  double worst = 0.0;
  for (std::uint64_t dim : {2u, 4u, 8u, 16u, 32u, 64u}) {
    for (std::uint64_t n = 1; n <= 100; ++n) {
      double sum = 0.0;
      for (std::uint64_t m = 1; m <= dim; ++m) {
        sum += analytics::partial_coverage_probability(n, m, dim);
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  detail += "sum P(n,m) - 1 = " + fmt(worst, 3) + "; ";
  return worst < kProbabilitySum;
}

bool worker_determinism(std::string& detail) {
  AverageOptions options;
  options.samples = 12;
  options.master_seed = 9004;
  bool ok = true;
  auto compare = [&](const std::function<DisorderAverage(const AverageOptions&)>& run) {
    options.workers = 1;
    const auto a = run(options);
    options.workers = 4;
    const auto b = run(options);
    ok = ok && a.series.mean == b.series.mean &&
         a.series.standard_error == b.series.standard_error && a.seeds == b.seeds;
  };
  compare([](const AverageOptions& o) {
    BrickworkRunConfig c;
    c.n_qubits = 5;
    c.p = 0.3;
    c.steps = 64;
    return run_brickwork_ensemble(c, o);
  });
  compare([](const AverageOptions& o) {
    spins::FloquetRunConfig c;
    c.n_qubits = 5;
    c.ensemble = GateEnsemble::mbl(0.2);
    c.steps = 64;
    return spins::run_floquet_complexity(c, o);
  });
  compare([](const AverageOptions& o) {
    gaussian::GaussianRunConfig c;
    c.n_sites = 12;
    c.steps = 64;
    return gaussian::run_gaussian_ensemble(c, o);
  });
  detail += std::string("workers ") + (ok ? "identical" : "DIFFER");
  return ok;
}

Outcome property_suites() {
  std::string detail;
  bool pass = true;
  pass = krylov_orthonormality(detail) && pass;
  pass = dense_oracle(detail) && pass;
  pass = porter_thomas(detail) && pass;
  pass = stirling_identities(detail) && pass;
  pass = occupancy_normalization(detail) && pass;
  pass = worker_determinism(detail) && pass;
  return {pass, detail};
}

Outcome operator_complexity() {
  OperatorHaarRunConfig config;
  config.n_qubits = 3;
  config.steps = 4 * 64;
  AverageOptions options;
  options.samples = 200;
  options.master_seed = 10000;
  const auto run = run_operator_haar_ensemble(config, options);
  // Early time: the first ambient/16 steps.
  std::vector<double> t, k;
  for (std::size_t i = 0; i <= 4; ++i) {
    t.push_back(static_cast<double>(i));
    k.push_back(run.series.mean[i]);
  }
  const double slope = stats::ols_slope(t, k);
  const double plateau = run.saturation ? run.saturation->c_inf : NAN;
  return {std::abs(slope - 1.0) <= kOperatorBand && std::abs(plateau / 32.0 - 1.0) <= kOperatorBand,
          "early slope " + fmt(slope) + ", plateau " + fmt(plateau) + " (target 32)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form Haar curve, N=8", closed_form_haar},
      {"Haar saturation value D/2", saturation_value},
      {"saturation-time doubling, N=6..9", saturation_scaling},
      {"measurement-dominated limit p=1", measured_limit},
      {"measurement threshold shape", threshold_shape},
      {"Anderson suppression", anderson_suppression},
      {"MBL crossover h0", mbl_crossover},
      {"sublinear combinatorial growth", sublinear_combinatorics},
      {"property suites", property_suites},
      {"operator complexity, N=3", operator_complexity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
