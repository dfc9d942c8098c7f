// Acceptance suite: end-to-end verification of the lab's numeric claims.
// Each criterion prints one PASS/FAIL line; the stochastic runs also persist
// their CSV/JSON artifacts and are replayed at a different worker count for
// the byte-identity check.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#define SPDELAB_TEST_NEEDS_BRUTE_SUM
#include "helpers.hpp"
#include "spdelab/equations.hpp"
#include "spdelab/error_lab.hpp"
#include "spdelab/experiment.hpp"
#include "spdelab/integrator.hpp"

using namespace spde;
using spectral::kPi;

namespace {

struct Check {
  bool ok = true;
  void expect(bool condition) { ok = ok && condition; }
};

void announce(int criterion, bool ok, const std::string& detail) {
  std::printf("[criterion %2d] %s  %s\n", criterion, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct TimedRun {
  experiment::RunArtifacts artifacts;
  double seconds = 0.0;
};

TimedRun run_config(const std::string& text, int workers,
                    const std::string& out_dir) {
  auto cfg = experiment::parse_config(text);
  cfg.workers = workers;
  cfg.out_dir = out_dir;
  const auto t0 = std::chrono::steady_clock::now();
  TimedRun run{experiment::run_experiment(cfg), 0.0};
  run.seconds = seconds_since(t0);
  experiment::write_artifacts(run.artifacts, out_dir);
  return run;
}

const std::string kItoConfig =
    "[experiment]\n"
    "equation = diagonal\n"
    "levels = 16 64 256\n"
    "n_ref = 1024\n"
    "paths = 4096\n"
    "steps = 16\n"
    "horizon = 1.0\n"
    "seed = 20260808\n"
    "functional = gaussian_bell\n"
    "[diagonal]\n"
    "modes = 1024\n"
    "lambda = power_zero\n"
    "lambda_q = 1.0\n";

const std::string kWaveAdditiveConfig =
    "[experiment]\n"
    "equation = wave\n"
    "levels = 8 16 32 64\n"
    "n_ref = 256\n"
    "paths = 2048\n"
    "steps = 256\n"
    "horizon = 1.0\n"
    "seed = 20260809\n"
    "functional = gaussian_bell\n"
    "[wave]\n"
    "modes = 256\n"
    "theta = 1.0\n"
    "epsilon = 0.5\n"
    "eta = 0.0\n"
    "b0_const = 1.0\n"
    "b1 = 0.0\n"
    "xi = mode\n"
    "xi_mode = 1\n"
    "xi_position = 1.0\n";

// Norm inputs of the multiplicative wave configuration (theta = 1, eta = 0,
// rho = 1/8, b0 = 1, b1 = 1/2, xi = (e_1, 0)), assembled from the closed
// forms:
//   ||B(0)||_{HS(U;H)}^2     = sum_k mu_k^-1            = zeta(2)/pi^2
//   slope on H               = b1 sqrt(2 sum_k mu_k^-1)
//   ||B(0)||_{HS(U;V)}^2     = sum_k mu_k^{2 rho - 1}   = pi^-3/2 zeta(3/2)
//   slope on V               = b1 sqrt(2 sum_k mu_k^{2 rho - 1}) mu_1^-rho
//   ||xi||_V                 = mu_1^rho
struct WaveMultConstants {
  errlab::NormInputs inputs;
  double c = 0.0;
};

WaveMultConstants wave_mult_constants(double b1) {
  const double rho = 0.125;
  const double mu1 = kPi * kPi;
  const double sum_h = analytic::power_tail(2.0, 1) / (kPi * kPi);
  const double sum_v = std::pow(kPi, -1.5) * analytic::power_tail(1.5, 1);
  errlab::NormInputs in;
  in.semigroup = 1.0;
  in.diffusion_c1b = std::sqrt(sum_h) + b1 * std::sqrt(2.0 * sum_h);
  in.diffusion_c2b = in.diffusion_c1b;  // the second derivative vanishes
  in.diffusion_lip_v =
      std::sqrt(sum_v) + b1 * std::sqrt(2.0 * sum_v) * std::pow(mu1, -rho);
  in.initial_l2_v = std::pow(mu1, rho);
  in.initial_l2_h = 1.0;
  in.horizon = 1.0;
  return {in, errlab::evaluate_bound_constants(in).c};
}

std::string wave_mult_config() {
  const auto constants = wave_mult_constants(0.5);
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "[constants]\n"
                "semigroup = 1.0\n"
                "diffusion_c1b = %.17g\n"
                "diffusion_c2b = %.17g\n"
                "diffusion_lip_v = %.17g\n"
                "initial_l2_v = %.17g\n"
                "initial_l2_h = 1.0\n",
                constants.inputs.diffusion_c1b, constants.inputs.diffusion_c2b,
                constants.inputs.diffusion_lip_v, constants.inputs.initial_l2_v);
  return
      "[experiment]\n"
      "equation = wave\n"
      "levels = 8 16 32\n"
      "n_ref = 128\n"
      "paths = 2048\n"
      "steps = 128\n"
      "horizon = 1.0\n"
      "seed = 20260810\n"
      "functional = gaussian_bell\n"
      "[wave]\n"
      "modes = 128\n"
      "theta = 1.0\n"
      "epsilon = 0.5\n"
      "eta = 0.0\n"
      "b0_const = 1.0\n"
      "b1 = 0.5\n"
      "xi = mode\n"
      "xi_mode = 1\n"
      "xi_position = 1.0\n" +
      std::string(buf);
}

const TimedRun& ito_run() {
  static const TimedRun run = run_config(kItoConfig, 2, "acceptance_out/ito");
  return run;
}

const TimedRun& wave_additive_run() {
  static const TimedRun run =
      run_config(kWaveAdditiveConfig, 2, "acceptance_out/wave_additive");
  return run;
}

const TimedRun& wave_mult_run() {
  static const TimedRun run =
      run_config(wave_mult_config(), 2, "acceptance_out/wave_mult");
  return run;
}

// T / (theta pi^2) sum_{k >= n} k^-2, the additive wave mode tail.
double wave_tail(double n) {
  return analytic::power_tail(2.0, static_cast<long long>(n)) / (kPi * kPi);
}

}  // namespace

TEST_CASE("criterion 1: sharpness of the Gaussian weak error, no sampling") {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  const auto fam = analytic::LambdaFamily::power_law_from_zero(1.0);
  const double limit = 0.5 * std::sqrt(kPi / std::sinh(kPi));
  const long long levels[] = {64, 1024};
  const auto rows = errlab::sharpness_ratios(fam, levels);
  REQUIRE(rows[0].weak_ratio.has_value());
  REQUIRE(rows[1].weak_ratio.has_value());
  const double at64 = *rows[0].weak_ratio;
  const double at1024 = *rows[1].weak_ratio;
  c.expect(std::abs(limit - 0.2607820) < 1e-6);
  c.expect(std::abs(at1024 / limit - 1.0) < 0.01);
  c.expect(std::abs(at64 / limit - 1.0) < 0.05);
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 1.0);
  announce(1, c.ok,
           "weak ratio " + std::to_string(at1024) + " at n=1024 vs limit " +
               std::to_string(limit) + " (" + std::to_string(elapsed) + " s)");
  CHECK(c.ok);
}

TEST_CASE("criterion 2: Ito-isometry strong error on the diagonal model") {
  const auto& run = ito_run();
  Check c;
  const auto fam = analytic::LambdaFamily::power_law_from_zero(1.0);
  std::string detail;
  for (const auto& row : run.artifacts.report.rows) {
    const double tail = fam.tail_sq(row.level) - fam.tail_sq(1024);
    const double dev = std::abs(row.strong_sq - tail);
    c.expect(dev < 3.0 * row.strong_se);
    detail += "n=" + std::to_string(row.level) + " dev/se=" +
              std::to_string(dev / row.strong_se) + "  ";
  }
  c.expect(run.seconds < 60.0);
  announce(2, c.ok, detail + "(" + std::to_string(run.seconds) + " s)");
  CHECK(c.ok);
}

TEST_CASE("criterion 3: Monte Carlo cross-check of the Gaussian functional") {
  const auto& run = ito_run();
  Check c;
  const auto fam = analytic::LambdaFamily::power_law_from_zero(1.0);
  std::string detail;
  for (const auto& row : run.artifacts.report.rows) {
    if (row.level != 16 && row.level != 256) continue;
    const double oracle = errlab::gaussian_oracle(fam, row.level);
    const double dev = std::abs(row.phi_mean - oracle);
    c.expect(dev < 4.0 * row.phi_se);
    detail += "n=" + std::to_string(row.level) + " dev/se=" +
              std::to_string(dev / row.phi_se) + "  ";
  }
  announce(3, c.ok, detail);
  CHECK(c.ok);
}

TEST_CASE("criterion 4: additive wave rate against the analytic mode tail") {
  Check c;

  // (a) the analytic tails fall like 1/n over the tested window
  const int levels[] = {8, 16, 32, 64};
  std::vector<double> tails;
  for (int n : levels) tails.push_back(wave_tail(n));
  const auto fit = errlab::fit_rate(levels, tails);
  c.expect(fit.slope > -1.15 && fit.slope < -0.85);
  c.expect(std::abs(wave_tail(16) - 0.006530) < 5e-6);

  // (b) the simulated coupled error meets the finite reference tail
  const auto& run = wave_additive_run();
  std::string detail = "slope=" + std::to_string(fit.slope) + "  ";
  for (const auto& row : run.artifacts.report.rows) {
    const double tail = wave_tail(row.level) - wave_tail(256);
    const double dev = std::abs(row.strong_sq - tail);
    c.expect(dev < 3.0 * row.strong_se);
    detail += "n=" + std::to_string(row.level) + " dev/se=" +
              std::to_string(dev / row.strong_se) + "  ";
  }
  c.expect(run.seconds < 120.0);
  announce(4, c.ok, detail + "(" + std::to_string(run.seconds) + " s)");
  CHECK(c.ok);
}

TEST_CASE("criterion 5: multiplicative wave bound and rate") {
  const auto& run = wave_mult_run();
  Check c;
  const auto constants = wave_mult_constants(0.5);
  const double phi_norm = 2.0 + std::exp(-0.5);
  std::string detail = "C=" + std::to_string(constants.c) + "  ";
  for (const auto& row : run.artifacts.report.rows) {
    REQUIRE(row.tail_ratio.has_value());
    const double measured = row.strong_sq + std::abs(row.weak) / phi_norm;
    const double budget = constants.c * *row.tail_ratio +
                          3.0 * (row.strong_se + row.weak_se / phi_norm);
    c.expect(measured <= budget);
    detail += "n=" + std::to_string(row.level) + " used=" +
              std::to_string(measured / budget) + "  ";
  }
  REQUIRE(run.artifacts.report.strong_fit.has_value());
  const double slope = run.artifacts.report.strong_fit->slope;
  c.expect(slope <= -0.35);
  announce(5, c.ok,
           detail + "slope=" + std::to_string(slope) + " (" +
               std::to_string(run.seconds) + " s)");
  CHECK(c.ok);
}

TEST_CASE("criterion 6: forward-curve drift-tail identity") {
  Check c;
  equations::HjmmParams p;
  p.alpha = 0.1;
  p.tau_max = 4.0;
  p.grid_steps = 64;
  p.horizon = 1.0;
  const double dtau = p.tau_max / p.grid_steps;
  const double amps[] = {1.0, 0.6, 0.3};
  const double decays[] = {0.5, 1.0, 2.0};
  for (int k = 0; k < 3; ++k) {
    std::vector<double> row(65);
    for (int j = 0; j <= 64; ++j) row[static_cast<std::size_t>(j)] = amps[k] * std::exp(-decays[k] * dtau * j);
    p.rows.push_back(std::move(row));
  }
  p.initial.assign(65, 0.02);
  const auto spec = equations::make_hjmm(p);
  const auto bounds = equations::hjmm_norm_bounds(spec);
  const int steps = 16;
  const double h = 1.0 / steps;
  noise::NoisePlan plan{8, steps, 1.0, 606, 0};
  const auto block = noise::generate_increments(plan);

  std::string detail;
  for (const int n : {2, 4, 8}) {
    integrate::Engine engine(spec, steps);
    const auto truncated = engine.terminal(block, n, n);
    const auto full_drift = engine.terminal(block, n, 3);
    std::vector<double> delta(65);
    for (int j = 0; j <= 64; ++j)
      delta[static_cast<std::size_t>(j)] = full_drift[static_cast<std::size_t>(j)] -
                                           truncated[static_cast<std::size_t>(j)];

    // direct accumulation of the shifted drift difference
    const auto mu_full = equations::hjmm_trace_drift(p.rows, dtau, 3);
    const auto mu_n = equations::hjmm_trace_drift(p.rows, dtau, n);
    std::vector<double> direct(65, 0.0);
    for (int m = 0; m < steps; ++m) {
      for (int j = 0; j <= 64; ++j)
        direct[static_cast<std::size_t>(j)] +=
            h * (mu_full[static_cast<std::size_t>(j)] - mu_n[static_cast<std::size_t>(j)]);
      spec.propagator->apply(direct, h);
    }
    std::vector<double> gap(65);
    for (int j = 0; j <= 64; ++j)
      gap[static_cast<std::size_t>(j)] = delta[static_cast<std::size_t>(j)] -
                                         direct[static_cast<std::size_t>(j)];
    const double mismatch = spec.h_norm.norm(gap);
    c.expect(mismatch <= 1e-10);

    const double tail = spec.additive_tail(n);
    const double bound = 2.0 * 1.0 * bounds.shift_norm * bounds.m_norm * tail;
    const double delta_norm = spec.h_norm.norm(delta);
    c.expect(delta_norm <= bound);
    detail += "n=" + std::to_string(n) + " |D|=" + std::to_string(delta_norm) +
              "<=" + std::to_string(bound) + "  ";
  }
  announce(6, c.ok, detail);
  CHECK(c.ok);
}

TEST_CASE("criterion 7: conservation of the deterministic flows") {
  Check c;

  // wave energy over a thousand steps
  {
    equations::WaveParams p;
    p.modes = 32;
    p.b0_const = 0.0;
    p.horizon = 1.0;
    p.initial = testing::random_vector(64, 2026, 0.5);
    const auto spec = equations::make_wave(p);
    noise::NoisePlan plan{1, 1000, 1.0, 0, 0};
    const auto states = integrate::simulate_path(spec, plan, 1, {1000, true, 0, {}});
    const double e0 = spec.h_norm.norm_sq(spec.initial);
    double worst = 0.0;
    for (const auto& s : states)
      worst = std::max(worst, std::abs(spec.h_norm.norm_sq(s) - e0) / e0);
    c.expect(worst < 1e-10);
  }

  // torus flows preserve the L2 norm
  for (const bool cubic : {false, true}) {
    equations::TorusParams p;
    p.modes = 33;
    p.half_length = 16.0;
    p.b0_const = 0.0;
    p.horizon = 1.0;
    p.initial = testing::random_vector(66, 2027, 0.3);
    const auto spec = cubic ? equations::make_airy(p) : equations::make_schrodinger(p);
    noise::NoisePlan plan{1, 1000, 1.0, 0, 0};
    const auto states = integrate::simulate_path(spec, plan, 1, {1000, true, 0, {}});
    const double e0 = spec.h_norm.norm_sq(spec.initial);
    double worst = 0.0;
    for (const auto& s : states)
      worst = std::max(worst, std::abs(spec.h_norm.norm_sq(s) - e0) / e0);
    c.expect(worst < 1e-10);
  }

  announce(7, c.ok, "wave energy and torus L2 norms drift below 1e-10");
  CHECK(c.ok);
}

TEST_CASE("criterion 8: multiplication operator sum, two routes") {
  Check c;
  const auto op = spectral::dirichlet_laplacian(64, 1.0);
  std::vector<spectral::SpectralField> fields;
  {
    spectral::SpectralField one{op.basis, std::vector<double>(64, 0.0)};
    for (int i = 0; i < 64; i += 2)
      one.coeffs[static_cast<std::size_t>(i)] = 2.0 * std::sqrt(2.0) / ((i + 1) * kPi);
    fields.push_back(std::move(one));
  }
  fields.push_back(spectral::unit_mode(op.basis, 0));
  {
    spectral::SpectralField random16{op.basis, std::vector<double>(64, 0.0)};
    const auto values = testing::random_vector(16, 808, 0.5);
    for (int i = 0; i < 16; ++i) random16.coeffs[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i)];
    fields.push_back(std::move(random16));
  }
  std::string detail;
  for (const auto& x : fields) {
    const double single = coeff::multiplication_hs_norm(x, op, 0.0, -0.5, 64);
    const double brute = testing::brute_force_multiplication_sum(x, op, 0.0, -0.5, 64);
    const double diff = std::abs(single - brute);
    c.expect(diff < 1e-8);
    detail += "diff=" + std::to_string(diff) + "  ";
  }
  announce(8, c.ok, detail);
  CHECK(c.ok);
}

TEST_CASE("criterion 9: Yosida approximant suite") {
  Check c;
  // diagonal generator with rates up to 10^2; sup over the 11-point grid
  // t = 0, 0.1, ..., 1
  spectral::DiagonalOperator op{spectral::dirichlet_basis(4),
                                {1.0, kPi * kPi, 50.0, 100.0}};
  const std::vector<double> x = {1.0, -0.5, 0.25, 1.0};
  double xnorm = 0.0;
  for (double v : x) xnorm += v * v;
  xnorm = std::sqrt(xnorm);

  double prev = 1e300, last = 0.0;
  for (const double lambda : {1e2, 1e3, 1e4}) {
    double sup = 0.0;
    for (int ti = 0; ti <= 10; ++ti) {
      const double t = 0.1 * ti;
      const auto s = spectral::yosida_propagator(op, lambda, t);
      double err = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double exact = std::exp(-op.eigenvalues[i] * t);
        const double d = (s.eigenvalues[i] - exact) * x[i];
        err += d * d;
      }
      sup = std::max(sup, std::sqrt(err));
    }
    c.expect(sup <= prev + 1e-15);
    prev = sup;
    last = sup;
  }
  c.expect(last < 1e-3 * xnorm);

  // every approximant entry stays inside the unit disc
  for (const double lambda : {1e1, 1e2, 1e4})
    for (const double t : {0.05, 0.5, 1.0})
      for (double e : spectral::yosida_propagator(op, lambda, t).eigenvalues)
        c.expect(std::abs(e) <= 1.0);

  announce(9, c.ok,
           "final approximation error " + std::to_string(last / xnorm) +
               " of the state norm at lambda = 1e4");
  CHECK(c.ok);
}

TEST_CASE("criterion 10: byte-identical artifacts at any worker count") {
  Check c;
  struct Case {
    const char* name;
    const std::string text;
    const TimedRun* reference;
  };
  const Case cases[] = {
      {"ito", kItoConfig, &ito_run()},
      {"wave_additive", kWaveAdditiveConfig, &wave_additive_run()},
      {"wave_mult", wave_mult_config(), &wave_mult_run()},
  };
  std::string detail;
  for (const auto& item : cases) {
    const auto replay = run_config(item.text, 1,
                                   std::string("acceptance_out/") + item.name + "_w1");
    const bool same_csv = replay.artifacts.csv == item.reference->artifacts.csv;
    const bool same_json =
        replay.artifacts.summary_json == item.reference->artifacts.summary_json;
    c.expect(same_csv);
    c.expect(same_json);
    const auto disk_a = testing::read_file(std::string("acceptance_out/") +
                                           item.name + "/report.csv");
    const auto disk_b = testing::read_file(std::string("acceptance_out/") +
                                           item.name + "_w1/report.csv");
    c.expect(!disk_a.empty());
    c.expect(disk_a == disk_b);
    detail += std::string(item.name) + (same_csv && same_json ? " ok  " : " MISMATCH  ");
  }
  announce(10, c.ok, detail);
  CHECK(c.ok);
}
