// spdelab: command-line front end of the noise-truncation error lab.
// Subcommands: simulate, rates, oracle, bounds, demo.
// Exit codes: 0 success, 2 config error, 3 budget refusal.
//
// The tool drives the shared library exclusively through its C interface.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spde_lab.h"

namespace {

struct ConfigDeleter {
  void operator()(spde_lab_config* c) const { spde_lab_config_free(c); }
};
struct ReportDeleter {
  void operator()(spde_lab_report* r) const { spde_lab_report_free(r); }
};
using ConfigHandle = std::unique_ptr<spde_lab_config, ConfigDeleter>;
using ReportHandle = std::unique_ptr<spde_lab_report, ReportDeleter>;

int fail(int rc) {
  std::fprintf(stderr, "error: %s\n", spde_lab_last_error());
  return rc;
}

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = -1;
  std::string out_dir;
  bool allow_shallow = false;
};

int apply_overrides(spde_lab_config* cfg, const CommonOptions& opt) {
  if (opt.seed_given)
    if (int rc = spde_lab_config_set_seed(cfg, opt.seed)) return rc;
  if (opt.workers >= 0)
    if (int rc = spde_lab_config_set_workers(cfg, opt.workers)) return rc;
  if (!opt.out_dir.empty())
    if (int rc = spde_lab_config_set_out_dir(cfg, opt.out_dir.c_str())) return rc;
  if (opt.allow_shallow)
    if (int rc = spde_lab_config_allow_shallow_reference(cfg, 1)) return rc;
  return SPDE_LAB_OK;
}

void print_report(const spde_lab_report* rep) {
  std::printf("%6s %16s %12s %16s %12s %16s\n", "n", "strong_sq", "strong_se",
              "weak", "weak_se", "bound");
  const int rows = spde_lab_report_row_count(rep);
  for (int i = 0; i < rows; ++i) {
    std::int64_t n = 0;
    double ssq = 0, sse = 0, w = 0, wse = 0, bound = 0;
    int have_bound = 0;
    spde_lab_report_row(rep, i, &n, &ssq, &sse, &w, &wse, &bound, &have_bound);
    if (have_bound)
      std::printf("%6" PRId64 " %16.8e %12.4e %16.8e %12.4e %16.8e\n", n, ssq,
                  sse, w, wse, bound);
    else
      std::printf("%6" PRId64 " %16.8e %12.4e %16.8e %12.4e %16s\n", n, ssq,
                  sse, w, wse, "unavailable");
  }
}

int run_and_write(spde_lab_config* cfg, const CommonOptions& opt,
                  bool print_rates) {
  if (int rc = apply_overrides(cfg, opt)) return fail(rc);
  spde_lab_report* raw = nullptr;
  if (int rc = spde_lab_run(cfg, &raw)) return fail(rc);
  ReportHandle rep(raw);
  if (int rc = spde_lab_report_write(rep.get(), nullptr)) return fail(rc);
  print_report(rep.get());
  double slope = 0, intercept = 0, residual = 0;
  if (spde_lab_report_fit(rep.get(), &slope, &intercept, &residual) ==
      SPDE_LAB_OK) {
    if (print_rates)
      std::printf("strong-error rate: slope %.4f  intercept %.4f  residual %.4f\n",
                  slope, intercept, residual);
    else
      std::printf("fitted strong-error slope: %.4f\n", slope);
  } else if (print_rates) {
    std::printf("strong-error rate: unavailable\n");
  }
  std::printf("artifacts written to %s (seed %" PRIu64 ")\n",
              spde_lab_config_out_dir(cfg), spde_lab_config_seed(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral noise-truncation error lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(spde_lab_version()));

  CommonOptions opt;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    if (config_required)
      cmd->add_option("--config", opt.config_path, "experiment config file")
          ->required();
    cmd->add_option("--seed", opt.seed, "seed override (highest precedence)")
        ->each([&](const std::string&) { opt.seed_given = true; });
    cmd->add_option("--workers", opt.workers, "worker thread count (0 = hardware)");
    cmd->add_option("--out", opt.out_dir, "output directory override");
    cmd->add_flag("--allow-shallow-ref", opt.allow_shallow,
                  "accept levels above n_ref/4 despite the reference bias");
  };

  auto* simulate =
      app.add_subcommand("simulate", "run an experiment and persist artifacts");
  add_common(simulate, true);
  auto* rates = app.add_subcommand(
      "rates", "run an experiment and report fitted convergence rates");
  add_common(rates, true);

  auto* oracle = app.add_subcommand(
      "oracle",
      "deterministic Gaussian functional table for lambda_k = scale (k+1)^-q");
  double oracle_q = 1.0, oracle_scale = 1.0;
  std::vector<std::int64_t> oracle_levels;
  oracle->add_option("--q", oracle_q, "power-law exponent (> 1/2)");
  oracle->add_option("--scale", oracle_scale, "amplitude scale");
  oracle->add_option("--levels", oracle_levels, "truncation levels")
      ->delimiter(',');

  auto* bounds = app.add_subcommand(
      "bounds", "error-bound constants and per-level tail bounds for a config");
  add_common(bounds, true);
  std::vector<std::int64_t> bounds_levels;
  bounds->add_option("--levels", bounds_levels, "levels for the tail-bound table")
      ->delimiter(',');

  auto* demo = app.add_subcommand("demo", "run the bundled additive wave demo");
  add_common(demo, false);

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed() || rates->parsed()) {
    spde_lab_config* raw = nullptr;
    if (int rc = spde_lab_config_load(opt.config_path.c_str(), &raw))
      return fail(rc);
    ConfigHandle cfg(raw);
    return run_and_write(cfg.get(), opt, rates->parsed());
  }

  if (oracle->parsed()) {
    std::printf("%8s %16s %16s %14s\n", "n", "E_phi", "tail", "weak_ratio");
    double phi_inf = 0.0;
    if (spde_lab_gaussian_functional(oracle_q, oracle_scale, -1, &phi_inf))
      return fail(2);
    for (std::int64_t n : oracle_levels) {
      double phi = 0, tail = 0, ratio = 0;
      if (spde_lab_gaussian_functional(oracle_q, oracle_scale, n, &phi))
        return fail(2);
      if (spde_lab_noise_tail(oracle_q, oracle_scale, n, &tail)) return fail(2);
      if (spde_lab_weak_ratio(oracle_q, oracle_scale, n, &ratio)) return fail(2);
      std::printf("%8" PRId64 " %16.9e %16.9e %14.7f\n", n, phi, tail, ratio);
    }
    std::printf("limit E_phi(infinity)/2 = %.7f\n", 0.5 * phi_inf);
    return 0;
  }

  if (bounds->parsed()) {
    spde_lab_config* raw = nullptr;
    if (int rc = spde_lab_config_load(opt.config_path.c_str(), &raw))
      return fail(rc);
    ConfigHandle cfg(raw);
    if (int rc = apply_overrides(cfg.get(), opt)) return fail(rc);
    spde_lab_constants c{};
    int have = 0;
    if (int rc = spde_lab_config_constants(cfg.get(), &c, &have)) return fail(rc);
    if (have) {
      std::printf("c1 = %.8e\nc2 = %.8e\nc3 = %.8e\nc4 = %.8e\n", c.c1, c.c2,
                  c.c3, c.c4);
      std::printf("c  = %.8e\napriori = %.8e\n", c.c, c.apriori);
    } else {
      std::printf("no [constants] section in the config\n");
    }
    std::printf("%8s %18s\n", "n", "tail_bound");
    for (std::int64_t n : bounds_levels) {
      double bound = 0;
      int available = 0;
      if (int rc = spde_lab_tail_bound(cfg.get(), n, &bound, &available))
        return fail(rc);
      if (available)
        std::printf("%8" PRId64 " %18.10e\n", n, bound);
      else
        std::printf("%8" PRId64 " %18s\n", n, "unavailable");
    }
    return 0;
  }

  if (demo->parsed()) {
    spde_lab_config* raw = nullptr;
    if (int rc = spde_lab_config_parse(spde_lab_demo_config(), &raw))
      return fail(rc);
    ConfigHandle cfg(raw);
    return run_and_write(cfg.get(), opt, false);
  }

  return 0;
}
