#include "spde_lab.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "spdelab/equations.hpp"
#include "spdelab/error_lab.hpp"
#include "spdelab/experiment.hpp"

extern "C" {

struct spde_lab_config {
  spde::experiment::ExperimentConfig cfg;
  mutable std::shared_ptr<const spde::equations::EquationSpec> spec;  // lazy
};

struct spde_lab_report {
  spde::experiment::RunArtifacts artifacts;
  std::string out_dir;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return SPDE_LAB_OK;
  } catch (const spde::experiment::BudgetError& e) {
    set_error(e.what());
    return SPDE_LAB_ERR_BUDGET;
  } catch (const spde::experiment::ConfigError& e) {
    set_error(e.what());
    return SPDE_LAB_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SPDE_LAB_ERR_INVALID;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return SPDE_LAB_ERR_INVALID;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SPDE_LAB_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return SPDE_LAB_ERR_INTERNAL;
  }
}

int require_handle(const void* p, const char* what) {
  if (p) return SPDE_LAB_OK;
  set_error(std::string("null ") + what);
  return SPDE_LAB_ERR_INVALID;
}

spde::analytic::LambdaFamily power_family(double q, double scale) {
  auto fam = spde::analytic::LambdaFamily::power_law_from_zero(q, scale);
  if (!fam.square_summable())
    throw std::domain_error("amplitude exponent must exceed 1/2");
  return fam;
}

void apply_env_seed(spde::experiment::ExperimentConfig& cfg) {
  if (cfg.seed_set) return;
  if (const char* env = std::getenv("SPDE_LAB_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') cfg.seed = v;
  }
}

const spde::equations::EquationSpec& config_spec(const spde_lab_config* cfg) {
  if (!cfg->spec)
    cfg->spec = std::make_shared<const spde::equations::EquationSpec>(
        spde::experiment::build_equation(cfg->cfg));
  return *cfg->spec;
}

}  // namespace

extern "C" {

const char* spde_lab_version(void) { return spde::experiment::version(); }

const char* spde_lab_last_error(void) { return g_last_error.c_str(); }

const char* spde_lab_demo_config(void) {
  return spde::experiment::demo_config_text();
}

int spde_lab_config_parse(const char* text, spde_lab_config** out) {
  if (int rc = require_handle(text, "config text")) return rc;
  if (int rc = require_handle(out, "output handle")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<spde_lab_config>();
    handle->cfg = spde::experiment::parse_config(text);
    apply_env_seed(handle->cfg);
    *out = handle.release();
  });
}

int spde_lab_config_load(const char* path, spde_lab_config** out) {
  if (int rc = require_handle(path, "config path")) return rc;
  if (int rc = require_handle(out, "output handle")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<spde_lab_config>();
    handle->cfg = spde::experiment::load_config(path);
    apply_env_seed(handle->cfg);
    *out = handle.release();
  });
}

void spde_lab_config_free(spde_lab_config* cfg) { delete cfg; }

int spde_lab_config_set_seed(spde_lab_config* cfg, uint64_t seed) {
  if (int rc = require_handle(cfg, "config")) return rc;
  cfg->cfg.seed = seed;
  cfg->cfg.seed_set = true;
  return SPDE_LAB_OK;
}

int spde_lab_config_set_workers(spde_lab_config* cfg, int workers) {
  if (int rc = require_handle(cfg, "config")) return rc;
  if (workers < 0) {
    set_error("workers must be nonnegative");
    return SPDE_LAB_ERR_INVALID;
  }
  cfg->cfg.workers = workers;
  return SPDE_LAB_OK;
}

int spde_lab_config_set_out_dir(spde_lab_config* cfg, const char* dir) {
  if (int rc = require_handle(cfg, "config")) return rc;
  if (int rc = require_handle(dir, "directory")) return rc;
  cfg->cfg.out_dir = dir;
  return SPDE_LAB_OK;
}

int spde_lab_config_allow_shallow_reference(spde_lab_config* cfg, int allow) {
  if (int rc = require_handle(cfg, "config")) return rc;
  cfg->cfg.allow_shallow_reference = allow != 0;
  return SPDE_LAB_OK;
}

uint64_t spde_lab_config_seed(const spde_lab_config* cfg) {
  return cfg ? cfg->cfg.seed : 0;
}

const char* spde_lab_config_out_dir(const spde_lab_config* cfg) {
  return cfg ? cfg->cfg.out_dir.c_str() : "";
}

int spde_lab_run(const spde_lab_config* cfg, spde_lab_report** out) {
  if (int rc = require_handle(cfg, "config")) return rc;
  if (int rc = require_handle(out, "output handle")) return rc;
  return guarded([&] {
    auto rep = std::make_unique<spde_lab_report>();
    rep->artifacts = spde::experiment::run_experiment(cfg->cfg);
    rep->out_dir = cfg->cfg.out_dir;
    *out = rep.release();
  });
}

void spde_lab_report_free(spde_lab_report* rep) { delete rep; }

int spde_lab_report_write(const spde_lab_report* rep, const char* out_dir) {
  if (int rc = require_handle(rep, "report")) return rc;
  return guarded([&] {
    spde::experiment::write_artifacts(rep->artifacts,
                                      out_dir ? out_dir : rep->out_dir.c_str());
  });
}

int spde_lab_report_row_count(const spde_lab_report* rep) {
  return rep ? static_cast<int>(rep->artifacts.report.rows.size()) : 0;
}

int spde_lab_report_row(const spde_lab_report* rep, int index, int64_t* level,
                        double* strong_sq, double* strong_se, double* weak,
                        double* weak_se, double* bound, int* bound_available) {
  if (int rc = require_handle(rep, "report")) return rc;
  const auto& rows = rep->artifacts.report.rows;
  if (index < 0 || index >= static_cast<int>(rows.size())) {
    set_error("row index out of range");
    return SPDE_LAB_ERR_INVALID;
  }
  const auto& r = rows[static_cast<std::size_t>(index)];
  if (level) *level = r.level;
  if (strong_sq) *strong_sq = r.strong_sq;
  if (strong_se) *strong_se = r.strong_se;
  if (weak) *weak = r.weak;
  if (weak_se) *weak_se = r.weak_se;
  if (bound) *bound = r.bound.value_or(0.0);
  if (bound_available) *bound_available = r.bound.has_value() ? 1 : 0;
  return SPDE_LAB_OK;
}

int spde_lab_report_fit(const spde_lab_report* rep, double* slope,
                        double* intercept, double* residual) {
  if (int rc = require_handle(rep, "report")) return rc;
  const auto& fit = rep->artifacts.report.strong_fit;
  if (!fit) {
    set_error("no rate fit available (fewer than three positive errors)");
    return SPDE_LAB_ERR_INVALID;
  }
  if (slope) *slope = fit->slope;
  if (intercept) *intercept = fit->intercept;
  if (residual) *residual = fit->residual;
  return SPDE_LAB_OK;
}

int spde_lab_gaussian_functional(double q, double scale, int64_t level,
                                 double* out) {
  if (int rc = require_handle(out, "output")) return rc;
  return guarded([&] {
    const auto fam = power_family(q, scale);
    *out = spde::errlab::gaussian_oracle(
        fam, level < 0 ? std::nullopt : std::optional<long long>(level));
  });
}

int spde_lab_noise_tail(double q, double scale, int64_t level, double* out) {
  if (int rc = require_handle(out, "output")) return rc;
  return guarded([&] {
    const auto fam = power_family(q, scale);
    *out = fam.tail_sq(level < 0 ? 0 : level);
  });
}

int spde_lab_weak_ratio(double q, double scale, int64_t level, double* out) {
  if (int rc = require_handle(out, "output")) return rc;
  if (level < 0) {
    set_error("weak ratio needs a finite level");
    return SPDE_LAB_ERR_INVALID;
  }
  return guarded([&] {
    const auto fam = power_family(q, scale);
    const long long lvl[] = {level};
    const auto rows = spde::errlab::sharpness_ratios(fam, lvl);
    if (!rows[0].weak_ratio)
      throw std::domain_error("empty noise tail at this level");
    *out = *rows[0].weak_ratio;
  });
}

int spde_lab_bound_constants(const spde_lab_norm_inputs* in,
                             spde_lab_constants* out) {
  if (int rc = require_handle(in, "inputs")) return rc;
  if (int rc = require_handle(out, "output")) return rc;
  return guarded([&] {
    spde::errlab::NormInputs n;
    n.semigroup = in->semigroup;
    n.semigroup_v = in->semigroup_v;
    n.drift_c1b = in->drift_c1b;
    n.drift_c2b = in->drift_c2b;
    n.diffusion_c1b = in->diffusion_c1b;
    n.diffusion_c2b = in->diffusion_c2b;
    n.drift_lip_v = in->drift_lip_v;
    n.diffusion_lip_v = in->diffusion_lip_v;
    n.initial_l2_v = in->initial_l2_v;
    n.initial_l2_h = in->initial_l2_h;
    n.horizon = in->horizon;
    const auto c = spde::errlab::evaluate_bound_constants(n);
    *out = {c.c1, c.c2, c.c3, c.c4, c.c, c.apriori};
  });
}

int spde_lab_tail_bound(const spde_lab_config* cfg, int64_t level, double* out,
                        int* available) {
  if (int rc = require_handle(cfg, "config")) return rc;
  if (int rc = require_handle(out, "output")) return rc;
  if (int rc = require_handle(available, "availability flag")) return rc;
  return guarded([&] {
    const auto& spec = config_spec(cfg);
    std::optional<double> bound;
    if (spec.tail_bound && level >= 1) bound = spec.tail_bound(level);
    *available = bound.has_value() ? 1 : 0;
    *out = bound.value_or(0.0);
  });
}

int spde_lab_config_constants(const spde_lab_config* cfg,
                              spde_lab_constants* out, int* available) {
  if (int rc = require_handle(cfg, "config")) return rc;
  if (int rc = require_handle(out, "output")) return rc;
  if (int rc = require_handle(available, "availability flag")) return rc;
  return guarded([&] {
    if (!cfg->cfg.constants) {
      *available = 0;
      *out = {};
      return;
    }
    const auto c = spde::errlab::evaluate_bound_constants(*cfg->cfg.constants);
    *out = {c.c1, c.c2, c.c3, c.c4, c.c, c.apriori};
    *available = 1;
  });
}

}  // extern "C"
