#include "spdelab/integrator.hpp"

#include <cmath>
#include <stdexcept>

namespace spde::integrate {

using equations::EquationSpec;
using equations::Layout;

Engine::Engine(const EquationSpec& spec, double step_size,
               int collocation_grid)
    : spec_(&spec), h_(step_size) {
  if (step_size <= 0.0)
    throw std::invalid_argument("Engine: step size must be positive");
  if (spec.layout == Layout::MaturityCurve &&
      std::abs(step_size / spec.hjmm_dtau - 1.0) > 1e-9)
    throw std::invalid_argument(
        "Engine: the time step must equal the maturity spacing");
  kernel_ = spec.propagator->prepare(step_size);
  const bool complex_field = spec.layout == Layout::ComplexModes;
  const auto& drift = spec.drift;
  needs_drift_table_ =
      drift.kind == coeff::DriftCoefficient::Kind::Nemytskii ||
      (drift.kind == coeff::DriftCoefficient::Kind::Affine && !drift.f1_field.empty());
  if (needs_drift_table_) {
    int grid = spec.collocation_grid > 0 ? spec.collocation_grid
                                         : 4 * spec.scalar_basis.modes;
    if (collocation_grid > 0) grid = collocation_grid;
    if (complex_field) {
      drift_table_c_ = spectral::TorusTable::build(spec.scalar_basis, grid);
      if (!drift.f1_field.empty()) {
        f1_grid_.resize(static_cast<std::size_t>(2 * grid));
        drift_table_c_.synthesize(drift.f1_field, f1_grid_);
      }
    } else {
      drift_table_ = spectral::SineTable::build(grid, spec.scalar_basis.modes);
      if (!drift.f1_field.empty()) {
        f1_grid_.resize(static_cast<std::size_t>(grid));
        drift_table_.synthesize(drift.f1_field, f1_grid_);
      }
    }
  }
}

Engine::Engine(const EquationSpec& spec, int steps)
    : Engine(spec, spec.horizon / steps) {
  if (steps < 1) throw std::invalid_argument("Engine: at least one step");
}

const std::vector<double>& Engine::hjmm_drift(int level) {
  for (auto& entry : hjmm_drift_cache_)
    if (entry.first == level) return entry.second;
  hjmm_drift_cache_.emplace_back(
      level, equations::hjmm_trace_drift(spec_->hjmm_rows, spec_->hjmm_dtau, level));
  return hjmm_drift_cache_.back().second;
}

void Engine::add_drift(std::vector<double>& state) {
  const auto& drift = spec_->drift;
  if (drift.kind == coeff::DriftCoefficient::Kind::Zero) return;
  const auto src = spec_->drift_source;
  const auto dst = spec_->drift_target;
  buf_.assign(static_cast<std::size_t>(dst.size), 0.0);
  std::span<const double> x{state.data() + src.offset,
                            static_cast<std::size_t>(src.size)};
  if (spec_->layout == Layout::ComplexModes) {
    if (needs_drift_table_)
      coeff::evaluate_drift_into_complex(drift, drift_table_c_, x, buf_, ws_,
                                         f1_grid_);
    else
      coeff::evaluate_drift_into_complex(drift, drift_table_c_, x, buf_, ws_);
  } else {
    if (needs_drift_table_)
      coeff::evaluate_drift_into(drift, drift_table_, x, buf_, ws_, f1_grid_);
    else
      coeff::evaluate_drift_into(drift, drift_table_, x, buf_, ws_);
  }
  if (spec_->rotate_minus_i) {
    for (std::size_t i = 0; i + 1 < buf_.size(); i += 2) {
      const double a = buf_[i], b = buf_[i + 1];
      buf_[i] = b;
      buf_[i + 1] = -a;
    }
  }
  double* out = state.data() + dst.offset;
  for (int i = 0; i < dst.size; ++i) out[i] += h_ * buf_[static_cast<std::size_t>(i)];
}

void Engine::add_noise(std::vector<double>& state, std::span<const double> dw,
                       int n) {
  if (!spec_->rotate_minus_i) {
    spec_->diffusion->apply_into(state, dw, n, state, ws_);
    return;
  }
  buf_.assign(state.size(), 0.0);
  spec_->diffusion->apply_into(state, dw, n, buf_, ws_);
  for (std::size_t i = 0; i + 1 < buf_.size(); i += 2) {
    state[i] += buf_[i + 1];
    state[i + 1] += -buf_[i];
  }
}

void Engine::step_once(std::vector<double>& state, std::span<const double> dw,
                       int n, std::optional<int> hjmm_drift_level) {
  if (spec_->layout == Layout::MaturityCurve && !spec_->hjmm_rows.empty()) {
    const int level = hjmm_drift_level.value_or(n);
    const auto& mu = hjmm_drift(level);
    for (std::size_t i = 0; i < state.size(); ++i) state[i] += h_ * mu[i];
  } else {
    add_drift(state);
  }
  add_noise(state, dw, n);
  kernel_(state);
}

std::vector<double> Engine::terminal(const noise::IncrementBlock& block, int n,
                                     std::optional<int> hjmm_drift_level) {
  std::vector<double> state = spec_->initial;
  for (int m = 0; m < block.steps; ++m)
    step_once(state, block.row(m), n, hjmm_drift_level);
  return state;
}

std::vector<std::vector<double>> Engine::path(const noise::IncrementBlock& block,
                                              int n,
                                              std::optional<int> hjmm_drift_level) {
  std::vector<std::vector<double>> states;
  states.reserve(static_cast<std::size_t>(block.steps) + 1);
  std::vector<double> state = spec_->initial;
  states.push_back(state);
  for (int m = 0; m < block.steps; ++m) {
    step_once(state, block.row(m), n, hjmm_drift_level);
    states.push_back(state);
  }
  return states;
}

std::vector<double> step(const EquationSpec& spec, std::vector<double> state,
                         std::span<const double> dw, int n, double h) {
  Engine engine(spec, h);
  engine.step_once(state, dw, n);
  return state;
}

namespace {

void check_plan(const EquationSpec& spec, const noise::NoisePlan& plan,
                const StepperConfig& cfg, int n) {
  if (std::abs(plan.horizon - spec.horizon) >
      1e-12 * std::max(1.0, std::abs(spec.horizon)))
    throw std::invalid_argument("simulate: plan horizon differs from the equation horizon");
  if (cfg.steps != plan.steps)
    throw std::invalid_argument("simulate: step count must match the noise plan");
  if (n < 1 || n > plan.mode_count_ref)
    throw std::invalid_argument("simulate: truncation level outside the plan");
}

}  // namespace

std::vector<double> simulate_terminal(const EquationSpec& spec,
                                      const noise::NoisePlan& plan, int n,
                                      const StepperConfig& cfg) {
  check_plan(spec, plan, cfg, n);
  const auto block = noise::generate_increments(plan);
  Engine engine(spec, spec.horizon / cfg.steps, cfg.collocation_grid);
  return engine.terminal(block, n, cfg.hjmm_drift_level);
}

std::vector<std::vector<double>> simulate_path(const EquationSpec& spec,
                                               const noise::NoisePlan& plan, int n,
                                               const StepperConfig& cfg) {
  check_plan(spec, plan, cfg, n);
  const auto block = noise::generate_increments(plan);
  Engine engine(spec, spec.horizon / cfg.steps, cfg.collocation_grid);
  return engine.path(block, n, cfg.hjmm_drift_level);
}

}  // namespace spde::integrate
