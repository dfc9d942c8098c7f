#pragma once
//==============================================================================
// integrator.hpp
// Exponential-Euler mild-solution stepping:
//
//     x_{m+1} = S_h ( x_m + h F(x_m) + B(x_m) P_n dW_m ),
//
// with the exact group propagator S_h.  For the equations whose mild form
// carries a -i prefactor on the drift and noise integrals, both contributions
// are quarter-turned before accumulation.  The scheme reduces to the exact
// mild solution when F and B vanish.
//
// The Engine owns per-simulation scratch space and the precomputed step
// kernel; one Engine per thread, specs shared read-only.
//==============================================================================

#include <optional>
#include <span>
#include <vector>

#include "spdelab/equations.hpp"
#include "spdelab/noise.hpp"

namespace spde::integrate {

struct StepperConfig {
  int steps = 256;
  bool record_path = false;
  // Overrides the drift-evaluation grid; the diffusion grid is fixed when the
  // coefficient is constructed.  0 keeps the equation's choice.
  int collocation_grid = 0;
  std::optional<int> hjmm_drift_level;    // default: the noise truncation level
};

class Engine {
 public:
  Engine(const equations::EquationSpec& spec, double step_size,
         int collocation_grid = 0);
  Engine(const equations::EquationSpec& spec, int steps);

  double step_size() const { return h_; }

  // One mild-solution step in place, using the first n columns of dw.
  void step_once(std::vector<double>& state, std::span<const double> dw, int n,
                 std::optional<int> hjmm_drift_level = {});

  // Terminal state from the spec's initial condition under the block's rows.
  std::vector<double> terminal(const noise::IncrementBlock& block, int n,
                               std::optional<int> hjmm_drift_level = {});

  // All states x_0 .. x_M.
  std::vector<std::vector<double>> path(const noise::IncrementBlock& block, int n,
                                        std::optional<int> hjmm_drift_level = {});

 private:
  const equations::EquationSpec* spec_;
  double h_ = 0.0;
  std::function<void(std::span<double>)> kernel_;
  coeff::Workspace ws_;
  std::vector<double> buf_;        // component-sized drift/noise accumulator
  std::vector<double> f1_grid_;    // presynthesized drift field multiplier
  spectral::SineTable drift_table_;
  spectral::TorusTable drift_table_c_;
  bool needs_drift_table_ = false;
  // HJMM trace drift per level, built on demand
  std::vector<std::pair<int, std::vector<double>>> hjmm_drift_cache_;

  const std::vector<double>& hjmm_drift(int level);
  void add_drift(std::vector<double>& state);
  void add_noise(std::vector<double>& state, std::span<const double> dw, int n);
};

// Single mild-solution step (spec-level convenience; allocates scratch).
std::vector<double> step(const equations::EquationSpec& spec,
                         std::vector<double> state, std::span<const double> dw,
                         int n, double h);

// Full simulation from a noise plan; the plan's step count fixes the grid and
// must match cfg.steps, and the plan horizon must equal the spec's.
std::vector<double> simulate_terminal(const equations::EquationSpec& spec,
                                      const noise::NoisePlan& plan, int n,
                                      const StepperConfig& cfg);

std::vector<std::vector<double>> simulate_path(const equations::EquationSpec& spec,
                                               const noise::NoisePlan& plan, int n,
                                               const StepperConfig& cfg);

}  // namespace spde::integrate
