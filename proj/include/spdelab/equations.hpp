#pragma once
//==============================================================================
// equations.hpp
// Concrete equation setups for the lab:
//
//   wave        position/velocity pair over the Dirichlet sine basis; the
//               mode-k block rotates under [[0,1],[-theta k^2 pi^2,0]], noise
//               enters the velocity.  Noise column k drives sine mode k, so
//               column 0 multiplies the zero function and is inert.
//   hjmm        forward-rate curve on a maturity grid; exact index shift with
//               flat extrapolation at the far end, no-arbitrage drift built
//               from the noise rows of the active truncation level.
//   schrodinger complex field on a periodic torus, mode xi rotated by angle
//   airy        t xi^2 (resp. t xi^3); drift and noise are rotated by -i.
//   diagonal    the driftless additive lab model: independent scalar modes
//               with amplitudes lambda_k and identity propagator.
//
// Every spec is immutable after construction and safe to share across
// threads; per-path mutable state lives in the integrator.
//==============================================================================

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spdelab/analytic.hpp"
#include "spdelab/coefficients.hpp"
#include "spdelab/spectral.hpp"

namespace spde::equations {

enum class Layout { ScalarModes, PositionVelocity, ComplexModes, MaturityCurve };

// Weighted-l2 state norm, or the forward-curve norm
// ||h||^2 = h(0)^2 + sum_j ((h_{j+1}-h_j)/dtau)^2 e^{alpha (tau_j + dtau/2)} dtau.
struct StateNorm {
  enum class Kind { Weighted, Curve };
  Kind kind = Kind::Weighted;
  std::vector<double> weights;  // squared weight per slot
  double dtau = 0.0;
  std::vector<double> curve_w;

  double norm_sq(std::span<const double> x) const;
  double norm(std::span<const double> x) const;
  double diff_norm_sq(std::span<const double> a, std::span<const double> b) const;
  double inner(std::span<const double> a, std::span<const double> b) const;
};

class Propagator {
 public:
  virtual ~Propagator() = default;
  virtual void apply(std::span<double> state, double t) const = 0;
  // Precomputed single-step action for a fixed step size.
  virtual std::function<void(std::span<double>)> prepare(double h) const;
};

class WavePropagator final : public Propagator {
 public:
  explicit WavePropagator(std::vector<double> mu) : mu_(std::move(mu)) {}
  void apply(std::span<double> state, double t) const override;
  std::function<void(std::span<double>)> prepare(double h) const override;

 private:
  std::vector<double> mu_;  // sqrt(theta) k pi per mode
};

class PhasePropagator final : public Propagator {
 public:
  explicit PhasePropagator(std::vector<double> symbols)
      : symbols_(std::move(symbols)) {}
  void apply(std::span<double> state, double t) const override;
  std::function<void(std::span<double>)> prepare(double h) const override;

 private:
  std::vector<double> symbols_;  // rotation angle per complex mode, times t
};

class DiagonalPropagator final : public Propagator {
 public:
  explicit DiagonalPropagator(std::vector<double> rates)
      : rates_(std::move(rates)) {}
  void apply(std::span<double> state, double t) const override;
  std::function<void(std::span<double>)> prepare(double h) const override;

 private:
  std::vector<double> rates_;  // x_k -> exp(rate_k t) x_k; empty = identity
};

class ShiftPropagator final : public Propagator {
 public:
  explicit ShiftPropagator(double dtau) : dtau_(dtau) {}
  void apply(std::span<double> state, double t) const override;

 private:
  double dtau_;
};

struct EquationSpec {
  std::string name;
  Layout layout = Layout::ScalarModes;
  int state_size = 0;
  spectral::Basis scalar_basis;
  std::shared_ptr<const Propagator> propagator;
  coeff::DriftCoefficient drift;
  coeff::ComponentRef drift_source, drift_target;
  std::shared_ptr<const coeff::DiffusionCoefficient> diffusion;
  std::vector<double> initial;
  double horizon = 1.0;
  StateNorm h_norm, v_norm;
  bool rotate_minus_i = false;
  int collocation_grid = 0;
  // HJMM no-arbitrage drift data: drift of level n is
  // sum_{k<n} row_k(tau) * cumtrapz(row_k)(tau).
  std::vector<std::vector<double>> hjmm_rows;
  double hjmm_dtau = 0.0;

  // sup_x sum_{k>=n} ||B(x)e_k||_H^2 / (1+||x||_V^2) when the family has an
  // analytic bound.
  std::function<std::optional<double>(long long)> tail_bound;
  // sum_{k>=n} ||B e_k||_H^2 for additive families (reference-bias reporting).
  std::function<double(long long)> additive_tail;
};

struct WaveParams {
  double theta = 1.0;
  double epsilon = 0.5;
  double eta = 0.0;
  coeff::DriftCoefficient drift = coeff::DriftCoefficient::zero();
  double b0_const = 0.0;
  std::vector<double> b0_field;  // overrides b0_const when nonempty
  double b1 = 0.0;
  double sigma_exponent = 1.0;   // declared smoothness of b1, must be > 1/4
  std::vector<double> initial;   // length 2*modes, empty = zero
  double horizon = 1.0;
  int modes = 64;
  int collocation_grid = 0;      // 0 = 4*modes
  double mult_norm = 0.0;        // <= 0 with b1 != 0: computed from the finite system
  double lip_v = 0.0;            // <= 0: assembled as ||b0||_{H_rho} + |b1|
};

struct DiagonalParams {
  analytic::LambdaFamily lambdas;
  int modes = 16;
  double horizon = 1.0;
  coeff::DriftCoefficient drift = coeff::DriftCoefficient::zero();
  std::vector<double> initial;  // empty = zero
};

struct HjmmParams {
  std::vector<std::vector<double>> rows;  // noise image curves on the grid
  double alpha = 0.1;
  double tau_max = 10.0;
  int grid_steps = 100;  // J; the grid has J+1 points
  std::vector<double> initial;
  double horizon = 1.0;
};

struct TorusParams {
  double half_length = 32.0;
  int modes = 65;  // complex frequencies, enumerated 0, +1, -1, ...
  double smoothness = 1.0;  // V-norm exponent r, must be > 1/2
  coeff::DriftCoefficient drift = coeff::DriftCoefficient::zero();
  double b0_const = 1.0;
  std::vector<double> b0;  // complex coefficients, overrides b0_const
  double b1 = 0.0;
  double sigma_decay = 1.0;   // sigma per column: (1+|freq|)^(-sigma_decay)
  std::vector<double> sigma;  // explicit per-column factors (overrides decay)
  std::vector<double> initial;
  double horizon = 1.0;
  int collocation_grid = 0;
};

EquationSpec make_wave(const WaveParams& p);
EquationSpec make_diagonal(const DiagonalParams& p);
EquationSpec make_hjmm(const HjmmParams& p);
EquationSpec make_schrodinger(const TorusParams& p);
EquationSpec make_airy(const TorusParams& p);

// Drift curve of the given truncation level on the maturity grid:
// sum_{k<n} row_k * cumtrapz(row_k).
std::vector<double> hjmm_trace_drift(const std::vector<std::vector<double>>& rows,
                                     double dtau, int level);

// Rigorous constants of the discrete curve space: sup-norm embedding
// ||x||_inf <= c_inf ||x||, a shift operator bound valid for every
// grid-aligned time, and a bound on the bilinear map m(x,y) = x * cumtrapz(y).
struct HjmmNormBounds {
  double sup_embedding = 0.0;
  double shift_norm = 0.0;
  double m_norm = 0.0;
};
HjmmNormBounds hjmm_norm_bounds(const EquationSpec& spec);

}  // namespace spde::equations
