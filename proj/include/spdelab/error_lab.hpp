#pragma once
//==============================================================================
// error_lab.hpp
// Strong/weak error estimation under common random numbers, the exact
// Gaussian functional for the additive diagonal model, rate regression, and
// the explicit constants entering the error bound.
//
// The coupled estimator: every truncation level is driven by the same
// increment block as the reference level, so
//   strong_sq(n) = mean_p || X^ref_p - X^n_p ||_H^2
//   weak(n)      = mean_p [ phi(X^ref_p) - phi(X^n_p) ]
// estimate the coupled errors unbiasedly with path-level standard errors.
// Paths are simulated in parallel but reduced strictly in path order, so the
// report is bitwise independent of the worker count.
//==============================================================================

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spdelab/analytic.hpp"
#include "spdelab/equations.hpp"
#include "spdelab/noise.hpp"

namespace spde::errlab {

struct TestFunctional {
  enum class Kind { GaussianBell, SmoothLinear };
  Kind kind = Kind::GaussianBell;
  std::vector<double> psi;  // SmoothLinear direction, state-sized

  static TestFunctional gaussian_bell();
  static TestFunctional smooth_linear(std::vector<double> psi);

  double evaluate(const equations::StateNorm& h_norm,
                  std::span<const double> state) const;
  // Analytic bound ||phi(0)|| + sup||phi'|| + sup||phi''||.
  double c2b_norm(const equations::StateNorm& h_norm) const;
};

struct LevelResult {
  int level = 0;
  double strong_sq = 0.0, strong_se = 0.0;
  double weak = 0.0, weak_se = 0.0;
  double phi_mean = 0.0, phi_se = 0.0;        // mean of phi(X^n)
  std::optional<double> tail_ratio;           // family bound at this level
  std::optional<double> bound;                // C * tail_ratio + reference bias
};

struct RateFit {
  std::vector<int> levels;
  std::vector<double> errors;
  double slope = 0.0, intercept = 0.0, residual = 0.0;
  int excluded = 0;  // nonpositive error values dropped before the fit
};

struct ErrorReport {
  std::string equation;
  int paths = 0;
  int steps = 0;
  int n_ref = 0;
  std::uint64_t seed = 0;
  double phi_ref_mean = 0.0, phi_ref_se = 0.0;
  std::vector<LevelResult> rows;
  std::optional<RateFit> strong_fit;
  std::optional<double> overall_constant;  // C used in the bound column
  std::optional<double> reference_bias;    // additive tail beyond n_ref
};

struct EstimateOptions {
  int workers = 0;                          // <= 0: hardware concurrency
  std::optional<double> overall_constant;   // multiplies tail_ratio in `bound`
};

ErrorReport estimate_errors(const equations::EquationSpec& spec,
                            const std::vector<int>& levels, int paths,
                            const TestFunctional& phi,
                            const noise::NoisePlan& plan_template,
                            const EstimateOptions& opts = {});

// E phi(X^n_1) = exp(-1/2 sum_{k<n} log(1 + lambda_k^2)) for the driftless
// additive diagonal model with phi(x) = exp(-||x||^2/2); level nullopt means
// infinity, with the series tail controlled analytically below 1e-12.
double gaussian_oracle(const analytic::LambdaFamily& lambdas,
                       std::optional<long long> level);

struct SharpnessRow {
  long long level = 0;
  double phi_level = 0.0;
  double phi_infinity = 0.0;
  double tail = 0.0;                  // sum_{k>=n} lambda_k^2
  std::optional<double> weak_ratio;   // (phi_level - phi_infinity) / tail
  double strong_ratio = 1.0;          // analytic route: identically one
};

std::vector<SharpnessRow> sharpness_ratios(const analytic::LambdaFamily& lambdas,
                                           std::span<const long long> levels);

// Least-squares slope of log(error) against log(level).  Nonpositive errors
// are excluded (counted in `excluded`); fewer than three surviving points is
// an error.
RateFit fit_rate(std::span<const int> levels, std::span<const double> errors);

// Closed-form constants of the weak/strong error bound, assembled from the
// semigroup and coefficient norms.  c = (T/2) c1 (1 + c2^2).
struct NormInputs {
  double semigroup = 1.0;       // sup_t ||S_t|| on H
  double semigroup_v = -1.0;    // on V; < 0 means reuse `semigroup`
  double drift_c1b = 0.0;
  double drift_c2b = 0.0;
  double diffusion_c1b = 0.0;
  double diffusion_c2b = 0.0;
  double drift_lip_v = 0.0;
  double diffusion_lip_v = 0.0;
  double initial_l2_v = 0.0;
  double initial_l2_h = -1.0;   // < 0 means reuse initial_l2_v
  double horizon = 1.0;
};

struct BoundConstants {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double c = 0.0;
  double apriori = 0.0;
};

BoundConstants evaluate_bound_constants(const NormInputs& in);

}  // namespace spde::errlab
