#pragma once
//==============================================================================
// coefficients.hpp
// Drift and diffusion coefficient families for the example equations, with
// per-family analytic bounds on the truncated-noise tail ratio
//
//     sup_x  sum_{k >= n} ||B(x) e_k||_H^2 / (1 + ||x||_V^2).
//
// Families:
//   ConstantDiagonal  additive noise whose k-th column feeds one basis slot
//                     with amplitude a_k (the Gaussian diagonal lab model and
//                     the wave equation with constant b0).
//   ConstantRows      additive noise with an explicit image field per column
//                     (forward-curve models).
//   RankOneIntegral   (B(x)u)(s) = integral of x * u; B(x)e_k = <x,e_k> * one.
//   PointwiseAffine   B(x)u = (b0 + b1 * x) * (Sigma u), the product computed
//                     by collocation: synthesize, multiply on the grid,
//                     analyze back.
//
// Column-to-slot convention: each family fixes a shift between noise column
// indices (0-based) and coefficient slots.  The wave equation uses shift -1 so
// that column k drives sine mode k; column 0 multiplies the zero function and
// is inert, which keeps the tail sums over dropped columns literally equal to
// sums over sine modes k >= n.
//==============================================================================

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "spdelab/analytic.hpp"
#include "spdelab/spectral.hpp"

namespace spde::coeff {

// Slice of the flat state vector holding one scalar/complex field component.
struct ComponentRef {
  int state_size = 0;
  int offset = 0;
  int size = 0;
};

struct DriftCoefficient {
  enum class Kind { Zero, Affine, Nemytskii };
  Kind kind = Kind::Zero;
  std::vector<double> f0;        // coefficients in the component basis
  double f1 = 0.0;               // scalar multiplier of the state component
  std::vector<double> f1_field;  // optional field multiplier (overrides f1)
  std::function<double(double, double)> pointwise;  // Nemytskii f(s, x)

  static DriftCoefficient zero();
  static DriftCoefficient affine(std::vector<double> f0, double f1);
  static DriftCoefficient affine_field(std::vector<double> f0,
                                       std::vector<double> f1_field);
  static DriftCoefficient nemytskii(std::function<double(double, double)> f);
};

struct Workspace {
  std::vector<double> grid_a, grid_b, grid_c;
  std::vector<double> comp_a;
};

struct DiffusionCoefficient {
  enum class Kind { ConstantDiagonal, ConstantRows, RankOneIntegral, PointwiseAffine };
  Kind kind = Kind::ConstantDiagonal;
  ComponentRef target;

  // ConstantDiagonal
  std::function<double(long long)> amplitude;
  int column_slot_shift = 0;

  // ConstantRows: rows[k] is the image field of column k (component-sized)
  std::vector<std::vector<double>> rows;

  // RankOneIntegral
  std::vector<double> one_field;

  // PointwiseAffine
  spectral::Basis basis;
  bool complex_field = false;
  std::vector<double> b0;      // component-sized coefficients
  double b1 = 0.0;
  std::vector<double> sigma;   // per-column diagonal factor; empty = identity
  ComponentRef mult_source;    // state component entering b1 * x
  int collocation_grid = 0;
  spectral::SineTable sine_table;    // real collocation
  spectral::TorusTable torus_table;  // complex collocation
  std::vector<double> b0_grid;       // b0 synthesized once

  // Analytic bound data.
  std::function<double(long long)> h_tail;  // sum_{k>=n} ||B e_k||_H^2 (constant kinds)
  double lip_v = 0.0;          // Lipschitz norm on V, supplied at construction
  double mult_norm = 0.0;      // multiplier operator norm, supplied
  double rate_exponent = 0.0;  // bound decays like n^(-rate_exponent)

  // sum_{k < n} B(x) e_k dW_k accumulated into `out` (state-sized, not
  // cleared).  `out` may alias `state`: every read of the state completes
  // before the first write.
  void apply_into(std::span<const double> state, std::span<const double> dw,
                  int n, std::span<double> out, Workspace& ws) const;

  // Bound available from family data alone (everything except RankOneIntegral).
  std::optional<double> internal_tail_bound(long long n) const;
};

DiffusionCoefficient constant_diagonal(ComponentRef target,
                                       std::function<double(long long)> amplitude,
                                       int column_slot_shift,
                                       std::function<double(long long)> h_tail);

DiffusionCoefficient constant_rows(ComponentRef target,
                                   std::vector<std::vector<double>> rows,
                                   std::function<double(long long)> h_tail);

DiffusionCoefficient rank_one_integral(ComponentRef target,
                                       const spectral::Basis& basis);

DiffusionCoefficient pointwise_affine(ComponentRef target,
                                      const spectral::Basis& basis,
                                      std::vector<double> b0, double b1,
                                      std::vector<double> sigma,
                                      ComponentRef mult_source,
                                      int collocation_grid, int column_slot_shift,
                                      double lip_v, double mult_norm,
                                      double rate_exponent);

// Convenience wrapper allocating the increment and a scratch workspace.
std::vector<double> apply_diffusion(const DiffusionCoefficient& b,
                                    std::span<const double> state,
                                    std::span<const double> dw, int n);

// sup_x sum_{k>=n} ||B(x)e_k||_H^2 / (1+||x||_V^2), or nullopt when the family
// has no analytic bound.  V matters only for RankOneIntegral, where
//   V = H (exponent 0)            ->  1
//   V = dom((-theta Delta)^delta) ->  (theta pi^2 n^2)^(-2 delta)
std::optional<double> tail_ratio_bound(const DiffusionCoefficient& b,
                                       const spectral::InterpolationSpaceNorm& v,
                                       long long n);

// Evaluate a drift coefficient on a scalar component: out += F(x), both spans
// component-sized.  Nemytskii and field-multiplier evaluation go through the
// collocation table (f1_grid holds the presynthesized field multiplier);
// affine evaluation with scalar f1 stays in coefficient space and is exact.
void evaluate_drift_into(const DriftCoefficient& f, const spectral::SineTable& table,
                         std::span<const double> x, std::span<double> out,
                         Workspace& ws, std::span<const double> f1_grid = {});

// Complex (torus) variant; x/out interleaved complex, f0/f1_field complex.
void evaluate_drift_into_complex(const DriftCoefficient& f,
                                 const spectral::TorusTable& table,
                                 std::span<const double> x, std::span<double> out,
                                 Workspace& ws, std::span<const double> f1_grid = {});

//------------------------------------------------------------------------------
// Squared Hilbert-Schmidt norm of the multiplication operator u -> x*u between
// fractional spaces of a (scaled) Dirichlet Laplacian, via the single-sum form
//
//   ||M(x)||^2_{HS(H_{ -gamma }; H_beta)} = sum_m mu_m^{2 beta} ||x e_m||^2_{H_gamma}
//
// truncated at `cutoff` (both sums), with the products x * e_m computed by
// collocation.  The truncated sum is returned; it never decreases in the
// cutoff.  Requires gamma in [0, 1/4) and beta < -1/4 - gamma; outside that
// range the full sum may diverge and a domain error is thrown.
//------------------------------------------------------------------------------
double multiplication_hs_norm(const spectral::SpectralField& x,
                              const spectral::DiagonalOperator& op,
                              double gamma, double beta, int cutoff);

// Exact multiplier norm of the finite system actually simulated: the largest
// value of sqrt(sum_{k<=k_modes} mu_k^{2 gamma} ||P_N (y e_k)||^2_{H_beta})
// over unit ||y||_{H_gamma} with y supported on the first n_state sine modes.
// Used to supply the PointwiseAffine bound constant.
double finite_multiplier_norm(const spectral::DiagonalOperator& op,
                              double gamma, double beta, int n_state,
                              int k_modes);

// Triple product integral of Dirichlet eigenfunctions with 1-based mode
// numbers: int_0^1 e_a e_b e_c ds, in closed form.
double sine_triple_product(int a, int b, int c);

}  // namespace spde::coeff
