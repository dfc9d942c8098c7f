#pragma once
//==============================================================================
// spectral.hpp
// Exact spectral calculus for the diagonal operators behind the example
// equations: orthonormal bases, fractional interpolation-space norms,
// mode-wise group propagators, and Yosida approximants.
//
// Bases:
//   DirichletSine  e_k(s) = sqrt(2) sin(k pi s) on (0,1); coefficient slot i
//                  holds mode k = i + 1.
//   FourierTorus   exp(i xi_j x) / sqrt(2L) on [-L, L) with xi_j = pi j / L;
//                  coefficient slots (2i, 2i+1) hold (Re, Im) of the complex
//                  mode with frequency index j(i) = 0, +1, -1, +2, -2, ...
//
// All synthesis/analysis uses direct O(modes * grid) transforms on grids that
// make the round trip exact for band-limited data (midpoint grid for sines,
// uniform grid for the torus).
//==============================================================================

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spde::spectral {

inline constexpr double kPi = 3.14159265358979323846;

enum class BasisKind { DirichletSine, FourierTorus };

struct Basis {
  BasisKind kind = BasisKind::DirichletSine;
  int modes = 0;             // Dirichlet: sine modes; torus: complex frequencies
  double half_length = 0.0;  // torus only

  bool operator==(const Basis&) const = default;

  // Length of a coefficient vector over this basis (torus fields are
  // complex-as-real, two slots per frequency).
  int coeff_size() const {
    return kind == BasisKind::FourierTorus ? 2 * modes : modes;
  }

  // Frequency enumeration for the torus: 0, +1, -1, +2, -2, ...
  static int frequency_index(int i) {
    if (i == 0) return 0;
    const int half = (i + 1) / 2;
    return (i % 2 == 1) ? half : -half;
  }

  // xi_{j(i)} = pi j(i) / L for torus mode i.
  double frequency(int i) const {
    return kPi * static_cast<double>(frequency_index(i)) / half_length;
  }
};

Basis dirichlet_basis(int modes);
Basis torus_basis(int modes, double half_length);

struct SpectralField {
  Basis basis;
  std::vector<double> coeffs;
};

// Single basis element with unit coefficient in the given slot.
SpectralField unit_mode(const Basis& basis, int slot);

//------------------------------------------------------------------------------
// Grid transforms.  Dirichlet uses the midpoint grid s_g = (g + 1/2)/G, on
// which the discrete sine orthogonality makes analyze(synthesize(c)) == c
// exactly whenever all modes are below the grid size.  The torus uses the
// uniform grid x_g = -L + 2L g/G with complex values stored interleaved.
//------------------------------------------------------------------------------

// Dirichlet, real-valued: grid_values has length G.
void synthesize(const Basis& basis, std::span<const double> coeffs,
                std::span<double> grid_values);
void analyze(const Basis& basis, std::span<const double> grid_values,
             std::span<double> coeffs);

// Torus, complex-as-real: grid_values has length 2G (interleaved re, im).
void synthesize_complex(const Basis& basis, std::span<const double> coeffs,
                        std::span<double> grid_values);
void analyze_complex(const Basis& basis, std::span<const double> grid_values,
                     std::span<double> coeffs);

// Value of the k-th Dirichlet eigenfunction (slot index) at s.
double dirichlet_eigenfunction(int slot, double s);

// Precomputed eigenfunction values on the midpoint grid, for repeated
// pointwise (collocation) products.  values[g * modes + i] = e_{i+1}(s_g).
struct SineTable {
  int grid = 0;
  int modes = 0;
  std::vector<double> values;

  static SineTable build(int grid, int modes);

  void synthesize(std::span<const double> coeffs, std::span<double> out) const;
  void analyze(std::span<const double> grid_values, std::span<double> coeffs) const;
  // grid_values += amp * e_slot
  void add_mode(std::span<double> grid_values, int slot, double amp) const;
};

// Torus analogue with complex-as-real values; cos_v/sin_v hold
// cos(xi_m x_g), sin(xi_m x_g) in grid-major order.
struct TorusTable {
  int grid = 0;
  int modes = 0;
  double half_length = 0.0;
  std::vector<double> cos_v, sin_v;

  static TorusTable build(const Basis& basis, int grid);

  void synthesize(std::span<const double> coeffs, std::span<double> out) const;
  void analyze(std::span<const double> grid_values, std::span<double> coeffs) const;
  void add_mode(std::span<double> grid_values, int mode, double re_amp,
                double im_amp) const;
};

//------------------------------------------------------------------------------
// Diagonal operators and interpolation-space norms.
//------------------------------------------------------------------------------

struct DiagonalOperator {
  Basis basis;
  std::vector<double> eigenvalues;  // one per mode (torus: per frequency)
};

// Negative Dirichlet Laplacian scaled by theta: eigenvalue theta k^2 pi^2 at
// sine mode k.
DiagonalOperator dirichlet_laplacian(int modes, double theta);

// 1 + xi^2 per torus frequency; fractional powers of it give the weighted
// Fourier (Bessel-potential) norms.
DiagonalOperator torus_bessel(int modes, double half_length);

struct InterpolationSpaceNorm {
  DiagonalOperator op;
  double exponent = 0.0;  // r; the squared norm weights are mu^(2r)
};

// Squared-weight per coefficient slot of a field over op.basis.
std::vector<double> interpolation_weights(const DiagonalOperator& op,
                                          double exponent);

// || x ||_{H_r} = sqrt( sum_k mu_k^{2r} x_k^2 ).  Throws std::invalid_argument
// on basis mismatch.
double fractional_norm(const SpectralField& x,
                       const InterpolationSpaceNorm& space);

//------------------------------------------------------------------------------
// Propagators.
//------------------------------------------------------------------------------

// Mode-wise wave group: exp(t * [[0, 1], [-mu^2, 0]]) for mu > 0, returned
// row-major as [[cos(mu t), sin(mu t)/mu], [-mu sin(mu t), cos(mu t)]].
std::array<double, 4> wave_mode_propagator(double mu, double t);

// Rotation pair (cos(t * symbol), sin(t * symbol)); applied to a complex-as-
// real mode pair it is a planar rotation with unit determinant.
std::pair<double, double> phase_propagator(double symbol, double t);

// Yosida-approximant semigroup of a negative diagonal generator: given the
// eigenvalues mu_k >= 0 of -A, returns the diagonal operator with entries
// exp(t * a_lambda(k)) where a_lambda(k) = -mu_k / (1 + mu_k / lambda).
// Every entry has absolute value <= 1.  Throws std::domain_error for
// lambda <= 0 or negative mu_k.
DiagonalOperator yosida_propagator(const DiagonalOperator& op, double lambda,
                                   double t);

}  // namespace spde::spectral
