#include "spdelab/spectral.hpp"

#include <algorithm>
#include <cstddef>

namespace spde::spectral {

Basis dirichlet_basis(int modes) {
  if (modes < 0) throw std::invalid_argument("dirichlet_basis: negative mode count");
  return Basis{BasisKind::DirichletSine, modes, 0.0};
}

Basis torus_basis(int modes, double half_length) {
  if (modes < 0) throw std::invalid_argument("torus_basis: negative mode count");
  if (half_length <= 0.0) throw std::invalid_argument("torus_basis: half_length must be positive");
  return Basis{BasisKind::FourierTorus, modes, half_length};
}

SpectralField unit_mode(const Basis& basis, int slot) {
  SpectralField f{basis, std::vector<double>(static_cast<std::size_t>(basis.coeff_size()), 0.0)};
  if (slot < 0 || slot >= basis.coeff_size())
    throw std::out_of_range("unit_mode: slot outside basis");
  f.coeffs[static_cast<std::size_t>(slot)] = 1.0;
  return f;
}

double dirichlet_eigenfunction(int slot, double s) {
  const double k = static_cast<double>(slot + 1);
  return std::sqrt(2.0) * std::sin(k * kPi * s);
}

void synthesize(const Basis& basis, std::span<const double> coeffs,
                std::span<double> grid_values) {
  if (basis.kind != BasisKind::DirichletSine)
    throw std::invalid_argument("synthesize: real transform requires a Dirichlet basis");
  const int n = static_cast<int>(coeffs.size());
  const int g = static_cast<int>(grid_values.size());
  const double root2 = std::sqrt(2.0);
  for (int i = 0; i < g; ++i) {
    const double s = (i + 0.5) / g;
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += coeffs[static_cast<std::size_t>(k)] * std::sin((k + 1) * kPi * s);
    grid_values[static_cast<std::size_t>(i)] = root2 * acc;
  }
}

void analyze(const Basis& basis, std::span<const double> grid_values,
             std::span<double> coeffs) {
  if (basis.kind != BasisKind::DirichletSine)
    throw std::invalid_argument("analyze: real transform requires a Dirichlet basis");
  const int n = static_cast<int>(coeffs.size());
  const int g = static_cast<int>(grid_values.size());
  const double w = std::sqrt(2.0) / g;  // midpoint quadrature weight times sqrt(2)
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < g; ++i) {
      const double s = (i + 0.5) / g;
      acc += grid_values[static_cast<std::size_t>(i)] * std::sin((k + 1) * kPi * s);
    }
    coeffs[static_cast<std::size_t>(k)] = w * acc;
  }
}

void synthesize_complex(const Basis& basis, std::span<const double> coeffs,
                        std::span<double> grid_values) {
  if (basis.kind != BasisKind::FourierTorus)
    throw std::invalid_argument("synthesize_complex: requires a torus basis");
  const int n = static_cast<int>(coeffs.size()) / 2;
  const int g = static_cast<int>(grid_values.size()) / 2;
  const double l = basis.half_length;
  const double scale = 1.0 / std::sqrt(2.0 * l);
  for (int i = 0; i < g; ++i) {
    const double x = -l + 2.0 * l * i / g;
    double re = 0.0, im = 0.0;
    for (int m = 0; m < n; ++m) {
      const double xi = kPi * Basis::frequency_index(m) / l;
      const double c = std::cos(xi * x), s = std::sin(xi * x);
      const double a = coeffs[static_cast<std::size_t>(2 * m)];
      const double b = coeffs[static_cast<std::size_t>(2 * m + 1)];
      re += a * c - b * s;
      im += a * s + b * c;
    }
    grid_values[static_cast<std::size_t>(2 * i)] = scale * re;
    grid_values[static_cast<std::size_t>(2 * i + 1)] = scale * im;
  }
}

void analyze_complex(const Basis& basis, std::span<const double> grid_values,
                     std::span<double> coeffs) {
  if (basis.kind != BasisKind::FourierTorus)
    throw std::invalid_argument("analyze_complex: requires a torus basis");
  const int n = static_cast<int>(coeffs.size()) / 2;
  const int g = static_cast<int>(grid_values.size()) / 2;
  const double l = basis.half_length;
  // quadrature weight 2L/G against conj(e_j)/sqrt(2L)
  const double scale = std::sqrt(2.0 * l) / g;
  for (int m = 0; m < n; ++m) {
    const double xi = kPi * Basis::frequency_index(m) / l;
    double re = 0.0, im = 0.0;
    for (int i = 0; i < g; ++i) {
      const double x = -l + 2.0 * l * i / g;
      const double c = std::cos(xi * x), s = std::sin(xi * x);
      const double u = grid_values[static_cast<std::size_t>(2 * i)];
      const double v = grid_values[static_cast<std::size_t>(2 * i + 1)];
      re += u * c + v * s;
      im += v * c - u * s;
    }
    coeffs[static_cast<std::size_t>(2 * m)] = scale * re;
    coeffs[static_cast<std::size_t>(2 * m + 1)] = scale * im;
  }
}

SineTable SineTable::build(int grid, int modes) {
  SineTable t{grid, modes, {}};
  t.values.resize(static_cast<std::size_t>(grid) * modes);
  const double root2 = std::sqrt(2.0);
  for (int g = 0; g < grid; ++g) {
    const double s = (g + 0.5) / grid;
    for (int i = 0; i < modes; ++i)
      t.values[static_cast<std::size_t>(g) * modes + i] =
          root2 * std::sin((i + 1) * kPi * s);
  }
  return t;
}

void SineTable::synthesize(std::span<const double> coeffs,
                           std::span<double> out) const {
  const int n = static_cast<int>(coeffs.size());
  for (int g = 0; g < grid; ++g) {
    const double* row = values.data() + static_cast<std::size_t>(g) * modes;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += row[i] * coeffs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(g)] = acc;
  }
}

void SineTable::analyze(std::span<const double> grid_values,
                        std::span<double> coeffs) const {
  const int n = static_cast<int>(coeffs.size());
  const double w = 1.0 / grid;
  for (int i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(i)] = 0.0;
  for (int g = 0; g < grid; ++g) {
    const double* row = values.data() + static_cast<std::size_t>(g) * modes;
    const double v = grid_values[static_cast<std::size_t>(g)];
    for (int i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(i)] += row[i] * v;
  }
  for (int i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(i)] *= w;
}

void SineTable::add_mode(std::span<double> grid_values, int slot,
                         double amp) const {
  for (int g = 0; g < grid; ++g)
    grid_values[static_cast<std::size_t>(g)] +=
        amp * values[static_cast<std::size_t>(g) * modes + slot];
}

TorusTable TorusTable::build(const Basis& basis, int grid) {
  TorusTable t{grid, basis.modes, basis.half_length, {}, {}};
  t.cos_v.resize(static_cast<std::size_t>(grid) * basis.modes);
  t.sin_v.resize(static_cast<std::size_t>(grid) * basis.modes);
  const double l = basis.half_length;
  for (int g = 0; g < grid; ++g) {
    const double x = -l + 2.0 * l * g / grid;
    for (int m = 0; m < basis.modes; ++m) {
      const double xi = kPi * Basis::frequency_index(m) / l;
      t.cos_v[static_cast<std::size_t>(g) * basis.modes + m] = std::cos(xi * x);
      t.sin_v[static_cast<std::size_t>(g) * basis.modes + m] = std::sin(xi * x);
    }
  }
  return t;
}

void TorusTable::synthesize(std::span<const double> coeffs,
                            std::span<double> out) const {
  const int n = static_cast<int>(coeffs.size()) / 2;
  const double scale = 1.0 / std::sqrt(2.0 * half_length);
  for (int g = 0; g < grid; ++g) {
    const double* cr = cos_v.data() + static_cast<std::size_t>(g) * modes;
    const double* sr = sin_v.data() + static_cast<std::size_t>(g) * modes;
    double re = 0.0, im = 0.0;
    for (int m = 0; m < n; ++m) {
      const double a = coeffs[static_cast<std::size_t>(2 * m)];
      const double b = coeffs[static_cast<std::size_t>(2 * m + 1)];
      re += a * cr[m] - b * sr[m];
      im += a * sr[m] + b * cr[m];
    }
    out[static_cast<std::size_t>(2 * g)] = scale * re;
    out[static_cast<std::size_t>(2 * g + 1)] = scale * im;
  }
}

void TorusTable::analyze(std::span<const double> grid_values,
                         std::span<double> coeffs) const {
  const int n = static_cast<int>(coeffs.size()) / 2;
  const double scale = std::sqrt(2.0 * half_length) / grid;
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = 0.0;
  for (int g = 0; g < grid; ++g) {
    const double* cr = cos_v.data() + static_cast<std::size_t>(g) * modes;
    const double* sr = sin_v.data() + static_cast<std::size_t>(g) * modes;
    const double u = grid_values[static_cast<std::size_t>(2 * g)];
    const double v = grid_values[static_cast<std::size_t>(2 * g + 1)];
    for (int m = 0; m < n; ++m) {
      coeffs[static_cast<std::size_t>(2 * m)] += u * cr[m] + v * sr[m];
      coeffs[static_cast<std::size_t>(2 * m + 1)] += v * cr[m] - u * sr[m];
    }
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= scale;
}

void TorusTable::add_mode(std::span<double> grid_values, int mode,
                          double re_amp, double im_amp) const {
  const double scale = 1.0 / std::sqrt(2.0 * half_length);
  for (int g = 0; g < grid; ++g) {
    const double c = cos_v[static_cast<std::size_t>(g) * modes + mode];
    const double s = sin_v[static_cast<std::size_t>(g) * modes + mode];
    grid_values[static_cast<std::size_t>(2 * g)] += scale * (re_amp * c - im_amp * s);
    grid_values[static_cast<std::size_t>(2 * g + 1)] += scale * (re_amp * s + im_amp * c);
  }
}

DiagonalOperator dirichlet_laplacian(int modes, double theta) {
  if (theta <= 0.0)
    throw std::invalid_argument("dirichlet_laplacian: theta must be positive");
  DiagonalOperator op{dirichlet_basis(modes), {}};
  op.eigenvalues.resize(static_cast<std::size_t>(modes));
  for (int i = 0; i < modes; ++i) {
    const double k = static_cast<double>(i + 1);
    op.eigenvalues[static_cast<std::size_t>(i)] = theta * k * k * kPi * kPi;
  }
  return op;
}

DiagonalOperator torus_bessel(int modes, double half_length) {
  DiagonalOperator op{torus_basis(modes, half_length), {}};
  op.eigenvalues.resize(static_cast<std::size_t>(modes));
  for (int i = 0; i < modes; ++i) {
    const double xi = op.basis.frequency(i);
    op.eigenvalues[static_cast<std::size_t>(i)] = 1.0 + xi * xi;
  }
  return op;
}

std::vector<double> interpolation_weights(const DiagonalOperator& op,
                                          double exponent) {
  const int size = op.basis.coeff_size();
  std::vector<double> w(static_cast<std::size_t>(size), 1.0);
  if (exponent == 0.0) return w;
  const bool torus = op.basis.kind == BasisKind::FourierTorus;
  for (int i = 0; i < size; ++i) {
    const int mode = torus ? i / 2 : i;
    const double mu = op.eigenvalues[static_cast<std::size_t>(mode)];
    if (mu <= 0.0)
      throw std::domain_error("interpolation_weights: nonpositive eigenvalue under fractional power");
    w[static_cast<std::size_t>(i)] = std::pow(mu, 2.0 * exponent);
  }
  return w;
}

double fractional_norm(const SpectralField& x,
                       const InterpolationSpaceNorm& space) {
  if (!(x.basis == space.op.basis))
    throw std::invalid_argument("fractional_norm: field and norm live on different bases");
  const auto w = interpolation_weights(space.op, space.exponent);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    acc += w[i] * x.coeffs[i] * x.coeffs[i];
  return std::sqrt(acc);
}

std::array<double, 4> wave_mode_propagator(double mu, double t) {
  if (mu <= 0.0)
    throw std::domain_error("wave_mode_propagator: mu must be positive");
  const double c = std::cos(mu * t);
  const double s = std::sin(mu * t);
  return {c, s / mu, -mu * s, c};
}

std::pair<double, double> phase_propagator(double symbol, double t) {
  return {std::cos(t * symbol), std::sin(t * symbol)};
}

DiagonalOperator yosida_propagator(const DiagonalOperator& op, double lambda,
                                   double t) {
  if (lambda <= 0.0)
    throw std::domain_error("yosida_propagator: lambda must be positive");
  if (t < 0.0)
    throw std::domain_error("yosida_propagator: t must be nonnegative");
  DiagonalOperator out{op.basis, {}};
  out.eigenvalues.resize(op.eigenvalues.size());
  for (std::size_t i = 0; i < op.eigenvalues.size(); ++i) {
    const double mu = op.eigenvalues[i];
    if (mu < 0.0)
      throw std::domain_error("yosida_propagator: generator must be negative (mu_k >= 0)");
    const double rate = -mu / (1.0 + mu / lambda);
    out.eigenvalues[i] = std::exp(t * rate);
  }
  return out;
}

}  // namespace spde::spectral
