#include "spdelab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace spde::coeff {

using spectral::Basis;
using spectral::BasisKind;
using spectral::kPi;

DriftCoefficient DriftCoefficient::zero() { return {}; }

DriftCoefficient DriftCoefficient::affine(std::vector<double> f0, double f1) {
  DriftCoefficient f;
  f.kind = Kind::Affine;
  f.f0 = std::move(f0);
  f.f1 = f1;
  return f;
}

DriftCoefficient DriftCoefficient::affine_field(std::vector<double> f0,
                                                std::vector<double> f1_field) {
  DriftCoefficient f;
  f.kind = Kind::Affine;
  f.f0 = std::move(f0);
  f.f1_field = std::move(f1_field);
  return f;
}

DriftCoefficient DriftCoefficient::nemytskii(
    std::function<double(double, double)> f) {
  DriftCoefficient d;
  d.kind = Kind::Nemytskii;
  d.pointwise = std::move(f);
  return d;
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

DiffusionCoefficient constant_diagonal(ComponentRef target,
                                       std::function<double(long long)> amplitude,
                                       int column_slot_shift,
                                       std::function<double(long long)> h_tail) {
  require(static_cast<bool>(amplitude), "constant_diagonal: amplitude required");
  DiffusionCoefficient b;
  b.kind = DiffusionCoefficient::Kind::ConstantDiagonal;
  b.target = target;
  b.amplitude = std::move(amplitude);
  b.column_slot_shift = column_slot_shift;
  b.h_tail = std::move(h_tail);
  if (b.h_tail && !std::isfinite(b.h_tail(0)))
    throw std::invalid_argument("constant_diagonal: declared tail is not summable");
  return b;
}

DiffusionCoefficient constant_rows(ComponentRef target,
                                   std::vector<std::vector<double>> rows,
                                   std::function<double(long long)> h_tail) {
  DiffusionCoefficient b;
  b.kind = DiffusionCoefficient::Kind::ConstantRows;
  b.target = target;
  for (const auto& r : rows)
    require(static_cast<int>(r.size()) == target.size,
            "constant_rows: row size must match the target component");
  b.rows = std::move(rows);
  b.h_tail = std::move(h_tail);
  return b;
}

DiffusionCoefficient rank_one_integral(ComponentRef target,
                                       const Basis& basis) {
  require(basis.kind == BasisKind::DirichletSine,
          "rank_one_integral: defined over the Dirichlet sine basis");
  require(basis.modes == target.size,
          "rank_one_integral: component size must match the basis");
  DiffusionCoefficient b;
  b.kind = DiffusionCoefficient::Kind::RankOneIntegral;
  b.target = target;
  b.basis = basis;
  b.one_field.resize(static_cast<std::size_t>(basis.modes), 0.0);
  // <1, e_k> = sqrt(2)(1 - (-1)^k)/(k pi), k the 1-based sine mode
  for (int i = 0; i < basis.modes; i += 2)
    b.one_field[static_cast<std::size_t>(i)] =
        2.0 * std::sqrt(2.0) / ((i + 1) * kPi);
  return b;
}

DiffusionCoefficient pointwise_affine(ComponentRef target, const Basis& basis,
                                      std::vector<double> b0, double b1,
                                      std::vector<double> sigma,
                                      ComponentRef mult_source,
                                      int collocation_grid, int column_slot_shift,
                                      double lip_v, double mult_norm,
                                      double rate_exponent) {
  DiffusionCoefficient b;
  b.kind = DiffusionCoefficient::Kind::PointwiseAffine;
  b.target = target;
  b.basis = basis;
  b.complex_field = basis.kind == BasisKind::FourierTorus;
  require(static_cast<int>(b0.size()) == basis.coeff_size(),
          "pointwise_affine: b0 size must match the basis");
  b.b0 = std::move(b0);
  b.b1 = b1;
  b.sigma = std::move(sigma);
  b.mult_source = mult_source;
  if (b1 != 0.0)
    require(mult_source.size > 0,
            "pointwise_affine: collocation source missing for multiplicative b1");
  if (collocation_grid <= 0) collocation_grid = 4 * basis.modes;
  b.collocation_grid = collocation_grid;
  b.column_slot_shift = column_slot_shift;
  b.lip_v = lip_v;
  b.mult_norm = mult_norm;
  b.rate_exponent = rate_exponent;
  if (b.complex_field) {
    b.torus_table = spectral::TorusTable::build(basis, collocation_grid);
    b.b0_grid.resize(static_cast<std::size_t>(2 * collocation_grid));
    b.torus_table.synthesize(b.b0, b.b0_grid);
  } else {
    b.sine_table = spectral::SineTable::build(collocation_grid, basis.modes);
    b.b0_grid.resize(static_cast<std::size_t>(collocation_grid));
    b.sine_table.synthesize(b.b0, b.b0_grid);
  }
  return b;
}

void DiffusionCoefficient::apply_into(std::span<const double> state,
                                      std::span<const double> dw, int n,
                                      std::span<double> out,
                                      Workspace& ws) const {
  require(n >= 0 && n <= static_cast<int>(dw.size()),
          "apply_into: truncation exceeds available increment columns");
  switch (kind) {
    case Kind::ConstantDiagonal: {
      for (int k = std::max(0, -column_slot_shift); k < n; ++k) {
        const int slot = k + column_slot_shift;
        if (slot >= target.size) break;
        out[static_cast<std::size_t>(target.offset + slot)] +=
            amplitude(k) * dw[static_cast<std::size_t>(k)];
      }
      return;
    }
    case Kind::ConstantRows: {
      const int rows_used = std::min<int>(n, static_cast<int>(rows.size()));
      for (int k = 0; k < rows_used; ++k) {
        const double w = dw[static_cast<std::size_t>(k)];
        const auto& row = rows[static_cast<std::size_t>(k)];
        double* dst = out.data() + target.offset;
        for (int i = 0; i < target.size; ++i) dst[i] += w * row[static_cast<std::size_t>(i)];
      }
      return;
    }
    case Kind::RankOneIntegral: {
      double s = 0.0;
      const int cols = std::min(n, target.size);
      for (int k = 0; k < cols; ++k)
        s += state[static_cast<std::size_t>(target.offset + k)] *
             dw[static_cast<std::size_t>(k)];
      double* dst = out.data() + target.offset;
      for (int i = 0; i < target.size; ++i) dst[i] += s * one_field[static_cast<std::size_t>(i)];
      return;
    }
    case Kind::PointwiseAffine: {
      const int g = collocation_grid;
      if (!complex_field) {
        ws.comp_a.assign(static_cast<std::size_t>(basis.modes), 0.0);
        for (int k = std::max(0, -column_slot_shift); k < n; ++k) {
          const int slot = k + column_slot_shift;
          if (slot >= basis.modes) break;
          const double sig = sigma.empty() ? 1.0 : sigma[static_cast<std::size_t>(k)];
          ws.comp_a[static_cast<std::size_t>(slot)] = sig * dw[static_cast<std::size_t>(k)];
        }
        ws.grid_a.resize(static_cast<std::size_t>(g));
        sine_table.synthesize(ws.comp_a, ws.grid_a);  // noise field on the grid
        if (b1 != 0.0) {
          ws.grid_b.resize(static_cast<std::size_t>(g));
          sine_table.synthesize(
              state.subspan(static_cast<std::size_t>(mult_source.offset),
                            static_cast<std::size_t>(mult_source.size)),
              ws.grid_b);
          for (int i = 0; i < g; ++i)
            ws.grid_a[static_cast<std::size_t>(i)] *=
                b0_grid[static_cast<std::size_t>(i)] + b1 * ws.grid_b[static_cast<std::size_t>(i)];
        } else {
          for (int i = 0; i < g; ++i)
            ws.grid_a[static_cast<std::size_t>(i)] *= b0_grid[static_cast<std::size_t>(i)];
        }
        ws.comp_a.resize(static_cast<std::size_t>(target.size));
        sine_table.analyze(ws.grid_a, ws.comp_a);
        double* dst = out.data() + target.offset;
        for (int i = 0; i < target.size; ++i) dst[i] += ws.comp_a[static_cast<std::size_t>(i)];
      } else {
        ws.comp_a.assign(static_cast<std::size_t>(2 * basis.modes), 0.0);
        const int cols = std::min<int>(n, 2 * basis.modes);
        for (int k = 0; k < cols; ++k) {
          const double sig = sigma.empty() ? 1.0 : sigma[static_cast<std::size_t>(k)];
          ws.comp_a[static_cast<std::size_t>(k)] = sig * dw[static_cast<std::size_t>(k)];
        }
        ws.grid_a.resize(static_cast<std::size_t>(2 * g));
        torus_table.synthesize(ws.comp_a, ws.grid_a);
        if (b1 != 0.0) {
          ws.grid_b.resize(static_cast<std::size_t>(2 * g));
          torus_table.synthesize(
              state.subspan(static_cast<std::size_t>(mult_source.offset),
                            static_cast<std::size_t>(mult_source.size)),
              ws.grid_b);
        }
        for (int i = 0; i < g; ++i) {
          double mr = b0_grid[static_cast<std::size_t>(2 * i)];
          double mi = b0_grid[static_cast<std::size_t>(2 * i + 1)];
          if (b1 != 0.0) {
            mr += b1 * ws.grid_b[static_cast<std::size_t>(2 * i)];
            mi += b1 * ws.grid_b[static_cast<std::size_t>(2 * i + 1)];
          }
          const double wr = ws.grid_a[static_cast<std::size_t>(2 * i)];
          const double wi = ws.grid_a[static_cast<std::size_t>(2 * i + 1)];
          ws.grid_a[static_cast<std::size_t>(2 * i)] = mr * wr - mi * wi;
          ws.grid_a[static_cast<std::size_t>(2 * i + 1)] = mr * wi + mi * wr;
        }
        ws.comp_a.resize(static_cast<std::size_t>(target.size));
        torus_table.analyze(ws.grid_a, ws.comp_a);
        double* dst = out.data() + target.offset;
        for (int i = 0; i < target.size; ++i) dst[i] += ws.comp_a[static_cast<std::size_t>(i)];
      }
      return;
    }
  }
}

std::optional<double> DiffusionCoefficient::internal_tail_bound(long long n) const {
  switch (kind) {
    case Kind::ConstantDiagonal:
    case Kind::ConstantRows:
      if (h_tail) return h_tail(n);
      return std::nullopt;
    case Kind::PointwiseAffine:
      if (b1 == 0.0 && h_tail) return h_tail(n);
      if (mult_norm > 0.0 && rate_exponent > 0.0) {
        const double c = mult_norm * lip_v;
        return c * c * std::pow(static_cast<double>(n), -rate_exponent);
      }
      return std::nullopt;
    case Kind::RankOneIntegral:
      return std::nullopt;  // needs the V space; see tail_ratio_bound
  }
  return std::nullopt;
}

std::vector<double> apply_diffusion(const DiffusionCoefficient& b,
                                    std::span<const double> state,
                                    std::span<const double> dw, int n) {
  std::vector<double> out(static_cast<std::size_t>(b.target.state_size), 0.0);
  Workspace ws;
  b.apply_into(state, dw, n, out, ws);
  return out;
}

std::optional<double> tail_ratio_bound(const DiffusionCoefficient& b,
                                       const spectral::InterpolationSpaceNorm& v,
                                       long long n) {
  if (n < 1) throw std::invalid_argument("tail_ratio_bound: level must be >= 1");
  if (b.kind == DiffusionCoefficient::Kind::RankOneIntegral) {
    const double delta = v.exponent;
    if (delta == 0.0) return 1.0;  // sup over the base space
    if (delta <= 0.0 || delta >= 0.25) return std::nullopt;
    if (v.op.basis.kind != BasisKind::DirichletSine || v.op.eigenvalues.empty())
      return std::nullopt;
    const double theta = v.op.eigenvalues[0] / (kPi * kPi);
    const double mu_n = theta * kPi * kPi * static_cast<double>(n) * static_cast<double>(n);
    return std::pow(mu_n, -2.0 * delta);
  }
  return b.internal_tail_bound(n);
}

void evaluate_drift_into(const DriftCoefficient& f, const spectral::SineTable& table,
                         std::span<const double> x, std::span<double> out,
                         Workspace& ws, std::span<const double> f1_grid) {
  switch (f.kind) {
    case DriftCoefficient::Kind::Zero:
      return;
    case DriftCoefficient::Kind::Affine: {
      if (!f.f0.empty())
        for (std::size_t i = 0; i < out.size() && i < f.f0.size(); ++i)
          out[i] += f.f0[i];
      if (!f.f1_field.empty()) {
        ws.grid_a.resize(static_cast<std::size_t>(table.grid));
        table.synthesize(x, ws.grid_a);
        for (int g = 0; g < table.grid; ++g)
          ws.grid_a[static_cast<std::size_t>(g)] *= f1_grid[static_cast<std::size_t>(g)];
        ws.comp_a.resize(out.size());
        table.analyze(ws.grid_a, ws.comp_a);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += ws.comp_a[i];
      } else if (f.f1 != 0.0) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += f.f1 * x[i];
      }
      return;
    }
    case DriftCoefficient::Kind::Nemytskii: {
      ws.grid_a.resize(static_cast<std::size_t>(table.grid));
      table.synthesize(x, ws.grid_a);
      for (int g = 0; g < table.grid; ++g) {
        const double s = (g + 0.5) / table.grid;
        ws.grid_a[static_cast<std::size_t>(g)] =
            f.pointwise(s, ws.grid_a[static_cast<std::size_t>(g)]);
      }
      ws.comp_a.resize(out.size());
      table.analyze(ws.grid_a, ws.comp_a);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += ws.comp_a[i];
      return;
    }
  }
}

void evaluate_drift_into_complex(const DriftCoefficient& f,
                                 const spectral::TorusTable& table,
                                 std::span<const double> x, std::span<double> out,
                                 Workspace& ws, std::span<const double> f1_grid) {
  switch (f.kind) {
    case DriftCoefficient::Kind::Zero:
      return;
    case DriftCoefficient::Kind::Affine: {
      if (!f.f0.empty())
        for (std::size_t i = 0; i < out.size() && i < f.f0.size(); ++i)
          out[i] += f.f0[i];
      if (!f.f1_field.empty()) {
        ws.grid_a.resize(static_cast<std::size_t>(2 * table.grid));
        table.synthesize(x, ws.grid_a);
        for (int g = 0; g < table.grid; ++g) {
          const double vr = ws.grid_a[static_cast<std::size_t>(2 * g)];
          const double vi = ws.grid_a[static_cast<std::size_t>(2 * g + 1)];
          const double fr = f1_grid[static_cast<std::size_t>(2 * g)];
          const double fi = f1_grid[static_cast<std::size_t>(2 * g + 1)];
          ws.grid_a[static_cast<std::size_t>(2 * g)] = fr * vr - fi * vi;
          ws.grid_a[static_cast<std::size_t>(2 * g + 1)] = fr * vi + fi * vr;
        }
        ws.comp_a.resize(out.size());
        table.analyze(ws.grid_a, ws.comp_a);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += ws.comp_a[i];
      } else if (f.f1 != 0.0) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += f.f1 * x[i];
      }
      return;
    }
    case DriftCoefficient::Kind::Nemytskii:
      throw std::invalid_argument(
          "evaluate_drift_into_complex: pointwise drift is only built for real fields");
  }
}

double sine_triple_product(int a, int b, int c) {
  // int_0^1 cos(p pi s) sin(c pi s) ds = (1-(-1)^{p+c})/(2 pi) * (1/(p+c) + 1/(c-p))
  auto cos_sin = [](int p, int c_) {
    double acc = 0.0;
    const int sum = p + c_;
    if (sum != 0 && (sum % 2) != 0) acc += 2.0 / (sum * kPi);
    const int diff = c_ - p;
    if (diff != 0 && (diff % 2) != 0) acc += 2.0 / (diff * kPi);
    return 0.5 * acc;
  };
  return std::sqrt(2.0) * (cos_sin(std::abs(a - b), c) - cos_sin(a + b, c));
}

double multiplication_hs_norm(const spectral::SpectralField& x,
                              const spectral::DiagonalOperator& op,
                              double gamma, double beta, int cutoff) {
  if (!(gamma >= 0.0 && gamma < 0.25))
    throw std::domain_error("multiplication_hs_norm: gamma must lie in [0, 1/4)");
  if (!(beta < -0.25 - gamma))
    throw std::domain_error("multiplication_hs_norm: beta must be < -1/4 - gamma");
  if (cutoff < 1) throw std::domain_error("multiplication_hs_norm: cutoff must be >= 1");
  if (op.basis.kind != BasisKind::DirichletSine || !(x.basis == op.basis))
    throw std::invalid_argument("multiplication_hs_norm: Dirichlet basis mismatch");
  if (cutoff > op.basis.modes)
    throw std::invalid_argument("multiplication_hs_norm: cutoff exceeds the basis");

  // Midpoint quadrature of triple sine products converges at 1/grid^2; this
  // margin keeps the truncated sum accurate to ~1e-10 absolute at cutoff 64.
  const int nx = static_cast<int>(x.coeffs.size());
  const int grid = 16 * (nx + 2 * cutoff) + 8;
  const int table_modes = std::max(nx, cutoff);
  const auto table = spectral::SineTable::build(grid, table_modes);
  std::vector<double> xg(static_cast<std::size_t>(grid));
  table.synthesize(x.coeffs, xg);

  std::vector<double> prod(static_cast<std::size_t>(grid));
  std::vector<double> coeffs(static_cast<std::size_t>(cutoff));
  double acc = 0.0;
  for (int m = 0; m < cutoff; ++m) {
    for (int g = 0; g < grid; ++g)
      prod[static_cast<std::size_t>(g)] =
          xg[static_cast<std::size_t>(g)] *
          table.values[static_cast<std::size_t>(g) * table_modes + m];
    table.analyze(prod, coeffs);
    double hg = 0.0;  // || x e_m ||^2_{H_gamma}, truncated
    for (int n = 0; n < cutoff; ++n) {
      const double mu_n = op.eigenvalues[static_cast<std::size_t>(n)];
      hg += std::pow(mu_n, 2.0 * gamma) * coeffs[static_cast<std::size_t>(n)] *
            coeffs[static_cast<std::size_t>(n)];
    }
    const double mu_m = op.eigenvalues[static_cast<std::size_t>(m)];
    acc += std::pow(mu_m, 2.0 * beta) * hg;
  }
  return acc;
}

double finite_multiplier_norm(const spectral::DiagonalOperator& op,
                              double gamma, double beta, int n_state,
                              int k_modes) {
  if (op.basis.kind != BasisKind::DirichletSine)
    throw std::invalid_argument("finite_multiplier_norm: Dirichlet basis required");
  if (n_state < 1 || k_modes < 1)
    throw std::invalid_argument("finite_multiplier_norm: empty system");
  if (std::max(n_state, k_modes) > op.basis.modes)
    throw std::invalid_argument("finite_multiplier_norm: operator has too few modes");
  const auto& mu = op.eigenvalues;

  // Product matrices via the exact triple-product integrals: P_k[s, j] is the
  // coefficient of e_{s+1} in e_{j+1} e_{k+1}, restricted to the state modes.
  const std::size_t nn = static_cast<std::size_t>(n_state);
  std::vector<double> p(static_cast<std::size_t>(k_modes) * nn * nn);
  for (int k = 0; k < k_modes; ++k)
    for (int s = 0; s < n_state; ++s)
      for (int j = 0; j < n_state; ++j)
        p[(static_cast<std::size_t>(k) * nn + s) * nn + j] =
            sine_triple_product(j + 1, k + 1, s + 1);

  std::vector<double> wk(static_cast<std::size_t>(k_modes));
  for (int k = 0; k < k_modes; ++k)
    wk[static_cast<std::size_t>(k)] = std::pow(mu[static_cast<std::size_t>(k)], 2.0 * gamma);
  std::vector<double> vs(nn), dg(nn);
  for (int s = 0; s < n_state; ++s) {
    vs[static_cast<std::size_t>(s)] = std::pow(mu[static_cast<std::size_t>(s)], 2.0 * beta);
    dg[static_cast<std::size_t>(s)] = std::pow(mu[static_cast<std::size_t>(s)], gamma);
  }

  // Power iteration on D^-1 A D^-1 with A = sum_k wk P_k^T diag(vs) P_k,
  // the quadratic form in H_gamma-orthonormal coordinates.
  std::vector<double> y(nn), z(nn), ay(nn);
  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (std::size_t i = 0; i < nn; ++i) y[i] = v[i] / dg[i];
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = 0; k < k_modes; ++k) {
      const double* pk = p.data() + static_cast<std::size_t>(k) * nn * nn;
      for (std::size_t s = 0; s < nn; ++s) {
        double acc = 0.0;
        const double* row = pk + s * nn;
        for (std::size_t j = 0; j < nn; ++j) acc += row[j] * y[j];
        z[s] = vs[s] * acc;
      }
      const double w = wk[static_cast<std::size_t>(k)];
      for (std::size_t s = 0; s < nn; ++s) {
        const double* row = pk + s * nn;
        const double zs = w * z[s];
        for (std::size_t j = 0; j < nn; ++j) out[j] += row[j] * zs;
      }
    }
    for (std::size_t i = 0; i < nn; ++i) out[i] /= dg[i];
  };

  std::vector<double> v(nn, 1.0 / std::sqrt(static_cast<double>(n_state)));
  double eig = 0.0;
  for (int it = 0; it < 300; ++it) {
    apply(v, ay);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < nn; ++i) norm2 += ay[i] * ay[i];
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return 0.0;
    for (std::size_t i = 0; i < nn; ++i) v[i] = ay[i] / norm;
    if (it > 16 && std::abs(norm - eig) <= 1e-13 * std::max(1.0, norm)) {
      eig = norm;
      break;
    }
    eig = norm;
  }
  return std::sqrt(eig);
}

}  // namespace spde::coeff
