#include "spdelab/equations.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace spde::equations {

using spectral::kPi;

namespace {

void config_check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::vector<double> suffix_sums(std::vector<double> sq) {
  // sq[k] -> sum_{j >= k} sq[j], with one trailing zero
  std::vector<double> tail(sq.size() + 1, 0.0);
  for (int k = static_cast<int>(sq.size()) - 1; k >= 0; --k)
    tail[static_cast<std::size_t>(k)] =
        tail[static_cast<std::size_t>(k) + 1] + sq[static_cast<std::size_t>(k)];
  return tail;
}

}  // namespace

double StateNorm::norm_sq(std::span<const double> x) const {
  if (kind == Kind::Weighted) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += weights[i] * x[i] * x[i];
    return acc;
  }
  double acc = x[0] * x[0];
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    const double d = (x[j + 1] - x[j]) / dtau;
    acc += d * d * curve_w[j] * dtau;
  }
  return acc;
}

double StateNorm::norm(std::span<const double> x) const {
  return std::sqrt(norm_sq(x));
}

double StateNorm::diff_norm_sq(std::span<const double> a,
                               std::span<const double> b) const {
  if (kind == Kind::Weighted) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      acc += weights[i] * d * d;
    }
    return acc;
  }
  double d0 = a[0] - b[0];
  double acc = d0 * d0;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    const double d = ((a[j + 1] - b[j + 1]) - (a[j] - b[j])) / dtau;
    acc += d * d * curve_w[j] * dtau;
  }
  return acc;
}

double StateNorm::inner(std::span<const double> a,
                        std::span<const double> b) const {
  if (kind == Kind::Weighted) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += weights[i] * a[i] * b[i];
    return acc;
  }
  double acc = a[0] * b[0];
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    const double da = (a[j + 1] - a[j]) / dtau;
    const double db = (b[j + 1] - b[j]) / dtau;
    acc += da * db * curve_w[j] * dtau;
  }
  return acc;
}

std::function<void(std::span<double>)> Propagator::prepare(double h) const {
  return [this, h](std::span<double> state) { apply(state, h); };
}

void WavePropagator::apply(std::span<double> state, double t) const {
  const int n = static_cast<int>(mu_.size());
  for (int i = 0; i < n; ++i) {
    const double mu = mu_[static_cast<std::size_t>(i)];
    const double c = std::cos(mu * t), s = std::sin(mu * t);
    const double p = state[static_cast<std::size_t>(i)];
    const double v = state[static_cast<std::size_t>(n + i)];
    state[static_cast<std::size_t>(i)] = c * p + (s / mu) * v;
    state[static_cast<std::size_t>(n + i)] = -mu * s * p + c * v;
  }
}

std::function<void(std::span<double>)> WavePropagator::prepare(double h) const {
  const int n = static_cast<int>(mu_.size());
  std::vector<double> c(mu_.size()), so(mu_.size()), ms(mu_.size());
  for (int i = 0; i < n; ++i) {
    const double mu = mu_[static_cast<std::size_t>(i)];
    c[static_cast<std::size_t>(i)] = std::cos(mu * h);
    so[static_cast<std::size_t>(i)] = std::sin(mu * h) / mu;
    ms[static_cast<std::size_t>(i)] = -mu * std::sin(mu * h);
  }
  return [n, c = std::move(c), so = std::move(so),
          ms = std::move(ms)](std::span<double> state) {
    for (int i = 0; i < n; ++i) {
      const double p = state[static_cast<std::size_t>(i)];
      const double v = state[static_cast<std::size_t>(n + i)];
      state[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] * p +
                                           so[static_cast<std::size_t>(i)] * v;
      state[static_cast<std::size_t>(n + i)] =
          ms[static_cast<std::size_t>(i)] * p + c[static_cast<std::size_t>(i)] * v;
    }
  };
}

void PhasePropagator::apply(std::span<double> state, double t) const {
  const int n = static_cast<int>(symbols_.size());
  for (int i = 0; i < n; ++i) {
    const auto [c, s] = spectral::phase_propagator(symbols_[static_cast<std::size_t>(i)], t);
    const double a = state[static_cast<std::size_t>(2 * i)];
    const double b = state[static_cast<std::size_t>(2 * i + 1)];
    state[static_cast<std::size_t>(2 * i)] = a * c - b * s;
    state[static_cast<std::size_t>(2 * i + 1)] = a * s + b * c;
  }
}

std::function<void(std::span<double>)> PhasePropagator::prepare(double h) const {
  const int n = static_cast<int>(symbols_.size());
  std::vector<double> c(symbols_.size()), s(symbols_.size());
  for (int i = 0; i < n; ++i) {
    c[static_cast<std::size_t>(i)] = std::cos(h * symbols_[static_cast<std::size_t>(i)]);
    s[static_cast<std::size_t>(i)] = std::sin(h * symbols_[static_cast<std::size_t>(i)]);
  }
  return [n, c = std::move(c), s = std::move(s)](std::span<double> state) {
    for (int i = 0; i < n; ++i) {
      const double a = state[static_cast<std::size_t>(2 * i)];
      const double b = state[static_cast<std::size_t>(2 * i + 1)];
      state[static_cast<std::size_t>(2 * i)] =
          a * c[static_cast<std::size_t>(i)] - b * s[static_cast<std::size_t>(i)];
      state[static_cast<std::size_t>(2 * i + 1)] =
          a * s[static_cast<std::size_t>(i)] + b * c[static_cast<std::size_t>(i)];
    }
  };
}

void DiagonalPropagator::apply(std::span<double> state, double t) const {
  if (rates_.empty()) return;
  for (std::size_t i = 0; i < state.size(); ++i)
    state[i] *= std::exp(rates_[i] * t);
}

std::function<void(std::span<double>)> DiagonalPropagator::prepare(double h) const {
  if (rates_.empty()) return [](std::span<double>) {};
  std::vector<double> f(rates_.size());
  for (std::size_t i = 0; i < rates_.size(); ++i) f[i] = std::exp(rates_[i] * h);
  return [f = std::move(f)](std::span<double> state) {
    for (std::size_t i = 0; i < state.size(); ++i) state[i] *= f[i];
  };
}

void ShiftPropagator::apply(std::span<double> state, double t) const {
  const double ratio = t / dtau_;
  const long long m = std::llround(ratio);
  if (std::abs(ratio - static_cast<double>(m)) > 1e-9)
    throw std::invalid_argument("shift propagator: time is not grid-aligned");
  if (m == 0) return;
  if (m < 0) throw std::invalid_argument("shift propagator: negative time");
  const long long last = static_cast<long long>(state.size()) - 1;
  for (long long j = 0; j <= last; ++j)
    state[static_cast<std::size_t>(j)] =
        state[static_cast<std::size_t>(std::min(j + m, last))];
}

//------------------------------------------------------------------------------
// wave
//------------------------------------------------------------------------------

namespace {

// || 1 ||_{H_r}^2 for the full (untruncated) constant function over the scaled
// Dirichlet Laplacian: sum over odd k of (theta pi^2 k^2)^(2r) * 8/(k^2 pi^2).
double one_norm_sq_hr(double theta, double r) {
  if (r == 0.0) return 1.0;
  const double s = 2.0 - 4.0 * r;  // convergent for r < 1/4
  const double zeta_s = analytic::power_tail(s, 1);
  const double odd_sum = zeta_s * (1.0 - std::pow(2.0, -s));
  return 8.0 / (kPi * kPi) * std::pow(theta * kPi * kPi, 2.0 * r) * odd_sum;
}

}  // namespace

EquationSpec make_wave(const WaveParams& p) {
  config_check(p.theta > 0.0, "make_wave: theta must be positive");
  config_check(p.epsilon > 0.0 && p.epsilon < 1.0,
               "make_wave: epsilon must lie in (0, 1)");
  const double rho = (1.0 - p.epsilon) / 4.0;
  if (p.eta == 0.0) {
    config_check(p.drift.kind != coeff::DriftCoefficient::Kind::Nemytskii,
                 "make_wave: eta = 0 requires an affine (or zero) drift");
  } else {
    config_check(p.eta > 0.0, "make_wave: eta must be nonnegative");
    config_check(p.eta < rho, "make_wave: eta must be below rho = (1-epsilon)/4");
    config_check(p.eta < 0.25 - rho, "make_wave: eta must be below 1/4 - rho");
    config_check(p.drift.kind != coeff::DriftCoefficient::Kind::Affine,
                 "make_wave: eta > 0 requires a pointwise (Nemytskii) drift");
  }
  config_check(p.sigma_exponent > 0.25,
               "make_wave: sigma_exponent must exceed 1/4");
  config_check(p.modes >= 1, "make_wave: at least one mode");
  const int n = p.modes;
  config_check(p.initial.empty() || static_cast<int>(p.initial.size()) == 2 * n,
               "make_wave: initial state must have position and velocity parts");
  config_check(p.b0_field.empty() || static_cast<int>(p.b0_field.size()) == n,
               "make_wave: b0 field size must match the mode count");

  EquationSpec spec;
  spec.name = "wave";
  spec.layout = Layout::PositionVelocity;
  spec.state_size = 2 * n;
  spec.scalar_basis = spectral::dirichlet_basis(n);
  spec.horizon = p.horizon;
  spec.collocation_grid = p.collocation_grid > 0 ? p.collocation_grid : 4 * n;

  std::vector<double> mu2(static_cast<std::size_t>(n));
  std::vector<double> mu(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    mu2[static_cast<std::size_t>(i)] = p.theta * k * k * kPi * kPi;
    mu[static_cast<std::size_t>(i)] = std::sqrt(mu2[static_cast<std::size_t>(i)]);
  }
  spec.propagator = std::make_shared<WavePropagator>(mu);

  auto pair_weights = [&](double r) {
    std::vector<double> w(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i)] = std::pow(mu2[static_cast<std::size_t>(i)], 2.0 * r);
      w[static_cast<std::size_t>(n + i)] =
          std::pow(mu2[static_cast<std::size_t>(i)], 2.0 * r - 1.0);
    }
    return w;
  };
  spec.h_norm = {StateNorm::Kind::Weighted, pair_weights(p.eta), 0.0, {}};
  spec.v_norm = {StateNorm::Kind::Weighted, pair_weights(rho), 0.0, {}};

  spec.drift = p.drift;
  spec.drift_source = {2 * n, 0, n};      // position feeds the drift
  spec.drift_target = {2 * n, n, n};      // drift lands in the velocity

  const coeff::ComponentRef velocity{2 * n, n, n};
  const coeff::ComponentRef position{2 * n, 0, n};
  const double theta = p.theta;
  const double eta = p.eta;

  if (p.b1 == 0.0) {
    if (p.b0_field.empty()) {
      // Constant multiplier: column k feeds sine mode k diagonally.
      const double a = p.b0_const;
      auto amp = [a](long long) { return a; };
      auto tail = [a, theta, eta](long long nn) {
        const double s = 2.0 - 4.0 * eta;
        return a * a * std::pow(theta * kPi * kPi, 2.0 * eta - 1.0) *
               analytic::power_tail(s, std::max<long long>(nn, 1));
      };
      spec.diffusion = std::make_shared<coeff::DiffusionCoefficient>(
          coeff::constant_diagonal(velocity, amp, -1, tail));
    } else {
      // General additive b0: precompute the image rows P_N(b0 * e_k) once.
      const int grid = spec.collocation_grid;
      auto table = spectral::SineTable::build(grid, n);
      std::vector<double> b0g(static_cast<std::size_t>(grid));
      table.synthesize(p.b0_field, b0g);
      std::vector<std::vector<double>> rows;
      rows.reserve(static_cast<std::size_t>(n + 1));
      std::vector<double> prod(static_cast<std::size_t>(grid));
      std::vector<double> row(static_cast<std::size_t>(n));
      rows.emplace_back(static_cast<std::size_t>(n), 0.0);  // dead column 0
      for (int k = 0; k < n; ++k) {
        for (int g = 0; g < grid; ++g)
          prod[static_cast<std::size_t>(g)] =
              b0g[static_cast<std::size_t>(g)] *
              table.values[static_cast<std::size_t>(g) * n + k];
        table.analyze(prod, row);
        rows.push_back(row);
      }
      // H-norm tail of the finite row system (exact for what is simulated).
      std::vector<double> row_sq(rows.size());
      for (std::size_t k = 0; k < rows.size(); ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          acc += std::pow(mu2[static_cast<std::size_t>(i)], 2.0 * eta - 1.0) *
                 rows[k][static_cast<std::size_t>(i)] * rows[k][static_cast<std::size_t>(i)];
        row_sq[k] = acc;
      }
      auto tails = suffix_sums(std::move(row_sq));
      auto tail = [tails](long long nn) {
        const long long idx = std::clamp<long long>(nn, 0, static_cast<long long>(tails.size()) - 1);
        return tails[static_cast<std::size_t>(idx)];
      };
      spec.diffusion = std::make_shared<coeff::DiffusionCoefficient>(
          coeff::constant_rows(velocity, std::move(rows), tail));
    }
  } else {
    std::vector<double> b0_coeffs;
    double lip = p.lip_v;
    if (p.b0_field.empty()) {
      // projection of b0_const * 1 onto the sine modes
      b0_coeffs.assign(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; i += 2)
        b0_coeffs[static_cast<std::size_t>(i)] =
            p.b0_const * 2.0 * std::sqrt(2.0) / ((i + 1) * kPi);
      if (lip <= 0.0)
        lip = std::abs(p.b0_const) * std::sqrt(one_norm_sq_hr(theta, rho)) +
              std::abs(p.b1);
    } else {
      b0_coeffs = p.b0_field;
      if (lip <= 0.0) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          acc += std::pow(mu2[static_cast<std::size_t>(i)], 2.0 * rho) *
                 b0_coeffs[static_cast<std::size_t>(i)] * b0_coeffs[static_cast<std::size_t>(i)];
        lip = std::sqrt(acc) + std::abs(p.b1);
      }
    }
    double mult = p.mult_norm;
    if (mult <= 0.0) {
      // Exact multiplier norm of the simulated finite system, scaled so that
      // the tail bound reads (mult * lip)^2 n^(eps-1).
      const auto op = spectral::dirichlet_laplacian(n, theta);
      mult = std::pow(theta * kPi * kPi, -rho) *
             coeff::finite_multiplier_norm(op, rho, -0.5, n, n);
    }
    auto diff = coeff::pointwise_affine(velocity, spec.scalar_basis, b0_coeffs,
                                        p.b1, {}, position, spec.collocation_grid,
                                        -1, lip, mult, 1.0 - p.epsilon);
    if (p.b0_field.empty())
      std::fill(diff.b0_grid.begin(), diff.b0_grid.end(), p.b0_const);
    spec.diffusion = std::make_shared<coeff::DiffusionCoefficient>(std::move(diff));
  }

  spec.initial = p.initial.empty()
                     ? std::vector<double>(static_cast<std::size_t>(2 * n), 0.0)
                     : p.initial;

  auto diffusion = spec.diffusion;
  spec.tail_bound = [diffusion](long long nn) {
    return diffusion->internal_tail_bound(nn);
  };
  if (diffusion->h_tail) spec.additive_tail = diffusion->h_tail;
  return spec;
}

//------------------------------------------------------------------------------
// diagonal lab model
//------------------------------------------------------------------------------

EquationSpec make_diagonal(const DiagonalParams& p) {
  config_check(p.modes >= 1, "make_diagonal: at least one mode");
  config_check(p.lambdas.square_summable(),
               "make_diagonal: amplitude family is not square-summable");
  config_check(p.initial.empty() ||
                   static_cast<int>(p.initial.size()) == p.modes,
               "make_diagonal: initial state size mismatch");
  EquationSpec spec;
  spec.name = "diagonal";
  spec.layout = Layout::ScalarModes;
  spec.state_size = p.modes;
  spec.scalar_basis = spectral::dirichlet_basis(p.modes);
  spec.horizon = p.horizon;
  spec.propagator = std::make_shared<DiagonalPropagator>(std::vector<double>{});
  spec.h_norm = {StateNorm::Kind::Weighted,
                 std::vector<double>(static_cast<std::size_t>(p.modes), 1.0),
                 0.0,
                 {}};
  spec.v_norm = spec.h_norm;
  spec.drift = p.drift;
  spec.drift_source = {p.modes, 0, p.modes};
  spec.drift_target = {p.modes, 0, p.modes};
  const auto lam = p.lambdas;
  auto amp = [lam](long long k) { return lam.lambda(k); };
  auto tail = [lam](long long nn) { return lam.tail_sq(nn); };
  spec.diffusion = std::make_shared<coeff::DiffusionCoefficient>(
      coeff::constant_diagonal({p.modes, 0, p.modes}, amp, 0, tail));
  spec.initial = p.initial.empty()
                     ? std::vector<double>(static_cast<std::size_t>(p.modes), 0.0)
                     : p.initial;
  auto diffusion = spec.diffusion;
  spec.tail_bound = [diffusion](long long nn) {
    return diffusion->internal_tail_bound(nn);
  };
  spec.additive_tail = diffusion->h_tail;
  return spec;
}

//------------------------------------------------------------------------------
// hjmm
//------------------------------------------------------------------------------

std::vector<double> hjmm_trace_drift(const std::vector<std::vector<double>>& rows,
                                     double dtau, int level) {
  std::size_t size = 0;
  for (const auto& r : rows) size = std::max(size, r.size());
  std::vector<double> drift(size, 0.0);
  const int used = std::min<int>(level, static_cast<int>(rows.size()));
  std::vector<double> cum(size);
  for (int k = 0; k < used; ++k) {
    const auto& row = rows[static_cast<std::size_t>(k)];
    cum[0] = 0.0;
    for (std::size_t j = 0; j + 1 < row.size(); ++j)
      cum[j + 1] = cum[j] + 0.5 * dtau * (row[j] + row[j + 1]);
    for (std::size_t j = 0; j < row.size(); ++j) drift[j] += row[j] * cum[j];
  }
  return drift;
}

EquationSpec make_hjmm(const HjmmParams& p) {
  config_check(p.grid_steps >= 1, "make_hjmm: maturity grid needs at least one cell");
  config_check(p.tau_max > 0.0, "make_hjmm: tau_max must be positive");
  config_check(p.alpha > 0.0, "make_hjmm: alpha must be positive");
  const int j = p.grid_steps;
  const double dtau = p.tau_max / j;
  const double steps = p.horizon / dtau;
  config_check(std::abs(steps - std::llround(steps)) < 1e-9,
               "make_hjmm: the maturity spacing must divide the horizon");
  for (const auto& r : p.rows)
    config_check(static_cast<int>(r.size()) == j + 1,
                 "make_hjmm: noise rows must live on the maturity grid");
  config_check(p.initial.empty() || static_cast<int>(p.initial.size()) == j + 1,
               "make_hjmm: initial curve size mismatch");

  EquationSpec spec;
  spec.name = "hjmm";
  spec.layout = Layout::MaturityCurve;
  spec.state_size = j + 1;
  spec.horizon = p.horizon;
  spec.hjmm_rows = p.rows;
  spec.hjmm_dtau = dtau;
  spec.propagator = std::make_shared<ShiftPropagator>(dtau);

  StateNorm norm;
  norm.kind = StateNorm::Kind::Curve;
  norm.dtau = dtau;
  norm.curve_w.resize(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i)
    norm.curve_w[static_cast<std::size_t>(i)] =
        std::exp(p.alpha * (dtau * i + 0.5 * dtau));
  spec.h_norm = norm;
  spec.v_norm = norm;

  std::vector<double> row_sq(p.rows.size());
  for (std::size_t k = 0; k < p.rows.size(); ++k)
    row_sq[k] = norm.norm_sq(p.rows[k]);
  auto tails = suffix_sums(std::move(row_sq));
  auto tail = [tails](long long nn) {
    const long long idx =
        std::clamp<long long>(nn, 0, static_cast<long long>(tails.size()) - 1);
    return tails[static_cast<std::size_t>(idx)];
  };
  spec.diffusion = std::make_shared<coeff::DiffusionCoefficient>(
      coeff::constant_rows({j + 1, 0, j + 1}, p.rows, tail));
  spec.initial = p.initial.empty()
                     ? std::vector<double>(static_cast<std::size_t>(j) + 1, 0.0)
                     : p.initial;
  auto diffusion = spec.diffusion;
  spec.tail_bound = [diffusion](long long nn) {
    return diffusion->internal_tail_bound(nn);
  };
  spec.additive_tail = diffusion->h_tail;
  return spec;
}

HjmmNormBounds hjmm_norm_bounds(const EquationSpec& spec) {
  config_check(spec.layout == Layout::MaturityCurve,
               "hjmm_norm_bounds: not a curve equation");
  const auto& norm = spec.h_norm;
  const double dtau = norm.dtau;
  // x_j^2 <= 2 x_0^2 + 2 (sum |dx|)^2 <= 2 (1 + sum dtau/w_i) ||x||^2
  double inv_w = 0.0;
  for (double w : norm.curve_w) inv_w += dtau / w;
  const double c_inf_sq = 2.0 * (1.0 + inv_w);
  // ||S_t x||^2 = x(t)^2 + shifted difference sum <= (c_inf^2 + 1) ||x||^2
  // (the weights only decay under the shift).
  const double shift = std::sqrt(c_inf_sq + 1.0);
  // m(x,y) = x * cumtrapz(y): |cumtrapz(y)| <= tau_max c_inf ||y||, slope of
  // cumtrapz bounded by c_inf ||y||; expanding the difference quotient of the
  // product and applying (a+b)^2 <= 2a^2+2b^2 gives
  // ||m(x,y)||^2 <= (2 c_inf^4 sum w dtau + 2 tau_max^2 c_inf^2) ||x||^2 ||y||^2.
  double w_sum = 0.0;
  for (double w : norm.curve_w) w_sum += w * dtau;
  const double tau_max = dtau * static_cast<double>(norm.curve_w.size());
  const double m_sq = 2.0 * c_inf_sq * c_inf_sq * w_sum +
                      2.0 * tau_max * tau_max * c_inf_sq;
  return {std::sqrt(c_inf_sq), shift, std::sqrt(m_sq)};
}

//------------------------------------------------------------------------------
// schrodinger / airy
//------------------------------------------------------------------------------

namespace {

EquationSpec make_torus(const TorusParams& p, bool cubic_symbol,
                        const std::string& name) {
  config_check(p.smoothness > 0.5,
               std::string("make_") + name + ": the V-norm exponent must exceed 1/2");
  config_check(p.modes >= 1, std::string("make_") + name + ": at least one mode");
  config_check(p.half_length > 0.0,
               std::string("make_") + name + ": half_length must be positive");
  const int n = p.modes;
  config_check(p.initial.empty() || static_cast<int>(p.initial.size()) == 2 * n,
               std::string("make_") + name + ": initial state size mismatch");
  config_check(p.b0.empty() || static_cast<int>(p.b0.size()) == 2 * n,
               std::string("make_") + name + ": b0 size mismatch");

  EquationSpec spec;
  spec.name = name;
  spec.layout = Layout::ComplexModes;
  spec.state_size = 2 * n;
  spec.scalar_basis = spectral::torus_basis(n, p.half_length);
  spec.horizon = p.horizon;
  spec.collocation_grid = p.collocation_grid > 0 ? p.collocation_grid : 4 * n;
  spec.rotate_minus_i = true;

  std::vector<double> symbols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double xi = spec.scalar_basis.frequency(i);
    symbols[static_cast<std::size_t>(i)] = cubic_symbol ? xi * xi * xi : xi * xi;
  }
  spec.propagator = std::make_shared<PhasePropagator>(symbols);

  std::vector<double> hw(static_cast<std::size_t>(2 * n), 1.0);
  std::vector<double> vw(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    const double xi = spec.scalar_basis.frequency(i);
    const double w = std::pow(1.0 + xi * xi, p.smoothness);
    vw[static_cast<std::size_t>(2 * i)] = w;
    vw[static_cast<std::size_t>(2 * i + 1)] = w;
  }
  spec.h_norm = {StateNorm::Kind::Weighted, std::move(hw), 0.0, {}};
  spec.v_norm = {StateNorm::Kind::Weighted, std::move(vw), 0.0, {}};

  spec.drift = p.drift;
  spec.drift_source = {2 * n, 0, 2 * n};
  spec.drift_target = {2 * n, 0, 2 * n};

  std::vector<double> sigma = p.sigma;
  if (sigma.empty()) {
    sigma.resize(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) {
      const int freq = spectral::Basis::frequency_index(k / 2);
      sigma[static_cast<std::size_t>(k)] =
          std::pow(1.0 + std::abs(freq), -p.sigma_decay);
    }
  } else {
    config_check(static_cast<int>(sigma.size()) == 2 * n,
                 std::string("make_") + name + ": sigma size mismatch");
  }

  std::vector<double> b0 = p.b0;
  if (b0.empty()) {
    b0.assign(static_cast<std::size_t>(2 * n), 0.0);
    // constant b0: the constant function is the frequency-0 basis element
    b0[0] = p.b0_const * std::sqrt(2.0 * p.half_length);
  }

  const coeff::ComponentRef whole{2 * n, 0, 2 * n};
  auto diff = coeff::pointwise_affine(whole, spec.scalar_basis, b0, p.b1, sigma,
                                      whole, spec.collocation_grid, 0,
                                      /*lip_v=*/0.0, /*mult_norm=*/0.0,
                                      /*rate_exponent=*/0.0);
  if (p.b1 == 0.0) {
    // Additive: ||b0 (sigma_k e_k)||^2 = sigma_k^2 ||b0||^2 / (2L) because the
    // torus modes have constant modulus 1/sqrt(2L).
    double b0_sq = 0.0;  // ||b0||_{L^2}^2 by Parseval
    for (double c : b0) b0_sq += c * c;
    std::vector<double> col_sq(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k)
      col_sq[k] = sigma[k] * sigma[k] * b0_sq / (2.0 * p.half_length);
    auto tails = suffix_sums(std::move(col_sq));
    diff.h_tail = [tails](long long nn) {
      const long long idx =
          std::clamp<long long>(nn, 0, static_cast<long long>(tails.size()) - 1);
      return tails[static_cast<std::size_t>(idx)];
    };
  }
  spec.diffusion = std::make_shared<coeff::DiffusionCoefficient>(std::move(diff));
  spec.initial = p.initial.empty()
                     ? std::vector<double>(static_cast<std::size_t>(2 * n), 0.0)
                     : p.initial;
  auto diffusion = spec.diffusion;
  spec.tail_bound = [diffusion](long long nn) {
    return diffusion->internal_tail_bound(nn);
  };
  if (diffusion->h_tail) spec.additive_tail = diffusion->h_tail;
  return spec;
}

}  // namespace

EquationSpec make_schrodinger(const TorusParams& p) {
  return make_torus(p, /*cubic_symbol=*/false, "schrodinger");
}

EquationSpec make_airy(const TorusParams& p) {
  return make_torus(p, /*cubic_symbol=*/true, "airy");
}

}  // namespace spde::equations
