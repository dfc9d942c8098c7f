#include "spdelab/error_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "spdelab/integrator.hpp"

namespace spde::errlab {

using equations::EquationSpec;
using equations::StateNorm;

TestFunctional TestFunctional::gaussian_bell() { return {}; }

TestFunctional TestFunctional::smooth_linear(std::vector<double> psi) {
  TestFunctional f;
  f.kind = Kind::SmoothLinear;
  f.psi = std::move(psi);
  return f;
}

double TestFunctional::evaluate(const StateNorm& h_norm,
                                std::span<const double> state) const {
  if (kind == Kind::GaussianBell)
    return std::exp(-0.5 * h_norm.norm_sq(state));
  return std::sin(h_norm.inner(state, psi));
}

double TestFunctional::c2b_norm(const StateNorm& h_norm) const {
  if (kind == Kind::GaussianBell) {
    // phi(x) = exp(-||x||^2/2):  phi(0) = 1;
    // ||phi'(x)|| = ||x|| e^{-||x||^2/2} <= e^{-1/2}  (max of t e^{-t^2/2} at t=1);
    // phi''(x) = (x<x,.> - Id) e^{-||x||^2/2} has operator norm
    //   max(|t^2-1|, 1) e^{-t^2/2} <= 1, attained at x = 0.
    return 2.0 + std::exp(-0.5);
  }
  // phi(x) = sin<x,psi>: phi(0)=0, ||phi'|| <= ||psi||, ||phi''|| <= ||psi||^2.
  const double p = h_norm.norm(psi);
  return p + p * p;
}

namespace {

struct PathRecord {
  double phi_ref = 0.0;
  std::vector<double> diff_sq, phi_diff, phi_lvl;
};

struct MeanSe {
  double mean = 0.0, se = 0.0;
};

// Sample mean and standard error of the mean; accumulation in index order.
MeanSe mean_se(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

ErrorReport estimate_errors(const EquationSpec& spec,
                            const std::vector<int>& levels, int paths,
                            const TestFunctional& phi,
                            const noise::NoisePlan& plan_template,
                            const EstimateOptions& opts) {
  if (paths < 2) throw std::invalid_argument("estimate_errors: at least two paths");
  if (levels.empty()) throw std::invalid_argument("estimate_errors: no levels given");
  const int n_ref = plan_template.mode_count_ref;
  for (int n : levels)
    if (n < 1 || n > n_ref)
      throw std::invalid_argument(
          "estimate_errors: level outside [1, n_ref] of the noise plan");
  if (std::abs(plan_template.horizon - spec.horizon) >
      1e-12 * std::max(1.0, std::abs(spec.horizon)))
    throw std::invalid_argument("estimate_errors: plan horizon differs from the equation");

  const std::size_t nl = levels.size();
  std::vector<PathRecord> records(static_cast<std::size_t>(paths));

  int workers = opts.workers > 0
                    ? opts.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, paths);

  auto run_range = [&](int begin, int end) {
    integrate::Engine engine(spec, plan_template.steps);
    std::vector<double> ref, lvl;
    for (int p = begin; p < end; ++p) {
      noise::NoisePlan plan = plan_template;
      plan.path_index = static_cast<std::uint64_t>(p);
      const auto block = noise::generate_increments(plan);
      ref = engine.terminal(block, n_ref);
      PathRecord& rec = records[static_cast<std::size_t>(p)];
      rec.phi_ref = phi.evaluate(spec.h_norm, ref);
      rec.diff_sq.resize(nl);
      rec.phi_diff.resize(nl);
      rec.phi_lvl.resize(nl);
      for (std::size_t li = 0; li < nl; ++li) {
        lvl = engine.terminal(block, levels[li]);
        rec.diff_sq[li] = spec.h_norm.diff_norm_sq(ref, lvl);
        const double phi_n = phi.evaluate(spec.h_norm, lvl);
        rec.phi_lvl[li] = phi_n;
        rec.phi_diff[li] = rec.phi_ref - phi_n;
      }
    }
  };

  if (workers == 1) {
    run_range(0, paths);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(static_cast<long long>(paths) * w / workers);
      const int end = static_cast<int>(static_cast<long long>(paths) * (w + 1) / workers);
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  ErrorReport report;
  report.equation = spec.name;
  report.paths = paths;
  report.steps = plan_template.steps;
  report.n_ref = n_ref;
  report.seed = plan_template.seed;
  report.overall_constant = opts.overall_constant;
  if (spec.additive_tail) report.reference_bias = spec.additive_tail(n_ref);

  std::vector<double> scratch(static_cast<std::size_t>(paths));
  for (int p = 0; p < paths; ++p) scratch[static_cast<std::size_t>(p)] = records[static_cast<std::size_t>(p)].phi_ref;
  const auto ref_stats = mean_se(scratch);
  report.phi_ref_mean = ref_stats.mean;
  report.phi_ref_se = ref_stats.se;

  const double c = opts.overall_constant.value_or(1.0);
  for (std::size_t li = 0; li < nl; ++li) {
    LevelResult row;
    row.level = levels[li];
    for (int p = 0; p < paths; ++p) scratch[static_cast<std::size_t>(p)] = records[static_cast<std::size_t>(p)].diff_sq[li];
    const auto s = mean_se(scratch);
    row.strong_sq = s.mean;
    row.strong_se = s.se;
    for (int p = 0; p < paths; ++p) scratch[static_cast<std::size_t>(p)] = records[static_cast<std::size_t>(p)].phi_diff[li];
    const auto w = mean_se(scratch);
    row.weak = w.mean;
    row.weak_se = w.se;
    for (int p = 0; p < paths; ++p) scratch[static_cast<std::size_t>(p)] = records[static_cast<std::size_t>(p)].phi_lvl[li];
    const auto pl = mean_se(scratch);
    row.phi_mean = pl.mean;
    row.phi_se = pl.se;
    if (spec.tail_bound) row.tail_ratio = spec.tail_bound(row.level);
    if (row.tail_ratio)
      row.bound = c * *row.tail_ratio + report.reference_bias.value_or(0.0);
    report.rows.push_back(std::move(row));
  }

  std::vector<double> errs(nl);
  for (std::size_t li = 0; li < nl; ++li) errs[li] = report.rows[li].strong_sq;
  try {
    report.strong_fit = fit_rate(levels, errs);
  } catch (const std::exception&) {
    report.strong_fit = std::nullopt;
  }
  return report;
}

double gaussian_oracle(const analytic::LambdaFamily& lambdas,
                       std::optional<long long> level) {
  if (!lambdas.square_summable())
    throw std::domain_error("gaussian_oracle: amplitude family is not square-summable");
  using Kind = analytic::LambdaFamily::Kind;
  if (level) {
    if (*level < 0) throw std::domain_error("gaussian_oracle: negative level");
    double acc = 0.0;
    for (long long k = 0; k < *level; ++k) {
      const double l = lambdas.lambda(k);
      acc += std::log1p(l * l);
    }
    return std::exp(-0.5 * acc);
  }
  if (lambdas.kind == Kind::Explicit) {
    double acc = 0.0;
    for (double v : lambdas.values) acc += std::log1p(v * v);
    return std::exp(-0.5 * acc);
  }
  // Power-law families: direct sum to K, then the alternating series of the
  // analytic power tails; lambda_K^2 <= K^-1 keeps the remainder below 1e-12.
  const long long cutoff = 1'000'000;
  double acc = 0.0;
  for (long long k = 0; k < cutoff; ++k) {
    const double l = lambdas.lambda(k);
    acc += std::log1p(l * l);
  }
  const double q = lambdas.q;
  const double s2 = lambdas.scale * lambdas.scale;
  const long long start =
      lambdas.kind == Kind::PowerLawFromZero ? cutoff + 1 : cutoff;
  double sign = 1.0;
  for (int m = 1; m <= 3; ++m) {
    const double tail = std::pow(s2, m) * analytic::power_tail(2.0 * q * m, start);
    acc += sign * tail / m;
    sign = -sign;
  }
  return std::exp(-0.5 * acc);
}

std::vector<SharpnessRow> sharpness_ratios(const analytic::LambdaFamily& lambdas,
                                           std::span<const long long> levels) {
  const double phi_inf = gaussian_oracle(lambdas, std::nullopt);
  std::vector<SharpnessRow> rows;
  rows.reserve(levels.size());
  for (long long n : levels) {
    SharpnessRow row;
    row.level = n;
    row.phi_level = gaussian_oracle(lambdas, n);
    row.phi_infinity = phi_inf;
    row.tail = lambdas.tail_sq(n);
    if (row.tail > 0.0)
      row.weak_ratio = (row.phi_level - row.phi_infinity) / row.tail;
    rows.push_back(row);
  }
  return rows;
}

RateFit fit_rate(std::span<const int> levels, std::span<const double> errors) {
  if (levels.size() != errors.size())
    throw std::invalid_argument("fit_rate: levels and errors differ in length");
  RateFit fit;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (errors[i] > 0.0) {
      fit.levels.push_back(levels[i]);
      fit.errors.push_back(errors[i]);
    } else {
      ++fit.excluded;
    }
  }
  if (fit.levels.size() < 3)
    throw std::invalid_argument("fit_rate: need at least three positive errors");
  const std::size_t m = fit.levels.size();
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    lx[i] = std::log(static_cast<double>(fit.levels[i]));
    ly[i] = std::log(fit.errors[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    res += r * r;
  }
  fit.residual = std::sqrt(res / static_cast<double>(m));
  if (!std::isfinite(fit.slope))
    throw std::invalid_argument("fit_rate: degenerate fit");
  return fit;
}

BoundConstants evaluate_bound_constants(const NormInputs& in) {
  for (double v : {in.semigroup, in.drift_c1b, in.drift_c2b, in.diffusion_c1b,
                   in.diffusion_c2b, in.drift_lip_v, in.diffusion_lip_v,
                   in.initial_l2_v})
    if (v < 0.0)
      throw std::invalid_argument("evaluate_bound_constants: norms must be nonnegative");
  if (in.horizon <= 0.0)
    throw std::invalid_argument("evaluate_bound_constants: horizon must be positive");
  const double t = in.horizon;
  const double s = in.semigroup;
  const double sv = in.semigroup_v < 0.0 ? s : in.semigroup_v;
  const double xi_v = in.initial_l2_v;
  const double xi_h = in.initial_l2_h < 0.0 ? xi_v : in.initial_l2_h;
  const double f1 = in.drift_c1b, f2 = in.drift_c2b;
  const double b1 = in.diffusion_c1b, b2 = in.diffusion_c2b;
  const double flv = in.drift_lip_v, blv = in.diffusion_lip_v;

  BoundConstants out;
  out.c3 = s * std::exp(t * s * s * (f1 + 0.5 * b1 * b1));
  out.c4 = std::exp(t * (3.5 * f2 + 4.0 * b1 * b1) * std::pow(s, 4.0)) *
           std::sqrt(t) * std::pow(s, 3.0) * std::sqrt(f2 + 2.0 * b2 * b2);
  out.c1 = out.c4 + s * s * std::exp(t * (2.0 * f1 + b1 * b1) * s * s);
  out.c2 = sv * (xi_v + std::sqrt(2.0 * t) * flv + std::sqrt(2.0 * t) * blv) *
           std::exp(t * sv * sv * (0.5 + flv * flv + blv * blv));
  // a-priori mild-solution bound on H, with the C^1_b norms standing in for
  // the H-Lipschitz norms they dominate
  out.apriori = s * (xi_h + std::sqrt(2.0 * t) * f1 + std::sqrt(2.0 * t) * b1) *
                std::exp(t * s * s * (0.5 + f1 * f1 + b1 * b1));
  out.c = 0.5 * t * out.c1 * (1.0 + out.c2 * out.c2);
  return out;
}

}  // namespace spde::errlab
