#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "spdelab/analytic.hpp"
#include "spdelab/equations.hpp"
#include "spdelab/error_lab.hpp"

using namespace spde;
using analytic::LambdaFamily;
using spectral::kPi;

TEST_CASE("power tails match brute-force partial sums") {
  for (const double s : {1.5, 2.0, 3.0}) {
    for (const long long a : {1LL, 4LL, 100LL}) {
      double brute = 0.0;
      for (long long k = 10'000'000; k >= a; --k)
        brute += std::pow(static_cast<double>(k), -s);
      brute += std::pow(1e7, 1.0 - s) / (s - 1.0);  // integral tail
      CHECK(analytic::power_tail(s, a) == doctest::Approx(brute).epsilon(1e-7));
    }
  }
}

TEST_CASE("gaussian functional of the additive diagonal model") {
  SUBCASE("single unit amplitude") {
    const auto fam = LambdaFamily::explicit_values({1.0});
    CHECK(errlab::gaussian_oracle(fam, 1) ==
          doctest::Approx(std::exp(-0.5 * std::log(2.0))).epsilon(1e-15));
    CHECK(errlab::gaussian_oracle(fam, 1) ==
          doctest::Approx(0.70710678).epsilon(1e-8));
  }

  SUBCASE("zero amplitudes give one") {
    const auto fam = LambdaFamily::explicit_values({0.0, 0.0, 0.0});
    CHECK(errlab::gaussian_oracle(fam, std::nullopt) == 1.0);
    CHECK(errlab::gaussian_oracle(fam, 2) == 1.0);
  }

  SUBCASE("harmonic amplitudes against the product formula") {
    // prod_{k>=1} (1 + k^-2) = sinh(pi)/pi, so E phi(X^inf) = sqrt(pi/sinh(pi));
    // cross-checked by the partial product over 10^6 terms with the remainder
    // bracketed by 0 <= sum_{k>K} log(1+k^-2) <= tail(2, K+1)
    const auto fam = LambdaFamily::power_law_from_zero(1.0);
    const double impl = errlab::gaussian_oracle(fam, std::nullopt);

    double log_partial = 0.0;
    for (long long k = 1'000'000; k >= 1; --k)
      log_partial += std::log1p(1.0 / (static_cast<double>(k) * static_cast<double>(k)));
    const double rem = analytic::power_tail(2.0, 1'000'001);
    CHECK(impl <= std::exp(-0.5 * log_partial) * (1 + 1e-12));
    CHECK(impl >= std::exp(-0.5 * (log_partial + rem)) * (1 - 1e-12));

    const double closed = std::sqrt(kPi / std::sinh(kPi));
    CHECK(impl == doctest::Approx(closed).epsilon(1e-12));
    CHECK(impl == doctest::Approx(0.5215640).epsilon(1e-6));
  }

  SUBCASE("divergent families are rejected") {
    CHECK_THROWS_AS(errlab::gaussian_oracle(LambdaFamily::power_law_from_zero(0.4),
                                            std::nullopt),
                    std::domain_error);
  }
}

TEST_CASE("sharpness ratios of the weak error") {
  const auto fam = LambdaFamily::power_law_from_zero(1.0);
  const double limit = 0.5 * std::sqrt(kPi / std::sinh(kPi));  // 0.2607820

  SUBCASE("the ratio approaches E phi(inf)/2") {
    const long long levels[] = {64, 1024};
    const auto rows = errlab::sharpness_ratios(fam, levels);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].weak_ratio.has_value());
    REQUIRE(rows[1].weak_ratio.has_value());
    CHECK(std::abs(*rows[0].weak_ratio / limit - 1.0) < 0.05);
    CHECK(std::abs(*rows[1].weak_ratio / limit - 1.0) < 0.01);
    CHECK(rows[0].strong_ratio == 1.0);
  }

  SUBCASE("the ratio never exceeds one half") {
    std::vector<long long> levels;
    for (long long n = 1; n <= 64; ++n) levels.push_back(n);
    for (const auto& row : errlab::sharpness_ratios(fam, levels)) {
      REQUIRE(row.weak_ratio.has_value());
      CHECK(*row.weak_ratio <= 0.5);
      CHECK(*row.weak_ratio > 0.0);
    }
  }

  SUBCASE("an empty tail is reported as unavailable") {
    const auto single = LambdaFamily::explicit_values({1.0});
    const long long levels[] = {3};
    const auto rows = errlab::sharpness_ratios(single, levels);
    CHECK(!rows[0].weak_ratio.has_value());
  }

  SUBCASE("termwise log(1+x) <= x bracket") {
    for (long long k = 0; k < 4096; ++k) {
      const double l2 = fam.lambda(k) * fam.lambda(k);
      CHECK(0.5 * std::log1p(l2) <= 0.5 * l2);
    }
  }
}

TEST_CASE("rate regression") {
  SUBCASE("exact power laws") {
    const int levels[] = {4, 8, 16, 32, 64};
    std::vector<double> e1, e08;
    for (int n : levels) {
      e1.push_back(1.0 / n);
      e08.push_back(3.7 * std::pow(n, -0.8));
    }
    const auto f1 = errlab::fit_rate(levels, e1);
    CHECK(f1.slope == doctest::Approx(-1.0).epsilon(1e-12));
    const auto f2 = errlab::fit_rate(levels, e08);
    CHECK(f2.slope == doctest::Approx(-0.8).epsilon(1e-12));
    CHECK(f2.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-10));
  }

  SUBCASE("multiplicative jitter moves the slope by at most 0.05") {
    const int levels[] = {4, 8, 16, 32, 64, 128};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::vector<double> errors;
    for (int n : levels) errors.push_back(std::pow(n, -0.7) * (1.0 + jitter(rng)));
    const auto fit = errlab::fit_rate(levels, errors);
    CHECK(std::abs(fit.slope + 0.7) < 0.05);
  }

  SUBCASE("nonpositive errors are excluded; too few points fail") {
    const int levels[] = {2, 4, 8, 16};
    const double errors[] = {0.5, 0.0, 0.1, 0.05};
    const auto fit = errlab::fit_rate(levels, errors);
    CHECK(fit.excluded == 1);
    CHECK(fit.levels.size() == 3);
    const int small_levels[] = {2, 4, 8};
    const double bad[] = {0.5, -1.0, 0.1};
    CHECK_THROWS_AS(errlab::fit_rate(small_levels, bad), std::invalid_argument);
  }
}

TEST_CASE("bound constants") {
  SUBCASE("everything zero except the semigroup") {
    errlab::NormInputs in;
    in.semigroup = 1.0;
    in.horizon = 1.0;
    const auto c = errlab::evaluate_bound_constants(in);
    CHECK(c.c3 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.c4 == doctest::Approx(0.0).scale(1.0));
    CHECK(c.c1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.c2 == 0.0);
    CHECK(c.c == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("short-horizon limit of c2") {
    errlab::NormInputs in;
    in.initial_l2_v = 2.5;
    in.drift_lip_v = 3.0;
    in.diffusion_lip_v = 1.0;
    in.horizon = 1e-14;
    const auto c = errlab::evaluate_bound_constants(in);
    CHECK(c.c2 == doctest::Approx(2.5).epsilon(1e-6));
  }

  SUBCASE("frozen value of c3") {
    errlab::NormInputs in;
    in.semigroup = 1.0;
    in.drift_c1b = 1.0;
    in.diffusion_c1b = 1.0;
    in.initial_l2_v = 1.0;
    in.horizon = 1.0;
    const auto c = errlab::evaluate_bound_constants(in);
    CHECK(c.c3 == doctest::Approx(std::exp(1.5)).epsilon(1e-15));
    CHECK(c.c3 == doctest::Approx(4.4816891).epsilon(1e-7));
  }

  SUBCASE("negative norms are rejected") {
    errlab::NormInputs in;
    in.drift_c1b = -1.0;
    CHECK_THROWS_AS(errlab::evaluate_bound_constants(in), std::invalid_argument);
  }
}

TEST_CASE("coupled error estimation on the diagonal model") {
  equations::DiagonalParams p;
  p.modes = 64;
  p.lambdas = LambdaFamily::power_law_from_zero(1.0);
  const auto spec = equations::make_diagonal(p);
  const auto phi = errlab::TestFunctional::gaussian_bell();
  noise::NoisePlan plan{64, 8, 1.0, 424242, 0};

  SUBCASE("the reference level couples to itself exactly") {
    const auto report = errlab::estimate_errors(spec, {16, 64}, 64, phi, plan, {});
    CHECK(report.rows[1].strong_sq == 0.0);
    CHECK(report.rows[1].weak == 0.0);
    CHECK(report.rows[1].strong_se == 0.0);
  }

  SUBCASE("two-path smoke run yields finite estimates") {
    const auto report = errlab::estimate_errors(spec, {8}, 2, phi, plan, {});
    CHECK(std::isfinite(report.rows[0].strong_sq));
    CHECK(report.rows[0].strong_se > 0.0);
    CHECK(std::isfinite(report.rows[0].weak));
  }

  SUBCASE("strong error matches the Ito-isometry tail within 3 SE") {
    const auto report =
        errlab::estimate_errors(spec, {4, 8, 16}, 2048, phi, plan, {});
    for (const auto& row : report.rows) {
      const double tail =
          p.lambdas.tail_sq(row.level) - p.lambdas.tail_sq(64);
      CHECK(std::abs(row.strong_sq - tail) < 3.0 * row.strong_se);
    }
    // monotone within the coupled noise: adjacent rows within 2 SE
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
      const auto& a = report.rows[i];
      const auto& b = report.rows[i + 1];
      CHECK(b.strong_sq <=
            a.strong_sq + 2.0 * std::sqrt(a.strong_se * a.strong_se +
                                          b.strong_se * b.strong_se));
    }
  }

  SUBCASE("sampled functional agrees with the gaussian oracle within 4 SE") {
    const auto report = errlab::estimate_errors(spec, {4, 16}, 2048, phi, plan, {});
    for (const auto& row : report.rows) {
      const double oracle = errlab::gaussian_oracle(p.lambdas, row.level);
      CHECK(std::abs(row.phi_mean - oracle) < 4.0 * row.phi_se);
    }
  }

  SUBCASE("bound column dominates the measured error") {
    errlab::NormInputs in;
    in.diffusion_c1b = std::sqrt(p.lambdas.tail_sq(0));
    in.diffusion_c2b = in.diffusion_c1b;
    in.diffusion_lip_v = in.diffusion_c1b;
    in.horizon = 1.0;
    errlab::EstimateOptions opts;
    opts.overall_constant = errlab::evaluate_bound_constants(in).c;
    const auto report =
        errlab::estimate_errors(spec, {4, 8, 16}, 512, phi, plan, opts);
    const double phi_norm = phi.c2b_norm(spec.h_norm);
    for (const auto& row : report.rows) {
      REQUIRE(row.bound.has_value());
      const double measured = row.strong_sq + std::abs(row.weak) / phi_norm;
      const double se = row.strong_se + row.weak_se / phi_norm;
      CHECK(measured <= *row.bound + 3.0 * se);
    }
  }

  SUBCASE("precondition violations") {
    CHECK_THROWS_AS(errlab::estimate_errors(spec, {80}, 16, phi, plan, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(errlab::estimate_errors(spec, {8}, 1, phi, plan, {}),
                    std::invalid_argument);
  }
}

TEST_CASE("the bound constant grows with the horizon") {
  errlab::NormInputs in;
  in.diffusion_c1b = 0.7;
  in.diffusion_c2b = 0.7;
  in.diffusion_lip_v = 1.0;
  in.initial_l2_v = 1.3;
  double prev = 0.0;
  for (const double t : {0.5, 1.0, 2.0}) {
    in.horizon = t;
    const auto c = errlab::evaluate_bound_constants(in);
    CHECK(c.c > prev);
    CHECK(std::isfinite(c.c));
    CHECK(c.c1 > 0.0);
    CHECK(c.c2 > 0.0);
    CHECK(c.c3 > 0.0);
    CHECK(c.c4 > 0.0);
    prev = c.c;
  }
}

TEST_CASE("smooth linear functional drives the coupled estimator") {
  equations::DiagonalParams p;
  p.modes = 32;
  p.lambdas = LambdaFamily::power_law_from_zero(1.0);
  const auto spec = equations::make_diagonal(p);
  std::vector<double> psi(32, 0.0);
  psi[0] = 1.0;
  const auto phi = errlab::TestFunctional::smooth_linear(psi);
  noise::NoisePlan plan{32, 4, 1.0, 63, 0};
  const auto report = errlab::estimate_errors(spec, {4, 32}, 256, phi, plan, {});
  CHECK(report.rows[1].weak == 0.0);  // reference couples to itself
  CHECK(std::isfinite(report.rows[0].weak));
  CHECK(std::abs(report.rows[0].phi_mean) <= 1.0);
}

TEST_CASE("worker count never changes the report") {
  equations::DiagonalParams p;
  p.modes = 32;
  p.lambdas = LambdaFamily::power_law_from_zero(1.0);
  const auto spec = equations::make_diagonal(p);
  const auto phi = errlab::TestFunctional::gaussian_bell();
  noise::NoisePlan plan{32, 4, 1.0, 9, 0};

  errlab::EstimateOptions one, two, four;
  one.workers = 1;
  two.workers = 2;
  four.workers = 4;
  const auto a = errlab::estimate_errors(spec, {4, 8}, 111, phi, plan, one);
  const auto b = errlab::estimate_errors(spec, {4, 8}, 111, phi, plan, two);
  const auto c = errlab::estimate_errors(spec, {4, 8}, 111, phi, plan, four);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].strong_sq == b.rows[i].strong_sq);
    CHECK(a.rows[i].weak == b.rows[i].weak);
    CHECK(a.rows[i].strong_sq == c.rows[i].strong_sq);
    CHECK(a.rows[i].weak_se == c.rows[i].weak_se);
  }
}

TEST_CASE("functional norms") {
  equations::StateNorm norm{equations::StateNorm::Kind::Weighted,
                            {1.0, 1.0, 1.0},
                            0.0,
                            {}};
  const auto bell = errlab::TestFunctional::gaussian_bell();
  CHECK(bell.evaluate(norm, std::vector<double>{0, 0, 0}) == 1.0);
  CHECK(bell.evaluate(norm, std::vector<double>{1, 2, 2}) ==
        doctest::Approx(std::exp(-4.5)).epsilon(1e-15));
  CHECK(bell.c2b_norm(norm) == doctest::Approx(2.0 + std::exp(-0.5)).epsilon(1e-15));

  const auto lin = errlab::TestFunctional::smooth_linear({2.0, 0.0, 0.0});
  CHECK(lin.evaluate(norm, std::vector<double>{0.25, 7, -3}) ==
        doctest::Approx(std::sin(0.5)).epsilon(1e-15));
  CHECK(lin.c2b_norm(norm) == doctest::Approx(2.0 + 4.0).epsilon(1e-15));
  CHECK(std::abs(lin.evaluate(norm, std::vector<double>{100, 3, 4})) <= 1.0);
}
