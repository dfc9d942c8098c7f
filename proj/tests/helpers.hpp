#pragma once
// Shared oracles and utilities for the test suites.  Everything here is
// independent of the library's computation paths: matrix exponentials by
// scaling and squaring, brute-force double sums, quadrature by refinement.

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

// exp(A) for a 2x2 matrix by Taylor series with scaling and squaring.
inline std::array<double, 4> expm2(std::array<double, 4> a) {
  double norm = 0.0;
  for (double v : a) norm = std::max(norm, std::abs(v));
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& v : a) v *= scale;

  auto mul = [](const std::array<double, 4>& x, const std::array<double, 4>& y) {
    return std::array<double, 4>{
        x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  };

  std::array<double, 4> result{1.0, 0.0, 0.0, 1.0};
  std::array<double, 4> term{1.0, 0.0, 0.0, 1.0};
  for (int k = 1; k <= 24; ++k) {
    term = mul(term, a);
    for (auto& v : term) v /= k;
    for (int i = 0; i < 4; ++i) result[static_cast<std::size_t>(i)] += term[static_cast<std::size_t>(i)];
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

// Classical RK4 for the scalar oscillator u'' = -mu^2 u.
inline std::pair<double, double> oscillator_rk4(double mu, double u0, double v0,
                                                double t, int steps) {
  double u = u0, v = v0;
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1u = v, k1v = -mu * mu * u;
    const double k2u = v + 0.5 * h * k1v, k2v = -mu * mu * (u + 0.5 * h * k1u);
    const double k3u = v + 0.5 * h * k2v, k3v = -mu * mu * (u + 0.5 * h * k2u);
    const double k4u = v + h * k3v, k4v = -mu * mu * (u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return {u, v};
}

// Midpoint-rule integral of f over (0,1), refined until stable.
template <typename F>
double integrate01(F&& f, int grid = 1 << 15) {
  double acc = 0.0;
  for (int g = 0; g < grid; ++g) acc += f((g + 0.5) / grid);
  return acc / grid;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed,
                                         double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = scale * normal(rng);
  return v;
}

}  // namespace testing

#ifdef SPDELAB_TEST_NEEDS_BRUTE_SUM
#include "spdelab/spectral.hpp"

namespace testing {

// Brute-force route for the multiplication operator sum:
//   sum_{n,m <= cutoff} |<(-A)^beta (x (-A)^gamma e_n), e_m>|^2
// with every inner product taken by direct quadrature.  The midpoint-rule
// error of the triple sine products is exactly O(1/grid^2), so one Richardson
// step removes it to ~1e-10.
inline std::vector<std::vector<double>> pairwise_quadrature(
    const spde::spectral::SpectralField& x, int cutoff, int grid) {
  std::vector<double> xg(static_cast<std::size_t>(grid));
  for (int g = 0; g < grid; ++g) {
    const double s = (g + 0.5) / grid;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.coeffs.size(); ++i)
      acc += x.coeffs[i] *
             spde::spectral::dirichlet_eigenfunction(static_cast<int>(i), s);
    xg[static_cast<std::size_t>(g)] = acc;
  }
  std::vector<std::vector<double>> ip(
      static_cast<std::size_t>(cutoff),
      std::vector<double>(static_cast<std::size_t>(cutoff), 0.0));
  std::vector<double> e(static_cast<std::size_t>(cutoff));
  for (int g = 0; g < grid; ++g) {
    const double s = (g + 0.5) / grid;
    for (int n = 0; n < cutoff; ++n)
      e[static_cast<std::size_t>(n)] = spde::spectral::dirichlet_eigenfunction(n, s);
    for (int n = 0; n < cutoff; ++n)
      for (int m = 0; m < cutoff; ++m)
        ip[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] +=
            xg[static_cast<std::size_t>(g)] * e[static_cast<std::size_t>(n)] *
            e[static_cast<std::size_t>(m)];
  }
  for (auto& row : ip)
    for (auto& v : row) v /= grid;
  return ip;
}

inline double brute_force_multiplication_sum(
    const spde::spectral::SpectralField& x,
    const spde::spectral::DiagonalOperator& op, double gamma, double beta,
    int cutoff, int grid = 1 << 13) {
  const auto coarse = pairwise_quadrature(x, cutoff, grid);
  const auto fine = pairwise_quadrature(x, cutoff, 2 * grid);
  double total = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    const double wn = std::pow(op.eigenvalues[static_cast<std::size_t>(n)], gamma);
    for (int m = 0; m < cutoff; ++m) {
      const double wm = std::pow(op.eigenvalues[static_cast<std::size_t>(m)], beta);
      const double ip =
          (4.0 * fine[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] -
           coarse[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)]) /
          3.0;
      total += wm * wm * wn * wn * ip * ip;
    }
  }
  return total;
}

}  // namespace testing
#endif  // SPDELAB_TEST_NEEDS_BRUTE_SUM
