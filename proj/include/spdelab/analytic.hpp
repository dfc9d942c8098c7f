#pragma once
// Analytic series helpers: Euler-Maclaurin tails of power sums and the
// built-in eigenvalue families for diagonal noise coefficients.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace spde::analytic {

// sum_{k >= a} k^{-s} for s > 1, a >= 1, to near machine precision.
// Direct partial sum up to a + 64, then the Euler-Maclaurin remainder.
double power_tail(double s, long long a);

// Diagonal noise amplitude families |B e_k| indexed from k = 0.
//   PowerLawFromZero: lambda_k = scale * (k+1)^(-q)
//   PowerLawFromOne : lambda_0 = 0, lambda_k = scale * k^(-q)
//   Explicit        : a finite list, zero beyond it
// Square-summability requires q > 1/2 for the power laws.
struct LambdaFamily {
  enum class Kind { PowerLawFromZero, PowerLawFromOne, Explicit };
  Kind kind = Kind::PowerLawFromZero;
  double q = 1.0;
  double scale = 1.0;
  std::vector<double> values;

  static LambdaFamily power_law_from_zero(double q, double scale = 1.0);
  static LambdaFamily power_law_from_one(double q, double scale = 1.0);
  static LambdaFamily explicit_values(std::vector<double> values);

  double lambda(long long k) const;

  // sum_{k >= n} lambda_k^2, analytically (exact for Explicit).
  double tail_sq(long long n) const;

  bool square_summable() const;
};

}  // namespace spde::analytic
