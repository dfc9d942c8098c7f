#include "spdelab/analytic.hpp"

namespace spde::analytic {

double power_tail(double s, long long a) {
  if (s <= 1.0) throw std::domain_error("power_tail: divergent for s <= 1");
  if (a < 1) throw std::domain_error("power_tail: start index must be >= 1");
  const long long m = a + 64;
  double head = 0.0;
  for (long long k = m - 1; k >= a; --k)  // ascending magnitudes
    head += std::pow(static_cast<double>(k), -s);
  const double dm = static_cast<double>(m);
  const double ms = std::pow(dm, -s);
  double rem = dm * ms / (s - 1.0) + 0.5 * ms;
  rem += s * ms / dm / 12.0;
  rem -= s * (s + 1.0) * (s + 2.0) * ms / (dm * dm * dm) / 720.0;
  rem += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ms /
         (dm * dm * dm * dm * dm) / 30240.0;
  return head + rem;
}

LambdaFamily LambdaFamily::power_law_from_zero(double q, double scale) {
  LambdaFamily f;
  f.kind = Kind::PowerLawFromZero;
  f.q = q;
  f.scale = scale;
  return f;
}

LambdaFamily LambdaFamily::power_law_from_one(double q, double scale) {
  LambdaFamily f;
  f.kind = Kind::PowerLawFromOne;
  f.q = q;
  f.scale = scale;
  return f;
}

LambdaFamily LambdaFamily::explicit_values(std::vector<double> values) {
  LambdaFamily f;
  f.kind = Kind::Explicit;
  f.values = std::move(values);
  return f;
}

double LambdaFamily::lambda(long long k) const {
  if (k < 0) throw std::out_of_range("LambdaFamily::lambda: negative index");
  switch (kind) {
    case Kind::PowerLawFromZero:
      return scale * std::pow(static_cast<double>(k + 1), -q);
    case Kind::PowerLawFromOne:
      return k == 0 ? 0.0 : scale * std::pow(static_cast<double>(k), -q);
    case Kind::Explicit:
      return k < static_cast<long long>(values.size())
                 ? values[static_cast<std::size_t>(k)]
                 : 0.0;
  }
  return 0.0;
}

double LambdaFamily::tail_sq(long long n) const {
  if (n < 0) n = 0;
  switch (kind) {
    case Kind::PowerLawFromZero:
      return scale * scale * power_tail(2.0 * q, n + 1);
    case Kind::PowerLawFromOne:
      return scale * scale * power_tail(2.0 * q, n < 1 ? 1 : n);
    case Kind::Explicit: {
      double acc = 0.0;
      for (std::size_t k = static_cast<std::size_t>(n); k < values.size(); ++k)
        acc += values[k] * values[k];
      return acc;
    }
  }
  return 0.0;
}

bool LambdaFamily::square_summable() const {
  return kind == Kind::Explicit || q > 0.5;
}

}  // namespace spde::analytic
