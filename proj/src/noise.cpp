#include "spdelab/noise.hpp"

#include <cmath>

#include "spdelab/philox.hpp"

namespace spde::noise {

std::vector<double> NoisePlan::time_grid() const {
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int m = 0; m <= steps; ++m)
    t[static_cast<std::size_t>(m)] = horizon * m / steps;
  return t;
}

IncrementBlock generate_increments(const NoisePlan& plan) {
  if (plan.mode_count_ref < 0 || plan.steps < 0)
    throw std::invalid_argument("generate_increments: negative plan dimensions");
  if (plan.steps > 0 && plan.horizon <= 0.0)
    throw std::invalid_argument("generate_increments: horizon must be positive");
  IncrementBlock block{plan.steps, plan.mode_count_ref, plan.dt(), {}};
  const std::size_t total =
      static_cast<std::size_t>(plan.steps) * plan.mode_count_ref;
  block.data.resize(total);
  const double scale = std::sqrt(block.dt);
  std::size_t idx = 0;
  for (int m = 0; m < plan.steps; ++m)
    for (int k = 0; k < plan.mode_count_ref; ++k)
      block.data[idx++] = scale * rng::standard_normal(
                                      plan.seed, plan.path_index,
                                      static_cast<std::uint32_t>(m),
                                      static_cast<std::uint32_t>(k));
  return block;
}

IncrementBlock truncate(const IncrementBlock& block, int n) {
  if (n < 1)
    throw std::invalid_argument("truncate: at least one mode must be kept");
  if (n > block.modes)
    throw std::invalid_argument("truncate: reference resolution insufficient");
  IncrementBlock out{block.steps, n, block.dt, {}};
  out.data.resize(static_cast<std::size_t>(block.steps) * n);
  for (int m = 0; m < block.steps; ++m) {
    const auto src = block.row(m);
    for (int k = 0; k < n; ++k)
      out.data[static_cast<std::size_t>(m) * n + k] = src[static_cast<std::size_t>(k)];
  }
  return out;
}

}  // namespace spde::noise
