#pragma once
//==============================================================================
// noise.hpp
// Driving noise for the simulations: the cylindrical Wiener process is
// realized through its basis increments dW_{m,k} ~ N(0, dt), independent
// across time rows m and mode columns k.  Spectral truncation keeps a prefix
// of the columns, so runs at different truncation levels driven by the same
// plan share their increments (common random numbers).
//
// Increment generation is a pure function of (seed, path_index): entry (m,k)
// is drawn by the Philox4x32-10 generator keyed by the seed with counter
// (path_index, m, k); see philox.hpp.  Distinct paths use disjoint counters
// and are therefore independent streams.
//==============================================================================

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace spde::noise {

struct NoisePlan {
  int mode_count_ref = 0;   // reference truncation standing in for n = infinity
  int steps = 0;            // M; the grid is t_m = m * horizon / M
  double horizon = 0.0;     // T
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;

  double dt() const { return steps > 0 ? horizon / steps : 0.0; }
  std::vector<double> time_grid() const;
};

struct IncrementBlock {
  int steps = 0;
  int modes = 0;
  double dt = 0.0;
  std::vector<double> data;  // row-major, steps x modes

  std::span<const double> row(int m) const {
    return {data.data() + static_cast<std::size_t>(m) * modes,
            static_cast<std::size_t>(modes)};
  }
};

// Deterministic in (seed, path_index); empty plans yield empty blocks.
IncrementBlock generate_increments(const NoisePlan& plan);

// First n mode columns of the block.  Requires 1 <= n <= block.modes.
IncrementBlock truncate(const IncrementBlock& block, int n);

}  // namespace spde::noise
