#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "iago/covariance.hpp"
#include "iago/grid.hpp"
#include "iago/rng.hpp"

namespace iago {

/// Synthetic noisy objective on a grid: a fixed mean vector plus i.i.d.
/// Gaussian evaluation noise. Ground truth is exhaustively computable.
struct NoisyObjective {
  Eigen::VectorXd mean_values;  // f(x) per grid point
  double noise_std = 0.0;
  std::string label;
};

/// One exact draw from the given prior on the grid. Deterministic per seed.
NoisyObjective make_gp_draw_objective(const CovarianceSpec& spec,
                                      const CandidateGrid& grid, double noise_std,
                                      std::uint64_t seed);

/// The canonical 51-point grid on [-1, 0] used by the surrogate objective.
CandidateGrid res_surrogate_grid();

/// Default noise level of the surrogate; at least 3x the mean range, which
/// puts single evaluations firmly in the very-noisy regime.
inline constexpr double kResSurrogateNoiseStd = 1.0;

/// Synthetic stand-in for a network-cost objective: a fixed smooth curve on
/// [-1, 0] with a shallow skewed basin at x = -0.7, a steep wall to its left
/// and a gentle shelf to its right, so the minimizer is easy to bracket but
/// slow to pin down. Pure arithmetic on committed coefficients, so the
/// values are identical across platforms:
///   f(x) = 1 - 0.33 exp(-(x+0.7)^2 / (2 w^2)),  w = 0.05 left of -0.7,
///                                               w = 0.30 right of it
NoisyObjective make_res_surrogate(double noise_std = kResSurrogateNoiseStd);

/// k i.i.d. draws of f(x) + N(0, noise_std^2).
std::vector<double> evaluate_batch(const NoisyObjective& objective, int grid_index,
                                   int k, Rng& rng);

/// Exhaustive argmin of the mean values; ties go to the smallest index.
std::pair<int, double> true_optimum(const NoisyObjective& objective);

/// Two-column table (grid point, mean value) for external plotting.
void write_objective_table(const NoisyObjective& objective, const CandidateGrid& grid,
                           std::ostream& out);

}  // namespace iago
