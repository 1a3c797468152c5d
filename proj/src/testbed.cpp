#include "iago/testbed.hpp"

#include <ostream>
#include <stdexcept>

#include "iago/entropy.hpp"
#include "iago/posterior.hpp"

namespace iago {

NoisyObjective make_gp_draw_objective(const CovarianceSpec& spec,
                                      const CandidateGrid& grid, double noise_std,
                                      std::uint64_t seed) {
  spec.validate();
  if (!(noise_std >= 0.0)) {
    throw std::invalid_argument("make_gp_draw_objective: noise_std must be >= 0");
  }
  const GpPosterior prior(grid, Eigen::VectorXd::Zero(grid.size()),
                          cov_matrix(spec, grid.points(), grid.points()));
  const PathSet draw = sample_paths(prior, 1, seed);

  NoisyObjective objective;
  objective.mean_values = draw.values.row(0).transpose();
  objective.noise_std = noise_std;
  objective.label = "gp_draw";
  return objective;
}

CandidateGrid res_surrogate_grid() { return CandidateGrid::linspace(-1.0, 0.0, 51); }

NoisyObjective make_res_surrogate(double noise_std) {
  if (!(noise_std >= 0.0)) {
    throw std::invalid_argument("make_res_surrogate: noise_std must be >= 0");
  }
  const CandidateGrid grid = res_surrogate_grid();
  NoisyObjective objective;
  objective.mean_values.resize(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.coordinate(i);
    // Skewed basin: steep wall on the left of the minimum, gentle flank on
    // the right, matching the ramp-and-shelf shape of typical cost curves.
    const double width = x < -0.7 ? 0.05 : 0.30;
    const double u = (x + 0.7) / width;
    objective.mean_values(i) = 1.0 - 0.33 * std::exp(-0.5 * u * u);
  }
  objective.noise_std = noise_std;
  objective.label = "res_surrogate";
  return objective;
}

std::vector<double> evaluate_batch(const NoisyObjective& objective, int grid_index,
                                   int k, Rng& rng) {
  if (grid_index < 0 || grid_index >= objective.mean_values.size()) {
    throw std::invalid_argument("evaluate_batch: index out of range");
  }
  if (k < 1) {
    throw std::invalid_argument("evaluate_batch: k must be >= 1");
  }
  std::vector<double> values(static_cast<std::size_t>(k));
  const double f = objective.mean_values(grid_index);
  for (double& v : values) {
    v = f + objective.noise_std * rng.normal();
  }
  return values;
}

std::pair<int, double> true_optimum(const NoisyObjective& objective) {
  if (objective.mean_values.size() < 1) {
    throw std::invalid_argument("true_optimum: empty objective");
  }
  int arg = 0;
  double best = objective.mean_values(0);
  for (Eigen::Index i = 1; i < objective.mean_values.size(); ++i) {
    if (objective.mean_values(i) < best) {
      best = objective.mean_values(i);
      arg = static_cast<int>(i);
    }
  }
  return {arg, best};
}

void write_objective_table(const NoisyObjective& objective, const CandidateGrid& grid,
                           std::ostream& out) {
  if (grid.size() != objective.mean_values.size()) {
    throw std::invalid_argument("write_objective_table: grid/objective mismatch");
  }
  out.precision(17);
  for (int i = 0; i < grid.size(); ++i) {
    out << grid.coordinate(i) << " " << objective.mean_values(i) << "\n";
  }
}

}  // namespace iago
