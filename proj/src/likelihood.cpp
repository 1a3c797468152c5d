#include "iago/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "iago/errors.hpp"
#include "iago/posterior.hpp"

namespace iago {

double log_marginal_likelihood(const CovarianceSpec& spec, const NoiseModel& noise,
                               const ObservationSet& obs, const CandidateGrid& grid) {
  spec.validate();
  noise.validate();
  if (obs.empty()) {
    return 0.0;
  }
  const auto n = static_cast<Eigen::Index>(obs.size());
  Eigen::MatrixXd locations(n, grid.dim());
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Observation& o = obs[static_cast<std::size_t>(i)];
    if (o.grid_index < 0 || o.grid_index >= grid.size()) {
      throw std::invalid_argument("log_marginal_likelihood: index out of range");
    }
    locations.row(i) = grid.point(o.grid_index);
    values(i) = o.value;
  }
  Eigen::MatrixXd gram = cov_matrix(spec, locations, locations);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) += obs[static_cast<std::size_t>(i)].batch_count.effective_noise_variance(
        noise.variance);
  }
  const JitteredCholesky chol = cholesky_with_jitter(gram);
  const Eigen::VectorXd alpha = chol.llt.solve(values);
  const double log_det =
      2.0 * chol.llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * values.dot(alpha) - 0.5 * log_det -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

FitBounds FitBounds::defaults(int dim, double span) {
  // The corners of a wider box are degenerate under heavy noise: a
  // lengthscale at grid spacing turns the fit into white noise, one past the
  // domain span into a constant. Both produce badly miscalibrated minimizer
  // distributions.
  FitBounds b;
  b.lengthscale_lo = Eigen::VectorXd::Constant(dim, 0.05 * span);
  b.lengthscale_hi = Eigen::VectorXd::Constant(dim, 2.0 * span);
  return b;
}

void FitBounds::validate(int dim) const {
  if (!(variance_lo > 0.0) || !(variance_hi >= variance_lo)) {
    throw std::invalid_argument("FitBounds: bad variance bounds");
  }
  if (lengthscale_lo.size() != dim || lengthscale_hi.size() != dim) {
    throw std::invalid_argument("FitBounds: lengthscale bounds dimension mismatch");
  }
  for (int k = 0; k < dim; ++k) {
    if (!(lengthscale_lo(k) > 0.0) || !(lengthscale_hi(k) >= lengthscale_lo(k))) {
      throw std::invalid_argument("FitBounds: bad lengthscale bounds");
    }
  }
}

namespace {

using Vec = Eigen::VectorXd;

// Nelder-Mead on a box, all coordinates in log space. Proposals are clamped
// into the box before evaluation.
Vec nelder_mead(const std::function<double(const Vec&)>& f, Vec x0, const Vec& lo,
                const Vec& hi, int max_iters) {
  const auto p = x0.size();
  const auto clamp = [&](Vec v) {
    return v.cwiseMax(lo).cwiseMin(hi);
  };
  std::vector<Vec> xs;
  std::vector<double> fs;
  x0 = clamp(std::move(x0));
  xs.push_back(x0);
  for (Eigen::Index k = 0; k < p; ++k) {
    Vec v = x0;
    const double step = 0.25;
    v(k) = (v(k) + step <= hi(k)) ? v(k) + step : std::max(lo(k), v(k) - step);
    xs.push_back(clamp(std::move(v)));
  }
  fs.reserve(xs.size());
  for (const Vec& v : xs) fs.push_back(f(v));

  const auto order = [&] {
    std::vector<std::size_t> idx(xs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<Vec> xs2;
    std::vector<double> fs2;
    for (std::size_t i : idx) {
      xs2.push_back(xs[i]);
      fs2.push_back(fs[i]);
    }
    xs.swap(xs2);
    fs.swap(fs2);
  };

  for (int it = 0; it < max_iters; ++it) {
    order();
    if (fs.back() - fs.front() < 1e-10) break;
    Vec centroid = Vec::Zero(p);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) centroid += xs[i];
    centroid /= static_cast<double>(xs.size() - 1);

    const Vec xr = clamp(centroid + (centroid - xs.back()));
    const double fr = f(xr);
    if (fr < fs.front()) {
      const Vec xe = clamp(centroid + 2.0 * (centroid - xs.back()));
      const double fe = f(xe);
      if (fe < fr) {
        xs.back() = xe;
        fs.back() = fe;
      } else {
        xs.back() = xr;
        fs.back() = fr;
      }
      continue;
    }
    if (fr < fs[fs.size() - 2]) {
      xs.back() = xr;
      fs.back() = fr;
      continue;
    }
    const Vec xc = clamp(centroid + 0.5 * (xs.back() - centroid));
    const double fc = f(xc);
    if (fc < fs.back()) {
      xs.back() = xc;
      fs.back() = fc;
      continue;
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {  // shrink toward the best
      xs[i] = clamp(xs.front() + 0.5 * (xs[i] - xs.front()));
      fs[i] = f(xs[i]);
    }
  }
  order();
  return xs.front();
}

}  // namespace

CovarianceSpec fit_hyperparameters(const ObservationSet& obs, const CandidateGrid& grid,
                                   const NoiseModel& noise, CovFamily family,
                                   const FitBounds& bounds, int restarts, Rng& rng,
                                   const std::optional<CovarianceSpec>& warm_start) {
  const int d = grid.dim();
  bounds.validate(d);
  if (restarts < 1 && !warm_start) {
    throw std::invalid_argument("fit_hyperparameters: need at least one start");
  }
  if (obs.size() < 2) {
    throw std::invalid_argument("fit_hyperparameters: insufficient data (need >= 2 observations)");
  }
  bool two_locations = false;
  for (std::size_t i = 1; i < obs.size(); ++i) {
    if (obs[i].grid_index != obs[0].grid_index) {
      two_locations = true;
      break;
    }
  }
  if (!two_locations) {
    throw std::invalid_argument(
        "fit_hyperparameters: insufficient data (need >= 2 distinct locations)");
  }

  const int p = 1 + d;
  Vec lo(p), hi(p);
  lo(0) = std::log(bounds.variance_lo);
  hi(0) = std::log(bounds.variance_hi);
  for (int k = 0; k < d; ++k) {
    lo(1 + k) = std::log(bounds.lengthscale_lo(k));
    hi(1 + k) = std::log(bounds.lengthscale_hi(k));
  }

  const auto to_spec = [&](const Vec& t) {
    CovarianceSpec s;
    s.family = family;
    s.process_variance = std::exp(t(0));
    s.lengthscales = t.tail(d).array().exp().matrix();
    return s;
  };
  const auto objective = [&](const Vec& t) {
    try {
      return -log_marginal_likelihood(to_spec(t), noise, obs, grid);
    } catch (const NumericalError&) {
      return 1e100;  // treat conditioning failures as a dead region
    }
  };

  std::vector<Vec> starts;
  if (warm_start) {
    warm_start->validate();
    Vec t(p);
    t(0) = std::log(warm_start->process_variance);
    for (int k = 0; k < d; ++k) t(1 + k) = std::log(warm_start->lengthscales(k));
    starts.push_back(t.cwiseMax(lo).cwiseMin(hi));
  }
  for (int r = 0; r < restarts; ++r) {
    Vec t(p);
    for (int k = 0; k < p; ++k) {
      t(k) = lo(k) + (hi(k) - lo(k)) * rng.uniform01();
    }
    starts.push_back(std::move(t));
  }

  Vec best;
  double best_val = std::numeric_limits<double>::infinity();
  for (const Vec& s : starts) {
    const Vec x = nelder_mead(objective, s, lo, hi, 200 * p);
    const double v = objective(x);
    if (v < best_val) {
      best_val = v;
      best = x;
    }
  }
  if (!std::isfinite(best_val) || best_val >= 1e100) {
    throw NumericalError("fit_hyperparameters: no feasible hyperparameters found");
  }
  return to_spec(best);
}

}  // namespace iago
