#include "qsom/map_grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "qsom/errors.hpp"

namespace qsom {

namespace {

void check_dim(const MapGrid& grid, std::span<const double> x, const char* op) {
  if (x.size() != grid.dim()) {
    throw InvalidInput(std::string(op) + ": input has dimension " + std::to_string(x.size()) +
                       ", grid expects " + std::to_string(grid.dim()));
  }
}

void check_index(const MapGrid& grid, std::size_t i, const char* op) {
  if (i >= grid.size()) {
    throw InvalidInput(std::string(op) + ": neuron index " + std::to_string(i) +
                       " out of range [0, " + std::to_string(grid.size()) + ")");
  }
}

void check_som_params(const SomParams& p) {
  if (!(p.learning_rate >= 0.0 && p.learning_rate <= 1.0)) {
    throw InvalidInput("SomParams: learning_rate must be in [0,1]");
  }
  if (!(p.neighborhood_width > 0.0)) {
    throw InvalidInput("SomParams: neighborhood_width must be > 0");
  }
}

void check_dsom_params(const DsomParams& p) {
  if (!(p.learning_rate >= 0.0 && p.learning_rate <= 1.0)) {
    throw InvalidInput("DsomParams: learning_rate must be in [0,1]");
  }
  if (!(p.elasticity > 0.0)) {
    throw InvalidInput("DsomParams: elasticity must be > 0");
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

}  // namespace

MapGrid::MapGrid(std::size_t rows, std::size_t cols, std::size_t dim)
    : rows_(rows), cols_(cols), dim_(dim), prototypes_(rows * cols * dim, 0.0) {
  if (rows_ == 0 || cols_ == 0 || dim_ == 0) {
    throw InvalidInput("MapGrid: rows, cols and dim must be positive");
  }
}

MapGrid MapGrid::random(std::size_t rows, std::size_t cols, std::size_t dim, Rng& rng) {
  MapGrid grid(rows, cols, dim);
  for (double& v : grid.prototypes_) v = rng.next_double();
  return grid;
}

std::span<double> MapGrid::prototype(std::size_t i) {
  check_index(*this, i, "MapGrid::prototype");
  return {prototypes_.data() + i * dim_, dim_};
}

std::span<const double> MapGrid::prototype(std::size_t i) const {
  check_index(*this, i, "MapGrid::prototype");
  return {prototypes_.data() + i * dim_, dim_};
}

std::pair<std::size_t, std::size_t> MapGrid::position(std::size_t i) const {
  check_index(*this, i, "MapGrid::position");
  return {i / cols_, i % cols_};
}

std::size_t bmu(const MapGrid& grid, std::span<const double> x) {
  check_dim(grid, x, "bmu");
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double sq = squared_distance(x, grid.prototype(i));
    if (sq < best_sq) {  // strict: ties keep the lowest index
      best_sq = sq;
      best = i;
    }
  }
  return best;
}

unsigned grid_distance(const MapGrid& grid, std::size_t i, std::size_t j) {
  check_index(grid, i, "grid_distance");
  check_index(grid, j, "grid_distance");
  const auto [ri, ci] = grid.position(i);
  const auto [rj, cj] = grid.position(j);
  const auto d = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
  return static_cast<unsigned>(d(ri, rj) + d(ci, cj));
}

std::vector<double> gaussian_neighborhood(const MapGrid& grid, std::size_t center, double width) {
  check_index(grid, center, "gaussian_neighborhood");
  if (!(width > 0.0)) throw InvalidInput("gaussian_neighborhood: width must be > 0");
  std::vector<double> weights(grid.size());
  const double denom = 2.0 * width * width;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid_distance(grid, i, center);
    weights[i] = std::exp(-(d * d) / denom);
  }
  return weights;
}

std::vector<double> dsom_neighborhood(const MapGrid& grid, std::size_t center,
                                      std::span<const double> x, double elasticity) {
  check_index(grid, center, "dsom_neighborhood");
  check_dim(grid, x, "dsom_neighborhood");
  if (!(elasticity > 0.0)) throw InvalidInput("dsom_neighborhood: elasticity must be > 0");
  std::vector<double> weights(grid.size(), 0.0);
  const double sq_to_center = squared_distance(x, grid.prototype(center));
  if (sq_to_center < 1e-12 * 1e-12) {
    weights[center] = 1.0;  // limit of the weight as x -> W_center
    return weights;
  }
  const double scale = 1.0 / (elasticity * elasticity * sq_to_center);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid_distance(grid, i, center);
    weights[i] = std::exp(-(d * d) * scale);
  }
  return weights;
}

namespace {

// Moves every prototype toward x by a per-neuron fraction in [0,1], then
// snaps rounding spill back into the unit box.
void apply_fractions(MapGrid& grid, std::span<const double> x,
                     std::span<const double> fractions) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = fractions[i];
    assert(f >= 0.0 && f <= 1.0);
    if (f == 0.0) continue;
    auto w = grid.prototype(i);
    for (std::size_t k = 0; k < w.size(); ++k) {
      w[k] += f * (x[k] - w[k]);
      w[k] = std::clamp(w[k], 0.0, 1.0);
    }
  }
}

}  // namespace

void som_update_toward(MapGrid& grid, std::span<const double> x, std::size_t center,
                       const SomParams& params) {
  check_dim(grid, x, "som_update_toward");
  check_index(grid, center, "som_update_toward");
  check_som_params(params);
  if (params.learning_rate == 0.0) return;
  const auto theta = gaussian_neighborhood(grid, center, params.neighborhood_width);
  std::vector<double> fractions(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) fractions[i] = theta[i] * params.learning_rate;
  apply_fractions(grid, x, fractions);
}

void dsom_update_toward(MapGrid& grid, std::span<const double> x, std::size_t center,
                        const DsomParams& params) {
  check_dim(grid, x, "dsom_update_toward");
  check_index(grid, center, "dsom_update_toward");
  check_dsom_params(params);
  if (params.learning_rate == 0.0) return;
  const auto h = dsom_neighborhood(grid, center, x, params.elasticity);
  std::vector<double> fractions(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double dist = std::sqrt(squared_distance(x, grid.prototype(i)));
    // Cap at 1: the raw step alpha*|x-W|*h can exceed 1 when |x-W| > 1/alpha
    // (possible in high-dimensional boxes), which would overshoot past x and
    // leave the unit box.
    fractions[i] = std::min(1.0, params.learning_rate * dist * h[i]);
  }
  apply_fractions(grid, x, fractions);
}

std::size_t som_train_step(MapGrid& grid, std::span<const double> x, const SomParams& params) {
  const std::size_t u = bmu(grid, x);
  som_update_toward(grid, x, u, params);
  return u;
}

std::size_t dsom_train_step(MapGrid& grid, std::span<const double> x, const DsomParams& params) {
  const std::size_t u = bmu(grid, x);
  dsom_update_toward(grid, x, u, params);
  return u;
}

double distortion(const MapGrid& grid, const std::vector<std::vector<double>>& dataset) {
  if (dataset.empty()) throw InvalidInput("distortion: empty dataset");
  double acc = 0.0;
  for (const auto& point : dataset) {
    check_dim(grid, point, "distortion");
    acc += squared_distance(point, grid.prototype(bmu(grid, point)));
  }
  return acc / static_cast<double>(dataset.size());
}

}  // namespace qsom
