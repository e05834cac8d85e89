#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qsom/rng.hpp"

namespace qsom {

/// Parameters of a classic self-organizing map. Both are constant over time:
/// no annealing, so the map keeps adapting for the whole run.
struct SomParams {
  double learning_rate = 0.5;       // step fraction toward the input
  double neighborhood_width = 1.5;  // gaussian width, in grid units
};

/// Parameters of a dynamic self-organizing map. The elasticity couples
/// neurons: high elasticity drags the whole map with the winner, low
/// elasticity lets neurons spread out and specialize.
struct DsomParams {
  double learning_rate = 0.8;
  double elasticity = 1.0;
};

/// A 2D lattice of neurons, each holding a prototype vector inside the unit
/// hypercube [0,1]^dim. Neuron i sits at lattice position
/// (i / cols, i % cols). Shared by the SOM and DSOM training rules.
class MapGrid {
 public:
  /// All prototypes start at the origin; use random() for uniform init.
  MapGrid(std::size_t rows, std::size_t cols, std::size_t dim);

  /// Prototypes drawn i.i.d. uniform on [0,1]^dim from the given stream.
  static MapGrid random(std::size_t rows, std::size_t cols, std::size_t dim, Rng& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_ * cols_; }

  std::span<double> prototype(std::size_t i);
  std::span<const double> prototype(std::size_t i) const;

  /// Lattice coordinates (row, col) of neuron i.
  std::pair<std::size_t, std::size_t> position(std::size_t i) const;

  bool operator==(const MapGrid&) const = default;

 private:
  std::size_t rows_, cols_, dim_;
  std::vector<double> prototypes_;  // row-major, size() * dim_
};

/// Index of the Best Matching Unit: the neuron whose prototype is nearest to
/// x in Euclidean distance. Ties break toward the lowest index.
std::size_t bmu(const MapGrid& grid, std::span<const double> x);

/// Lattice distance between two neurons: the minimal number of consecutive
/// 4-connected neighbors forming a path, i.e. the Manhattan distance.
unsigned grid_distance(const MapGrid& grid, std::size_t i, std::size_t j);

/// Gaussian lattice neighborhood centered on a neuron:
/// w_i = exp(-d(i, center)^2 / (2 width^2)). The center weight is exactly 1.
std::vector<double> gaussian_neighborhood(const MapGrid& grid, std::size_t center, double width);

/// DSOM lattice neighborhood centered on a neuron, relative to input x:
/// w_i = exp(-(1/elasticity^2) * d(i, center)^2 / |x - W_center|^2).
/// When x coincides with the center prototype (|x - W_center| < 1e-12) the
/// continuous limit applies: weight 1 at the center, 0 elsewhere.
std::vector<double> dsom_neighborhood(const MapGrid& grid, std::size_t center,
                                      std::span<const double> x, double elasticity);

/// SOM update with a forced neighborhood center:
/// W_i += w_i * lr * (x - W_i) for every neuron. Convex moves, so prototypes
/// stay inside the unit box.
void som_update_toward(MapGrid& grid, std::span<const double> x, std::size_t center,
                       const SomParams& params);

/// DSOM update with a forced neighborhood center:
/// W_i += lr * |x - W_i| * w_i * (x - W_i). The step factor is capped at 1 so
/// a prototype lands on x at most and never overshoots the unit box.
void dsom_update_toward(MapGrid& grid, std::span<const double> x, std::size_t center,
                        const DsomParams& params);

/// One SOM training step: finds the BMU, applies the update centered on it.
/// Returns the BMU index used.
std::size_t som_train_step(MapGrid& grid, std::span<const double> x, const SomParams& params);

/// One DSOM training step: finds the BMU, applies the update centered on it.
/// Returns the BMU index used.
std::size_t dsom_train_step(MapGrid& grid, std::span<const double> x, const DsomParams& params);

/// Mean squared Euclidean distance from each data point to its BMU prototype.
double distortion(const MapGrid& grid, const std::vector<std::vector<double>>& dataset);

}  // namespace qsom
