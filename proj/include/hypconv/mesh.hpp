#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace hypconv {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Uniform periodic 1D grid. Immutable once built. Any positive cell count is
/// accepted here (coarse restriction targets may be tiny); solvers go through
/// build_mesh, which demands stencil support.
///
/// Cell j spans [edges[j], edges[j+1]] with center centers[j]. Point-value
/// (finite difference) states live on the nodes x_j = edges[j], j < n_cells,
/// which nest under ratio-2 refinement.
class UniformMesh {
 public:
  UniformMesh(std::size_t n_cells, Interval domain);

  std::size_t n_cells() const { return n_cells_; }
  const Interval& domain() const { return domain_; }
  double dx() const { return dx_; }

  std::span<const double> centers() const { return centers_; }
  std::span<const double> edges() const { return edges_; }
  /// Left edge of every cell; the sample points for point-value states.
  std::span<const double> nodes() const { return {edges_.data(), n_cells_}; }

  /// Coordinate of node j without periodic folding (j may be negative or
  /// >= n_cells).
  double unwrapped_node(std::int64_t j) const {
    return domain_.lo + static_cast<double>(j) * dx_;
  }

 private:
  std::size_t n_cells_;
  Interval domain_;
  double dx_;
  std::vector<double> centers_;
  std::vector<double> edges_;
};

/// Throws std::invalid_argument when n_cells < 4 or the domain is empty.
UniformMesh build_mesh(std::size_t n_cells, Interval domain = {});

/// Periodic index fold: returns j mod n in [0, n).
inline std::size_t wrap_index(std::int64_t j, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  std::int64_t r = j % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

enum class StateKind { point_values, cell_averages, cell_integrals };

/// Discrete solution on a mesh at a given time. The kind never changes over
/// a run.
struct StateField {
  StateKind kind = StateKind::point_values;
  std::vector<double> data;
  std::shared_ptr<const UniformMesh> mesh;
  double time = 0.0;
};

}  // namespace hypconv
