#include "hypconv/mesh.hpp"

#include <stdexcept>
#include <string>

namespace hypconv {

UniformMesh::UniformMesh(std::size_t n_cells, Interval domain)
    : n_cells_(n_cells), domain_(domain) {
  if (n_cells == 0) throw std::invalid_argument("mesh needs at least one cell");
  if (!(domain.hi > domain.lo)) {
    throw std::invalid_argument("mesh domain must satisfy lo < hi");
  }
  dx_ = domain.length() / static_cast<double>(n_cells);
  edges_.resize(n_cells + 1);
  centers_.resize(n_cells);
  for (std::size_t j = 0; j <= n_cells; ++j) {
    edges_[j] = domain.lo + static_cast<double>(j) * dx_;
  }
  edges_[n_cells] = domain.hi;
  for (std::size_t j = 0; j < n_cells; ++j) {
    centers_[j] = 0.5 * (edges_[j] + edges_[j + 1]);
  }
}

UniformMesh build_mesh(std::size_t n_cells, Interval domain) {
  // Narrowest support of the upwind-3 and parabolic stencils.
  if (n_cells < 4) {
    throw std::invalid_argument("mesh needs at least 4 cells, got " + std::to_string(n_cells));
  }
  return UniformMesh(n_cells, domain);
}

}  // namespace hypconv
