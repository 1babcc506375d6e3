#pragma once

#include <span>
#include <vector>

#include "hypconv/mesh.hpp"
#include "hypconv/problems.hpp"

namespace hypconv {

/// Upwind finite-difference order, 1 to 3.
class FdScheme {
 public:
  explicit FdScheme(int order);
  int order() const { return order_; }

 private:
  int order_;
};

/// Periodic upwind approximation of F_x from flux samples on the mesh nodes.
///
/// Positive wind:
///   order 1: (F_j - F_{j-1}) / dx
///   order 2: (3F_j - 4F_{j-1} + F_{j-2}) / (2dx)
///   order 3: (2F_{j+1} + 3F_j - 6F_{j-1} + F_{j-2}) / (6dx)
/// Negative wind mirrors the stencils.
std::vector<double> upwind_flux_divergence(std::span<const double> flux, const UniformMesh& mesh,
                                           int order, Wind wind);

/// Same stencils on flux samples that already carry ghost values:
/// `padded[i + left_ghosts]` is node i. Needs 2 ghosts on the upwind side and
/// 1 on the downwind side.
void upwind_divergence_padded(std::span<const double> padded, std::size_t n, double dx,
                              int order, Wind wind, std::span<double> out);

/// Method-of-lines right-hand side for point values on the mesh nodes:
/// du/dt = s - R(u) - F(u)_x.
///
/// Ghost fluxes are evaluated at the unwrapped node coordinates with u taken
/// periodically, so x-dependent fluxes such as x*u stay consistent across the
/// wrap.
class FdOperator {
 public:
  FdOperator(ProblemSpec prob, std::shared_ptr<const UniformMesh> mesh, FdScheme scheme);

  void tendency(std::span<const double> u, double t, std::span<double> dudt) const;
  const UniformMesh& mesh() const { return *mesh_; }

 private:
  ProblemSpec prob_;
  std::shared_ptr<const UniformMesh> mesh_;
  FdScheme scheme_;
  Wind wind_;
  std::size_t left_ghosts_;
  std::vector<double> ghost_x_;  // coordinates of padded samples
  SourceSampler source_;
  mutable std::vector<double> padded_, div_, src_;
};

/// One-shot tendency; builds an FdOperator internally.
std::vector<double> fd_tendency(const StateField& state, double t, const ProblemSpec& prob,
                                FdScheme scheme);

}  // namespace hypconv
