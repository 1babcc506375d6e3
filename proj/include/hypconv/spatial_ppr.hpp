#pragma once

#include <span>
#include <vector>

#include "hypconv/mesh.hpp"
#include "hypconv/problems.hpp"

namespace hypconv {

/// Per-cell parabola on the local coordinate xi in [0, 1]:
///   p_j(xi) = uL + xi (duR + c6 (1 - xi)),  duR = uR - uL,
///   c6 = 6 (mean - (uL + uR) / 2),
/// so that p_j(0) = uL, p_j(1) = uR and the integral over [0, 1] is the mean.
struct ParabolicReconstruction {
  std::vector<double> mean;
  std::vector<double> left;
  std::vector<double> right;

  std::size_t size() const { return mean.size(); }
  double value(std::size_t j, double xi) const;
  /// Integral of p_j over [xi0, xi1] in local units (multiply by dx for x).
  double integral(std::size_t j, double xi0, double xi1) const;
};

/// Fourth-order periodic edge interpolation of cell averages. Entry i is the
/// value at edge i (between cells i-1 and i); entry n repeats entry 0.
std::vector<double> interpolate_edges(std::span<const double> mean);

/// Monotonized-central limited slope from three consecutive averages.
double mc_limit(double left, double center, double right);

/// Edge values for every cell. Non-monotone mode takes the interpolated edges
/// as they are. Monotone mode clamps them to mean +- |MC slope|/2, flattens
/// cells at an extremum and pulls back edges whose parabola overshoots.
ParabolicReconstruction reconstruct(std::span<const double> mean, bool monotone);

/// Local Lax-Friedrichs flux across an edge at x_edge, dotted with n_hat.
double rusanov_flux(double u_int, double u_ext, const ProblemSpec& prob, double x_edge,
                    int n_hat = 1);

/// Cell-average tendency du/dt = -(F_{j+1/2} - F_{j-1/2}) / dx + s_bar - R(u_bar).
///
/// Edge 0 and edge n share states across the periodic wrap but keep their own
/// coordinates, so x-dependent fluxes are evaluated where the edge really is.
/// The source is averaged with 5-point Gauss-Legendre quadrature per cell.
class FvOperator {
 public:
  FvOperator(ProblemSpec prob, std::shared_ptr<const UniformMesh> mesh, bool monotone);

  void tendency(std::span<const double> mean, double t, std::span<double> dudt) const;
  const UniformMesh& mesh() const { return *mesh_; }
  bool monotone() const { return monotone_; }

 private:
  ProblemSpec prob_;
  std::shared_ptr<const UniformMesh> mesh_;
  bool monotone_;
  SourceSampler source_;
  mutable std::vector<double> quad_, edge_flux_;
};

std::vector<double> fv_tendency(const StateField& state, double t, const ProblemSpec& prob,
                                bool monotone);

/// Exact integrals of the fine-mesh parabolas over each coarse cell. The
/// meshes need not be nested but must cover the same domain.
std::vector<double> integrate_to_coarse(const ParabolicReconstruction& recon,
                                        const UniformMesh& fine, const UniformMesh& coarse);

}  // namespace hypconv
