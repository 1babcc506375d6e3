#include "hypconv/spatial_ppr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypconv {

namespace {

double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

// Primitive of p(xi) from 0.
double primitive(double uL, double duR, double c6, double xi) {
  const double x2 = xi * xi;
  return uL * xi + 0.5 * duR * x2 + c6 * (0.5 * x2 - x2 * xi / 3.0);
}

void require_cells(std::size_t n) {
  if (n < 4) throw std::invalid_argument("reconstruction needs at least 4 cells");
}

}  // namespace

double ParabolicReconstruction::value(std::size_t j, double xi) const {
  const double duR = right[j] - left[j];
  const double c6 = 6.0 * (mean[j] - 0.5 * (left[j] + right[j]));
  return left[j] + xi * (duR + c6 * (1.0 - xi));
}

double ParabolicReconstruction::integral(std::size_t j, double xi0, double xi1) const {
  const double duR = right[j] - left[j];
  const double c6 = 6.0 * (mean[j] - 0.5 * (left[j] + right[j]));
  if (xi0 == 0.0 && xi1 == 1.0) return mean[j];
  return primitive(left[j], duR, c6, xi1) - primitive(left[j], duR, c6, xi0);
}

std::vector<double> interpolate_edges(std::span<const double> mean) {
  const std::size_t n = mean.size();
  require_cells(n);
  std::vector<double> edges(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::int64_t>(i) - 1;  // edge i = j + 1/2
    edges[i] = (7.0 / 12.0) * (mean[wrap_index(j, n)] + mean[wrap_index(j + 1, n)]) -
               (1.0 / 12.0) * (mean[wrap_index(j - 1, n)] + mean[wrap_index(j + 2, n)]);
  }
  edges[n] = edges[0];
  return edges;
}

double mc_limit(double left, double center, double right) {
  return minmod3(0.5 * (right - left), 2.0 * (right - center), 2.0 * (center - left));
}

ParabolicReconstruction reconstruct(std::span<const double> mean, bool monotone) {
  const std::size_t n = mean.size();
  require_cells(n);
  ParabolicReconstruction r;
  r.mean.assign(mean.begin(), mean.end());
  r.left.resize(n);
  r.right.resize(n);

  if (!monotone) {
    const auto edges = interpolate_edges(mean);
    for (std::size_t j = 0; j < n; ++j) {
      r.left[j] = edges[j];
      r.right[j] = edges[j + 1];
    }
    return r;
  }

  // Interpolated edges, pulled back to mean +- |slope|/2 when they stray
  // further than the limited slope allows.
  const auto edges = interpolate_edges(mean);
  std::vector<double> half(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<std::int64_t>(j);
    half[j] = 0.5 * std::abs(mc_limit(mean[wrap_index(jj - 1, n)], mean[j], mean[wrap_index(jj + 1, n)]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double a = mean[j];
    double uL = std::clamp(edges[j], a - half[j], a + half[j]);
    double uR = std::clamp(edges[j + 1], a - half[j], a + half[j]);
    if ((uR - a) * (a - uL) <= 0.0) {
      uL = a;
      uR = a;
    } else {
      const double d = uR - uL;
      const double c = d * (a - 0.5 * (uL + uR));
      const double d2 = d * d / 6.0;
      if (c > d2) {
        uL = 3.0 * a - 2.0 * uR;
      } else if (-d2 > c) {
        uR = 3.0 * a - 2.0 * uL;
      }
    }
    r.left[j] = uL;
    r.right[j] = uR;
  }
  return r;
}

double rusanov_flux(double u_int, double u_ext, const ProblemSpec& prob, double x_edge,
                    int n_hat) {
  const double sign = n_hat >= 0 ? 1.0 : -1.0;
  const double f_int = prob.flux(u_int, x_edge);
  const double f_ext = prob.flux(u_ext, x_edge);
  const double lambda = std::max(std::abs(prob.flux_speed(u_int, x_edge)),
                                 std::abs(prob.flux_speed(u_ext, x_edge)));
  return 0.5 * ((f_int + f_ext) * sign - lambda * (u_ext - u_int));
}

namespace {

std::vector<double> quadrature_points(const UniformMesh& mesh) {
  const std::size_t n = mesh.n_cells();
  std::vector<double> pts;
  pts.reserve(n * GaussLegendre5::size);
  const double half = 0.5 * mesh.dx();
  for (std::size_t j = 0; j < n; ++j) {
    for (int q = 0; q < GaussLegendre5::size; ++q) {
      pts.push_back(mesh.centers()[j] + half * GaussLegendre5::nodes[q]);
    }
  }
  return pts;
}

}  // namespace

FvOperator::FvOperator(ProblemSpec prob, std::shared_ptr<const UniformMesh> mesh, bool monotone)
    : prob_(prob),
      mesh_(std::move(mesh)),
      monotone_(monotone),
      source_(prob, quadrature_points(*mesh_)) {
  quad_.resize(source_.size());
  edge_flux_.resize(mesh_->n_cells() + 1);
}

void FvOperator::tendency(std::span<const double> mean, double t, std::span<double> dudt) const {
  const std::size_t n = mesh_->n_cells();
  if (mean.size() != n || dudt.size() != n) throw std::invalid_argument("state length mismatch");
  const auto recon = reconstruct(mean, monotone_);
  const auto edges = mesh_->edges();
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t left_cell = wrap_index(static_cast<std::int64_t>(i) - 1, n);
    const std::size_t right_cell = i % n;
    edge_flux_[i] =
        rusanov_flux(recon.right[left_cell], recon.left[right_cell], prob_, edges[i], 1);
  }
  source_.evaluate(t, quad_);
  const double inv_dx = 1.0 / mesh_->dx();
  const auto centers = mesh_->centers();
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (int q = 0; q < GaussLegendre5::size; ++q) {
      s += GaussLegendre5::weights[q] * quad_[j * GaussLegendre5::size + q];
    }
    s *= 0.5;
    dudt[j] = -(edge_flux_[j + 1] - edge_flux_[j]) * inv_dx + s -
              prob_.reaction(mean[j], centers[j]);
  }
}

std::vector<double> fv_tendency(const StateField& state, double t, const ProblemSpec& prob,
                                bool monotone) {
  if (state.kind != StateKind::cell_averages) {
    throw std::invalid_argument("finite-volume tendency needs cell averages");
  }
  if (!state.mesh) throw std::invalid_argument("state has no mesh");
  FvOperator op(prob, state.mesh, monotone);
  std::vector<double> out(state.data.size());
  op.tendency(state.data, t, out);
  return out;
}

std::vector<double> integrate_to_coarse(const ParabolicReconstruction& recon,
                                        const UniformMesh& fine, const UniformMesh& coarse) {
  if (!(fine.domain() == coarse.domain())) {
    throw std::invalid_argument("restriction needs meshes on the same domain");
  }
  if (fine.n_cells() < coarse.n_cells()) {
    throw std::invalid_argument("restriction target must not be finer than the source");
  }
  if (recon.size() != fine.n_cells()) {
    throw std::invalid_argument("reconstruction does not match the fine mesh");
  }
  const std::size_t nf = fine.n_cells();
  const std::size_t nc = coarse.n_cells();
  const auto fe = fine.edges();
  const auto ce = coarse.edges();
  const double dxf = fine.dx();
  std::vector<double> out(nc, 0.0);

  std::size_t c = 0;
  for (std::size_t j = 0; j < nf; ++j) {
    // Walk the coarse cells overlapping fine cell j.
    double a = fe[j];
    const double b = fe[j + 1];
    while (c + 1 < nc && ce[c + 1] <= a) ++c;
    while (true) {
      const double hi = (c + 1 == nc) ? b : std::min(b, ce[c + 1]);
      if (hi > a) {
        const double xi0 = (a == fe[j]) ? 0.0 : (a - fe[j]) / dxf;
        const double xi1 = (hi == b) ? 1.0 : (hi - fe[j]) / dxf;
        out[c] += dxf * recon.integral(j, xi0, xi1);
      }
      if (hi >= b || c + 1 == nc) break;
      a = hi;
      ++c;
    }
  }
  return out;
}

}  // namespace hypconv
