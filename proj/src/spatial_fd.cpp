#include "hypconv/spatial_fd.hpp"

#include <stdexcept>
#include <string>

namespace hypconv {

FdScheme::FdScheme(int order) : order_(order) {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("upwind order must be 1, 2 or 3, got " + std::to_string(order));
  }
}

namespace {

constexpr std::size_t kUpwindGhosts = 2;
constexpr std::size_t kDownwindGhosts = 1;

}  // namespace

void upwind_divergence_padded(std::span<const double> padded, std::size_t n, double dx,
                              int order, Wind wind, std::span<double> out) {
  if (padded.size() != n + kUpwindGhosts + kDownwindGhosts || out.size() != n) {
    throw std::invalid_argument("padded flux has the wrong length");
  }
  // Positive wind: node i sits at padded[i + 2]. Negative wind: at padded[i + 1],
  // and the stencil is reflected (s = -1).
  const std::size_t off = wind == Wind::positive ? kUpwindGhosts : kDownwindGhosts;
  const double s = wind == Wind::positive ? 1.0 : -1.0;
  const double* f = padded.data() + off;
  const auto at = [f](std::size_t i, long d) { return f[static_cast<long>(i) + d]; };
  const long up = wind == Wind::positive ? -1 : 1;

  switch (order) {
    case 1: {
      const double c = s / dx;
      for (std::size_t i = 0; i < n; ++i) out[i] = c * (at(i, 0) - at(i, up));
      break;
    }
    case 2: {
      const double c = s / (2.0 * dx);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = c * (3.0 * at(i, 0) - 4.0 * at(i, up) + at(i, 2 * up));
      }
      break;
    }
    case 3: {
      const double c = s / (6.0 * dx);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = c * (2.0 * at(i, -up) + 3.0 * at(i, 0) - 6.0 * at(i, up) + at(i, 2 * up));
      }
      break;
    }
    default:
      throw std::invalid_argument("upwind order must be 1, 2 or 3");
  }
}

std::vector<double> upwind_flux_divergence(std::span<const double> flux, const UniformMesh& mesh,
                                           int order, Wind wind) {
  const std::size_t n = mesh.n_cells();
  if (flux.size() != n) throw std::invalid_argument("flux length must equal n_cells");
  const std::size_t left = wind == Wind::positive ? kUpwindGhosts : kDownwindGhosts;
  std::vector<double> padded(n + kUpwindGhosts + kDownwindGhosts);
  for (std::size_t p = 0; p < padded.size(); ++p) {
    padded[p] = flux[wrap_index(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(left), n)];
  }
  std::vector<double> out(n);
  upwind_divergence_padded(padded, n, mesh.dx(), order, wind, out);
  return out;
}

FdOperator::FdOperator(ProblemSpec prob, std::shared_ptr<const UniformMesh> mesh,
                       FdScheme scheme)
    : prob_(prob),
      mesh_(std::move(mesh)),
      scheme_(scheme),
      wind_(prob.wind()),
      left_ghosts_(wind_ == Wind::positive ? kUpwindGhosts : kDownwindGhosts),
      source_(prob, mesh_->nodes()) {
  const std::size_t n = mesh_->n_cells();
  const std::size_t total = n + kUpwindGhosts + kDownwindGhosts;
  ghost_x_.resize(total);
  for (std::size_t p = 0; p < total; ++p) {
    ghost_x_[p] = mesh_->unwrapped_node(static_cast<std::int64_t>(p) -
                                        static_cast<std::int64_t>(left_ghosts_));
  }
  padded_.resize(total);
  div_.resize(n);
  src_.resize(n);
}

void FdOperator::tendency(std::span<const double> u, double t, std::span<double> dudt) const {
  const std::size_t n = mesh_->n_cells();
  if (u.size() != n || dudt.size() != n) throw std::invalid_argument("state length mismatch");
  const auto left = static_cast<std::int64_t>(left_ghosts_);
  for (std::size_t p = 0; p < padded_.size(); ++p) {
    const double up = u[wrap_index(static_cast<std::int64_t>(p) - left, n)];
    padded_[p] = prob_.flux(up, ghost_x_[p]);
  }
  upwind_divergence_padded(padded_, n, mesh_->dx(), scheme_.order(), wind_, div_);
  source_.evaluate(t, src_);
  const auto x = mesh_->nodes();
  for (std::size_t j = 0; j < n; ++j) {
    dudt[j] = src_[j] - prob_.reaction(u[j], x[j]) - div_[j];
  }
}

std::vector<double> fd_tendency(const StateField& state, double t, const ProblemSpec& prob,
                                FdScheme scheme) {
  if (state.kind != StateKind::point_values) {
    throw std::invalid_argument("finite-difference tendency needs point values");
  }
  if (!state.mesh) throw std::invalid_argument("state has no mesh");
  FdOperator op(prob, state.mesh, scheme);
  std::vector<double> out(state.data.size());
  op.tendency(state.data, t, out);
  return out;
}

}  // namespace hypconv
