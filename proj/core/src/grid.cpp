#include "conslaw/grid.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace conslaw {

BoundaryPolicy BoundaryPolicy::periodic() {
  BoundaryPolicy p;
  p.lower.kind = BoundaryKind::periodic;
  p.upper.kind = BoundaryKind::periodic;
  return p;
}

BoundaryPolicy BoundaryPolicy::outflow() {
  BoundaryPolicy p;
  p.lower.kind = BoundaryKind::outflow;
  p.upper.kind = BoundaryKind::outflow;
  return p;
}

BoundaryPolicy BoundaryPolicy::dirichlet(std::function<double(double)> lower_value,
                                         std::function<double(double)> upper_value) {
  BoundaryPolicy p;
  p.lower = {BoundaryKind::dirichlet, std::move(lower_value)};
  p.upper = {BoundaryKind::dirichlet, std::move(upper_value)};
  return p;
}

BoundaryPolicy BoundaryPolicy::inflow_left(std::function<double(double)> lower_value) {
  BoundaryPolicy p;
  p.lower = {BoundaryKind::dirichlet, std::move(lower_value)};
  p.upper.kind = BoundaryKind::outflow;
  return p;
}

std::int64_t GridSpec::total_cells() const {
  std::int64_t n = 1;
  for (int l = 0; l < d; ++l) n *= n_cells[static_cast<size_t>(l)];
  return n;
}

double GridSpec::cell_measure() const {
  double m = 1.0;
  for (int l = 0; l < d; ++l) m *= dx[static_cast<size_t>(l)];
  return m;
}

void GridSpec::validate() const {
  if (d < 1 || d > kMaxDim) throw ConfigError("grid dimension must be 1 or 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive and finite");
  for (int l = 0; l < d; ++l) {
    const auto li = static_cast<size_t>(l);
    if (!(dx[li] > 0.0) || !std::isfinite(dx[li]))
      throw ConfigError("dx must be positive and finite on every axis");
    if (n_cells[li] < 3) throw ConfigError("need at least 3 cells per axis");
    if (!std::isfinite(lambda(l)) || !(lambda(l) > 0.0))
      throw ConfigError("lambda = dt/dx must be positive and finite");
    const auto& b = boundary[li];
    const bool lo_per = b.lower.kind == BoundaryKind::periodic;
    const bool hi_per = b.upper.kind == BoundaryKind::periodic;
    if (lo_per != hi_per) throw ConfigError("periodic boundary must apply to both sides of an axis");
    if (b.lower.kind == BoundaryKind::dirichlet && !b.lower.value)
      throw ConfigError("dirichlet boundary needs a value function (lower side)");
    if (b.upper.kind == BoundaryKind::dirichlet && !b.upper.value)
      throw ConfigError("dirichlet boundary needs a value function (upper side)");
  }
}

std::int64_t linear_index(const MultiIndex& multi, const GridSpec& spec) {
  std::int64_t j = 0;
  std::int64_t stride = 1;
  for (int l = 0; l < spec.d; ++l) {
    const auto li = static_cast<size_t>(l);
    if (multi[li] < 0 || multi[li] >= spec.n_cells[li])
      throw IndexError("multi-index component out of range");
    j += multi[li] * stride;
    stride *= spec.n_cells[li];
  }
  return j;
}

MultiIndex multi_index(std::int64_t j, const GridSpec& spec) {
  if (j < 0 || j >= spec.total_cells()) throw IndexError("linear index out of range");
  MultiIndex m{0, 0};
  for (int l = 0; l < spec.d; ++l) {
    const auto li = static_cast<size_t>(l);
    m[li] = j % spec.n_cells[li];
    j /= spec.n_cells[li];
  }
  return m;
}

Neighbor neighbor(std::int64_t j, int axis, int offset, const GridSpec& spec) {
  MultiIndex m = multi_index(j, spec);
  const auto li = static_cast<size_t>(axis);
  const std::int64_t n = spec.n_cells[li];
  const std::int64_t target = m[li] + offset;
  if (target >= 0 && target < n) {
    m[li] = target;
    return Neighbor{linear_index(m, spec), false, axis, 0};
  }
  const int side = target < 0 ? 0 : 1;
  const auto& bside = side == 0 ? spec.boundary[li].lower : spec.boundary[li].upper;
  if (bside.kind == BoundaryKind::periodic) {
    m[li] = (target % n + n) % n;
    return Neighbor{linear_index(m, spec), false, axis, 0};
  }
  return Neighbor{-1, true, axis, side};
}

Position cell_center(std::int64_t j, const GridSpec& spec) {
  const MultiIndex m = multi_index(j, spec);
  Position x{0.0, 0.0};
  for (int l = 0; l < spec.d; ++l) {
    const auto li = static_cast<size_t>(l);
    x[li] = spec.origin[li] + (static_cast<double>(m[li]) + 0.5) * spec.dx[li];
  }
  return x;
}

std::int64_t containing_cell(double x, int axis, const GridSpec& spec) {
  const auto li = static_cast<size_t>(axis);
  const double rel = (x - spec.origin[li]) / spec.dx[li];
  // (left, right] convention: a point exactly on an edge belongs to the cell left of it.
  const std::int64_t c = static_cast<std::int64_t>(std::ceil(rel)) - 1;
  if (c < 0 || c >= spec.n_cells[li]) return -1;
  return c;
}

StateField discretize_initial(const std::function<double(const Position&)>& u0,
                              const GridSpec& spec, DiscretizeMode mode,
                              int samples_per_axis) {
  spec.validate();
  if (mode == DiscretizeMode::inf_per_cell && samples_per_axis < 2)
    throw ConfigError("inf_per_cell needs at least 2 samples per axis");

  const std::int64_t total = spec.total_cells();
  StateField field;
  field.values.resize(static_cast<size_t>(total));
  field.level = 0;

  const int m = samples_per_axis;
  for (std::int64_t j = 0; j < total; ++j) {
    const MultiIndex mi = multi_index(j, spec);
    double value;
    if (mode == DiscretizeMode::midpoint) {
      value = u0(cell_center(j, spec));
    } else {
      // Minimum over the closed cell sampled on an m^d lattice including all edges.
      double best = std::numeric_limits<double>::infinity();
      const int m1 = spec.d > 1 ? m : 1;
      for (int i0 = 0; i0 < m; ++i0) {
        for (int i1 = 0; i1 < m1; ++i1) {
          Position x{0.0, 0.0};
          x[0] = spec.origin[0] +
                 (static_cast<double>(mi[0]) + static_cast<double>(i0) / (m - 1)) * spec.dx[0];
          if (spec.d > 1)
            x[1] = spec.origin[1] +
                   (static_cast<double>(mi[1]) + static_cast<double>(i1) / (m - 1)) * spec.dx[1];
          const double s = u0(x);
          if (!std::isfinite(s)) throw DataError("initial data produced a non-finite value");
          if (s < best) best = s;
        }
      }
      value = best;
    }
    if (!std::isfinite(value)) throw DataError("initial data produced a non-finite value");
    field[j] = value;
  }
  return field;
}

std::function<double(const Position&)> initial_1d(std::function<double(double)> u0) {
  return [f = std::move(u0)](const Position& x) { return f(x[0]); };
}

}  // namespace conslaw
