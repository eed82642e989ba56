#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "conslaw/errors.hpp"

namespace conslaw {

inline constexpr int kMaxDim = 2;

// Spatial point. Components beyond the grid dimension stay zero.
using Position = std::array<double, kMaxDim>;
using MultiIndex = std::array<std::int64_t, kMaxDim>;

enum class BoundaryKind { dirichlet, outflow, periodic };

struct BoundarySide {
  BoundaryKind kind = BoundaryKind::outflow;
  // Ghost value as a function of time; consulted for dirichlet only.
  std::function<double(double)> value;
};

// Closure of the truncated domain, one policy per axis. Periodic must be
// set on both sides of an axis; dirichlet and outflow may be mixed.
struct BoundaryPolicy {
  BoundarySide lower;
  BoundarySide upper;

  static BoundaryPolicy periodic();
  static BoundaryPolicy outflow();
  static BoundaryPolicy dirichlet(std::function<double(double)> lower_value,
                                  std::function<double(double)> upper_value);
  // Dirichlet inflow on the lower side, extrapolation on the upper side.
  static BoundaryPolicy inflow_left(std::function<double(double)> lower_value);
};

// Equidistant grid. Cell c along an axis covers the half-open interval
// (origin + c*dx, origin + (c+1)*dx]; cell centers sit at origin + (c+1/2)*dx.
struct GridSpec {
  int d = 1;
  std::array<double, kMaxDim> dx{1.0, 1.0};
  double dt = 1.0;
  std::array<std::int64_t, kMaxDim> n_cells{3, 1};
  std::array<double, kMaxDim> origin{0.0, 0.0};
  std::array<BoundaryPolicy, kMaxDim> boundary{BoundaryPolicy::outflow(),
                                               BoundaryPolicy::outflow()};

  double lambda(int axis) const { return dt / dx[static_cast<size_t>(axis)]; }
  std::int64_t total_cells() const;
  double cell_measure() const;  // product of dx over active axes
  void validate() const;        // throws ConfigError on violated invariants
};

struct StateField {
  std::vector<double> values;
  int level = 0;

  double& operator[](std::int64_t j) { return values[static_cast<size_t>(j)]; }
  double operator[](std::int64_t j) const { return values[static_cast<size_t>(j)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

// Row-major linear numbering, first axis fastest: j = i0 + n0*i1.
std::int64_t linear_index(const MultiIndex& multi, const GridSpec& spec);
MultiIndex multi_index(std::int64_t j, const GridSpec& spec);

// Neighbor lookup result. Either an interior (possibly wrapped) cell index
// or a ghost marker; the stepper fills ghost values per boundary policy.
struct Neighbor {
  std::int64_t index = -1;
  bool ghost = false;
  int axis = 0;
  int side = 0;  // 0 = lower edge, 1 = upper edge (meaningful when ghost)
};

Neighbor neighbor(std::int64_t j, int axis, int offset, const GridSpec& spec);

Position cell_center(std::int64_t j, const GridSpec& spec);

// Cell index along one axis containing coordinate x, using the half-open
// (left, right] convention. Returns -1 when x is outside the grid.
std::int64_t containing_cell(double x, int axis, const GridSpec& spec);

enum class DiscretizeMode { inf_per_cell, midpoint };

// Discretizes initial data onto the grid. inf_per_cell approximates the cell
// infimum by the minimum over samples_per_axis equally spaced points per axis
// (endpoints included, so piecewise monotone data is resolved exactly);
// midpoint evaluates at the cell center.
StateField discretize_initial(const std::function<double(const Position&)>& u0,
                              const GridSpec& spec, DiscretizeMode mode,
                              int samples_per_axis = 8);

// Adapts scalar 1D initial data to the Position signature.
std::function<double(const Position&)> initial_1d(std::function<double(double)> u0);

}  // namespace conslaw
