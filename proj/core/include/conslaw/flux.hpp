#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "conslaw/grid.hpp"

namespace conslaw {

// Physical flux along one axis, f(x, t, u). Models that depend only on u
// ignore x and t. critical_points(lo, hi), when set, returns every interior
// stationary point of u -> f(x,t,u) in [lo, hi]; a callable returning an
// empty list asserts there are none, an unset callable means "unknown".
struct AxisFlux {
  std::function<double(const Position&, double, double)> f;
  std::optional<double> lipschitz_bound;
  std::function<std::vector<double>(double, double)> critical_points;
  std::function<double(const Position&, double, double)> dfdu;  // optional analytic d/du
};

struct FluxModel {
  std::vector<AxisFlux> axes;
  int scenario = 1;  // 2 when f genuinely depends on (x, t)

  static FluxModel advection(const std::vector<double>& speeds);
  static FluxModel burgers();
  static FluxModel sine();  // f(u) = sin(u); non-convex monotonicity stress case
  // Plain scalar flux with no derivative or critical-point information
  // (exercises the finite-difference and scan fallbacks).
  static FluxModel scalar_1d(std::function<double(double)> f);
};

double eval_upwind(const FluxModel& model, int axis, double v, double w,
                   const Position& x, double t);
double eval_lax_friedrichs(const FluxModel& model, int axis, double v, double w,
                           double lambda, const Position& x, double t);
double eval_godunov(const FluxModel& model, int axis, double v, double w,
                    const Position& x, double t, double tol);

// Extremum of u -> f(x,t,u) over [lo, hi] within absolute tolerance tol.
// Uses the model's critical points when available; otherwise a dense scan
// plus golden-section refinement around the best sample.
double interval_extremum(const AxisFlux& flux, double lo, double hi, bool minimize,
                         const Position& x, double t, double tol);

enum class FluxKind { upwind, lax_friedrichs, godunov, custom };

// A consistent two-point numerical flux g(v, w) bound to a flux model.
// lambda is the per-axis dt/dx ratio; it enters the Lax-Friedrichs formula
// and the scheme increment used by the monotonicity conditions.
struct NumericalFlux {
  FluxKind kind = FluxKind::upwind;
  FluxModel model;
  std::vector<double> lambda;
  double godunov_tol = 1e-10;
  std::function<double(int, double, double, const Position&, double)> custom_g;

  static NumericalFlux make(FluxKind kind, FluxModel model,
                            std::vector<double> lambda = {1.0});
  static NumericalFlux custom(FluxModel model,
                              std::function<double(int, double, double, const Position&, double)> g,
                              std::vector<double> lambda = {1.0});

  double eval(int axis, double v, double w, const Position& x = {}, double t = 0.0) const;

  // Crandall-Majda numerical entropy flux G(v,w;k) = g(v∨k, w∨k) − g(v∧k, w∧k).
  double entropy_flux(int axis, double v, double w, double k,
                      const Position& x = {}, double t = 0.0) const;

  // Per-axis update increment −λ[g(b,c) − g(a,b)] applied to the middle cell;
  // the two monotonicity conditions say this never decreases when a or c grows.
  double scheme_increment(int axis, double a, double b, double c,
                          const Position& x = {}, double t = 0.0) const;

  // Partial derivatives of g in its two state arguments. Analytic when the
  // model carries dfdu and the kind permits; one-sided finite differences
  // with step fd_eps*(1+|arg|) otherwise.
  double d_first(int axis, double v, double w, const Position& x, double t,
                 double fd_eps) const;
  double d_second(int axis, double v, double w, const Position& x, double t,
                  double fd_eps) const;

  void validate(int dim) const;  // throws ConfigError
};

}  // namespace conslaw
