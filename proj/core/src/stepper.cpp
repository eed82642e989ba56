#include "conslaw/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conslaw {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Numerical flux with lambda matching a (possibly shortened) step length.
NumericalFlux flux_for_dt(const SchemeConfig& cfg, double dt) {
  NumericalFlux g = cfg.flux;
  g.lambda.assign(static_cast<size_t>(cfg.grid.d), 0.0);
  for (int l = 0; l < cfg.grid.d; ++l)
    g.lambda[static_cast<size_t>(l)] = dt / cfg.grid.dx[static_cast<size_t>(l)];
  return g;
}

// Neighbor state value plus the Jacobian column it depends on (-1: none).
struct ResolvedNeighbor {
  double value = 0.0;
  std::int64_t column = -1;
};

ResolvedNeighbor resolve_neighbor(const StateField& u, std::int64_t j, int axis, int offset,
                                  const GridSpec& grid, double t_next) {
  const Neighbor nb = neighbor(j, axis, offset, grid);
  if (!nb.ghost) return {u[nb.index], nb.index};
  const auto& policy = grid.boundary[static_cast<size_t>(axis)];
  const auto& side = nb.side == 0 ? policy.lower : policy.upper;
  if (side.kind == BoundaryKind::dirichlet) return {side.value(t_next), -1};
  // outflow: ghost copies the nearest interior cell, i.e. the edge cell itself
  return {u[j], j};
}

double residual_entry(const StateField& u_next, const StateField& u_prev, std::int64_t j,
                      double t_next, double dt, const NumericalFlux& g,
                      const SchemeConfig& cfg) {
  const Position x = cell_center(j, cfg.grid);
  double acc = u_next[j] - u_prev[j];
  for (int l = 0; l < cfg.grid.d; ++l) {
    const ResolvedNeighbor left = resolve_neighbor(u_next, j, l, -1, cfg.grid, t_next);
    const ResolvedNeighbor right = resolve_neighbor(u_next, j, l, +1, cfg.grid, t_next);
    const double lam = g.lambda[static_cast<size_t>(l)];
    acc += lam * (g.eval(l, u_next[j], right.value, x, t_next) -
                  g.eval(l, left.value, u_next[j], x, t_next));
  }
  acc -= dt * eval_source(cfg.source, j, cfg.grid, t_next, u_next[j]);
  return acc;
}

std::vector<double> residual_vector(const StateField& u_next, const StateField& u_prev,
                                    double t_next, double dt, const NumericalFlux& g,
                                    const SchemeConfig& cfg) {
  const std::int64_t n = cfg.grid.total_cells();
  std::vector<double> r(static_cast<size_t>(n));
  for (std::int64_t j = 0; j < n; ++j)
    r[static_cast<size_t>(j)] = residual_entry(u_next, u_prev, j, t_next, dt, g, cfg);
  return r;
}

TridiagonalMatrix assemble_tridiagonal(const StateField& u, double t_next, double dt,
                                       const NumericalFlux& g, const SchemeConfig& cfg) {
  const std::int64_t n = cfg.grid.total_cells();
  const double eps = cfg.solver.fd_epsilon;
  TridiagonalMatrix A;
  A.sub.assign(static_cast<size_t>(n), 0.0);
  A.diag.assign(static_cast<size_t>(n), 0.0);
  A.super.assign(static_cast<size_t>(n), 0.0);
  A.periodic_wrap =
      cfg.grid.boundary[0].lower.kind == BoundaryKind::periodic && n >= 3;

  const double lam = g.lambda[0];
  for (std::int64_t j = 0; j < n; ++j) {
    const auto ji = static_cast<size_t>(j);
    const Position x = cell_center(j, cfg.grid);
    const ResolvedNeighbor left = resolve_neighbor(u, j, 0, -1, cfg.grid, t_next);
    const ResolvedNeighbor right = resolve_neighbor(u, j, 0, +1, cfg.grid, t_next);

    double diag = 1.0 + lam * (g.d_first(0, u[j], right.value, x, t_next, eps) -
                               g.d_second(0, left.value, u[j], x, t_next, eps));
    diag -= dt * eval_source_dqdu(cfg.source, j, cfg.grid, t_next, u[j], eps);

    auto deposit = [&](std::int64_t column, double coeff) {
      if (column < 0) return;
      if (column == j) {
        diag += coeff;
      } else if (column == j + 1) {
        A.super[ji] = coeff;
      } else if (column == j - 1) {
        A.sub[ji] = coeff;
      } else if (j == 0 && column == n - 1) {
        A.corner_upper = coeff;
      } else if (j == n - 1 && column == 0) {
        A.corner_lower = coeff;
      }
    };
    deposit(right.column, lam * g.d_second(0, u[j], right.value, x, t_next, eps));
    deposit(left.column, -lam * g.d_first(0, left.value, u[j], x, t_next, eps));
    A.diag[ji] = diag;
  }
  return A;
}

// Plain tridiagonal LU with partial pivoting (extra superdiagonal for fill).
std::vector<double> solve_tridiagonal_core(std::vector<double> sub, std::vector<double> diag,
                                           std::vector<double> super, std::vector<double> b) {
  const std::int64_t n = static_cast<std::int64_t>(diag.size());
  std::vector<double> du2(static_cast<size_t>(n), 0.0);
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    const auto ii = static_cast<size_t>(i);
    if (std::abs(diag[ii]) >= std::abs(sub[ii + 1])) {
      if (diag[ii] == 0.0) throw ModelError("singular tridiagonal system");
      const double fact = sub[ii + 1] / diag[ii];
      diag[ii + 1] -= fact * super[ii];
      b[ii + 1] -= fact * b[ii];
      sub[ii + 1] = 0.0;
    } else {
      const double fact = diag[ii] / sub[ii + 1];
      diag[ii] = sub[ii + 1];
      const double tmp_diag = diag[ii + 1];
      diag[ii + 1] = super[ii] - fact * tmp_diag;
      du2[ii] = i + 2 < n ? super[ii + 1] : 0.0;
      if (i + 2 < n) super[ii + 1] = -fact * super[ii + 1];
      super[ii] = tmp_diag;
      std::swap(b[ii], b[ii + 1]);
      b[ii + 1] -= fact * b[ii];
      sub[ii + 1] = 0.0;
    }
  }
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  for (std::int64_t i = n - 1; i >= 0; --i) {
    const auto ii = static_cast<size_t>(i);
    if (diag[ii] == 0.0) throw ModelError("singular tridiagonal system");
    double acc = b[ii];
    if (i + 1 < n) acc -= super[ii] * x[ii + 1];
    if (i + 2 < n) acc -= du2[ii] * x[ii + 2];
    x[ii] = acc / diag[ii];
  }
  return x;
}

struct Stencil2D {
  std::vector<double> diag;
  std::array<std::vector<double>, 2> lower_coeff, upper_coeff;
  std::array<std::vector<std::int64_t>, 2> lower_col, upper_col;  // -1: no dependence
};

Stencil2D assemble_stencil_2d(const StateField& u, double t_next, double dt,
                              const NumericalFlux& g, const SchemeConfig& cfg) {
  const std::int64_t n = cfg.grid.total_cells();
  const double eps = cfg.solver.fd_epsilon;
  Stencil2D A;
  A.diag.assign(static_cast<size_t>(n), 0.0);
  for (int l = 0; l < 2; ++l) {
    A.lower_coeff[static_cast<size_t>(l)].assign(static_cast<size_t>(n), 0.0);
    A.upper_coeff[static_cast<size_t>(l)].assign(static_cast<size_t>(n), 0.0);
    A.lower_col[static_cast<size_t>(l)].assign(static_cast<size_t>(n), -1);
    A.upper_col[static_cast<size_t>(l)].assign(static_cast<size_t>(n), -1);
  }

  for (std::int64_t j = 0; j < n; ++j) {
    const auto ji = static_cast<size_t>(j);
    const Position x = cell_center(j, cfg.grid);
    double diag = 1.0 - dt * eval_source_dqdu(cfg.source, j, cfg.grid, t_next, u[j], eps);
    for (int l = 0; l < cfg.grid.d; ++l) {
      const auto li = static_cast<size_t>(l);
      const double lam = g.lambda[li];
      const ResolvedNeighbor left = resolve_neighbor(u, j, l, -1, cfg.grid, t_next);
      const ResolvedNeighbor right = resolve_neighbor(u, j, l, +1, cfg.grid, t_next);
      diag += lam * (g.d_first(l, u[j], right.value, x, t_next, eps) -
                     g.d_second(l, left.value, u[j], x, t_next, eps));
      const double cu = lam * g.d_second(l, u[j], right.value, x, t_next, eps);
      const double cl = -lam * g.d_first(l, left.value, u[j], x, t_next, eps);
      if (right.column == j) {
        diag += cu;
      } else if (right.column >= 0) {
        A.upper_coeff[li][ji] = cu;
        A.upper_col[li][ji] = right.column;
      }
      if (left.column == j) {
        diag += cl;
      } else if (left.column >= 0) {
        A.lower_coeff[li][ji] = cl;
        A.lower_col[li][ji] = left.column;
      }
    }
    A.diag[ji] = diag;
  }
  return A;
}

double stencil_row_apply(const Stencil2D& A, const std::vector<double>& x, std::int64_t j) {
  const auto ji = static_cast<size_t>(j);
  double acc = A.diag[ji] * x[ji];
  for (int l = 0; l < 2; ++l) {
    const auto li = static_cast<size_t>(l);
    const std::int64_t cl = A.lower_col[li][ji];
    const std::int64_t cu = A.upper_col[li][ji];
    if (cl >= 0) acc += A.lower_coeff[li][ji] * x[static_cast<size_t>(cl)];
    if (cu >= 0) acc += A.upper_coeff[li][ji] * x[static_cast<size_t>(cu)];
  }
  return acc;
}

// Gauss-Seidel sweeps (alternating direction) on the 5-point system A x = b.
std::vector<double> solve_gauss_seidel(const Stencil2D& A, const std::vector<double>& b,
                                       const SolverConfig& solver) {
  const std::int64_t n = static_cast<std::int64_t>(b.size());
  std::vector<double> x(b.size(), 0.0);
  const double bnorm = inf_norm(b);
  const double tol = std::max(1e-14, 0.05 * solver.residual_tol);
  if (bnorm <= tol) return x;

  auto relax_row = [&](std::int64_t j) {
    const auto ji = static_cast<size_t>(j);
    if (A.diag[ji] == 0.0) throw ModelError("zero diagonal in Gauss-Seidel sweep");
    double acc = b[ji];
    for (int l = 0; l < 2; ++l) {
      const auto li = static_cast<size_t>(l);
      const std::int64_t cl = A.lower_col[li][ji];
      const std::int64_t cu = A.upper_col[li][ji];
      if (cl >= 0) acc -= A.lower_coeff[li][ji] * x[static_cast<size_t>(cl)];
      if (cu >= 0) acc -= A.upper_coeff[li][ji] * x[static_cast<size_t>(cu)];
    }
    x[ji] = acc / A.diag[ji];
  };

  double res = bnorm;
  for (int sweep = 0; sweep < solver.max_linear_sweeps; ++sweep) {
    if (sweep % 2 == 0) {
      for (std::int64_t j = 0; j < n; ++j) relax_row(j);
    } else {
      for (std::int64_t j = n - 1; j >= 0; --j) relax_row(j);
    }
    res = 0.0;
    for (std::int64_t j = 0; j < n; ++j)
      res = std::max(res, std::abs(b[static_cast<size_t>(j)] - stencil_row_apply(A, x, j)));
    if (res <= tol) return x;
  }
  if (!(res < bnorm) || !all_finite(x))
    throw ModelError("Gauss-Seidel iteration made no progress");
  return x;  // inexact direction; the damped Newton loop judges it
}

double source_sup_at(const StateField& u, double t_next, const SchemeConfig& cfg) {
  double m = 0.0;
  for (std::int64_t j = 0; j < u.size(); ++j)
    m = std::max(m, std::abs(eval_source(cfg.source, j, cfg.grid, t_next, u[j])));
  return m;
}

std::pair<StateField, StepReport> solve_newton(const StateField& u_prev, double t_next,
                                               double dt, const NumericalFlux& g,
                                               const SchemeConfig& cfg) {
  const SolverConfig& solver = cfg.solver;
  StateField u = u_prev;
  std::vector<double> r = residual_vector(u, u_prev, t_next, dt, g, cfg);
  double rn = inf_norm(r);

  StepReport report;
  report.dt = dt;

  while (rn > solver.residual_tol) {
    if (report.iterations >= solver.max_iter) {
      report.final_residual = rn;
      throw SolverError("Newton did not converge within max_iter", u, report);
    }

    std::vector<double> delta;
    if (cfg.grid.d == 1) {
      const TridiagonalMatrix A = assemble_tridiagonal(u, t_next, dt, g, cfg);
      std::vector<double> rhs(r.size());
      for (size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
      delta = solve_tridiagonal(A, std::move(rhs));
    } else {
      const Stencil2D A = assemble_stencil_2d(u, t_next, dt, g, cfg);
      std::vector<double> rhs(r.size());
      for (size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
      delta = solve_gauss_seidel(A, rhs, solver);
    }

    // Backtracking: halve the step until the residual norm drops.
    double alpha = 1.0;
    bool accepted = false;
    StateField u_try = u;
    std::vector<double> r_try;
    double rn_try = rn;
    for (int h = 0; h <= solver.max_damping_halvings; ++h) {
      for (std::int64_t j = 0; j < u.size(); ++j)
        u_try[j] = u[j] + alpha * delta[static_cast<size_t>(j)];
      if (all_finite(u_try.values)) {
        r_try = residual_vector(u_try, u_prev, t_next, dt, g, cfg);
        rn_try = inf_norm(r_try);
        if (rn_try < rn || rn_try <= solver.residual_tol) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
      ++report.damping_events;
    }
    if (!accepted) {
      report.final_residual = rn;
      throw SolverError("Newton step rejected after maximal damping", u, report);
    }
    u = std::move(u_try);
    r = std::move(r_try);
    rn = rn_try;
    ++report.iterations;
    if (!std::isfinite(rn)) {
      report.final_residual = rn;
      throw SolverError("Newton iterate diverged", u, report);
    }
  }

  report.final_residual = rn;
  report.converged = true;
  return {std::move(u), report};
}

std::pair<StateField, StepReport> solve_fixed_point(const StateField& u_prev, double t_next,
                                                    double dt, const NumericalFlux& g,
                                                    const SchemeConfig& cfg) {
  const SolverConfig& solver = cfg.solver;
  const std::int64_t n = cfg.grid.total_cells();
  StateField u = u_prev;
  StepReport report;
  report.dt = dt;

  double rn = inf_norm(residual_vector(u, u_prev, t_next, dt, g, cfg));
  while (rn > solver.residual_tol) {
    if (report.iterations >= solver.max_iter) {
      report.final_residual = rn;
      throw SolverError("fixed-point iteration did not converge within max_iter", u, report);
    }
    // Nonlinear Jacobi: every state on the right-hand side is from sweep m.
    StateField u_new = u;
    for (std::int64_t j = 0; j < n; ++j) {
      const Position x = cell_center(j, cfg.grid);
      double acc = u_prev[j];
      for (int l = 0; l < cfg.grid.d; ++l) {
        const ResolvedNeighbor left = resolve_neighbor(u, j, l, -1, cfg.grid, t_next);
        const ResolvedNeighbor right = resolve_neighbor(u, j, l, +1, cfg.grid, t_next);
        acc += g.scheme_increment(l, left.value, u[j], right.value, x, t_next);
      }
      acc += dt * eval_source(cfg.source, j, cfg.grid, t_next, u[j]);
      u_new[j] = acc;
    }
    if (!all_finite(u_new.values)) {
      report.final_residual = rn;
      throw SolverError("fixed-point iterate diverged", u, report);
    }
    u = std::move(u_new);
    rn = inf_norm(residual_vector(u, u_prev, t_next, dt, g, cfg));
    ++report.iterations;
  }

  report.final_residual = rn;
  report.converged = true;
  return {std::move(u), report};
}

}  // namespace

void SolverConfig::validate() const {
  if (!(residual_tol > 0.0)) throw ConfigError("residual_tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(fd_epsilon > 0.0)) throw ConfigError("fd_epsilon must be positive");
  if (max_damping_halvings < 0) throw ConfigError("max_damping_halvings must be nonnegative");
  if (max_linear_sweeps < 1) throw ConfigError("max_linear_sweeps must be at least 1");
}

SchemeConfig SchemeConfig::make(GridSpec grid, FluxKind kind, FluxModel model,
                                SourceModel source, SolverConfig solver) {
  SchemeConfig cfg;
  cfg.grid = std::move(grid);
  std::vector<double> lambda;
  for (int l = 0; l < cfg.grid.d; ++l) lambda.push_back(cfg.grid.lambda(l));
  cfg.flux = NumericalFlux::make(kind, std::move(model), std::move(lambda));
  cfg.source = std::move(source);
  cfg.solver = solver;
  cfg.validate();
  return cfg;
}

SchemeConfig SchemeConfig::make_custom(
    GridSpec grid, FluxModel model,
    std::function<double(int, double, double, const Position&, double)> g, SourceModel source,
    SolverConfig solver) {
  SchemeConfig cfg;
  cfg.grid = std::move(grid);
  std::vector<double> lambda;
  for (int l = 0; l < cfg.grid.d; ++l) lambda.push_back(cfg.grid.lambda(l));
  cfg.flux = NumericalFlux::custom(std::move(model), std::move(g), std::move(lambda));
  cfg.source = std::move(source);
  cfg.solver = solver;
  cfg.validate();
  return cfg;
}

bool SchemeConfig::lf_monotonicity_warning() const {
  if (flux.kind != FluxKind::lax_friedrichs) return false;
  for (int l = 0; l < grid.d; ++l) {
    const auto& ax = flux.model.axes[static_cast<size_t>(l)];
    if (ax.lipschitz_bound &&
        *ax.lipschitz_bound > grid.dx[static_cast<size_t>(l)] / grid.dt)
      return true;
  }
  return false;
}

void SchemeConfig::validate() const {
  grid.validate();
  flux.validate(grid.d);
  source.validate(grid);
  solver.validate();
}

StateField residual(const StateField& u_next, const StateField& u_prev, double t_next,
                    const SchemeConfig& cfg, std::optional<double> dt_override) {
  if (u_next.size() != cfg.grid.total_cells() || u_prev.size() != cfg.grid.total_cells())
    throw DataError("state size does not match the grid");
  const double dt = dt_override.value_or(cfg.grid.dt);
  const NumericalFlux g = flux_for_dt(cfg, dt);
  StateField r;
  r.level = u_next.level;
  r.values = residual_vector(u_next, u_prev, t_next, dt, g, cfg);
  return r;
}

TridiagonalMatrix assemble_jacobian_1d(const StateField& u, double t_next,
                                       const SchemeConfig& cfg,
                                       std::optional<double> dt_override) {
  if (cfg.grid.d != 1) throw ConfigError("assemble_jacobian_1d requires a 1D grid");
  const double dt = dt_override.value_or(cfg.grid.dt);
  const NumericalFlux g = flux_for_dt(cfg, dt);
  return assemble_tridiagonal(u, t_next, dt, g, cfg);
}

std::vector<double> solve_tridiagonal(const TridiagonalMatrix& A, std::vector<double> b) {
  const std::int64_t n = static_cast<std::int64_t>(A.diag.size());
  if (static_cast<std::int64_t>(b.size()) != n)
    throw ConfigError("tridiagonal solve: dimension mismatch");
  if (!A.periodic_wrap || (A.corner_lower == 0.0 && A.corner_upper == 0.0))
    return solve_tridiagonal_core(A.sub, A.diag, A.super, std::move(b));

  // Sherman-Morrison: write the cyclic matrix as T + u v^T with
  // u = (alpha, 0, ..., 0, corner_lower)^T, v = (1, 0, ..., 0, corner_upper/alpha)^T.
  const auto ni = static_cast<size_t>(n);
  std::vector<double> diag = A.diag;
  double alpha = -A.diag[0];
  if (alpha == 0.0) alpha = 1.0;
  diag[0] -= alpha;
  diag[ni - 1] -= A.corner_lower * A.corner_upper / alpha;

  std::vector<double> uvec(ni, 0.0);
  uvec[0] = alpha;
  uvec[ni - 1] = A.corner_lower;

  std::vector<double> y = solve_tridiagonal_core(A.sub, diag, A.super, std::move(b));
  std::vector<double> z = solve_tridiagonal_core(A.sub, diag, A.super, std::move(uvec));

  const double v_dot_y = y[0] + (A.corner_upper / alpha) * y[ni - 1];
  const double v_dot_z = z[0] + (A.corner_upper / alpha) * z[ni - 1];
  const double denom = 1.0 + v_dot_z;
  if (denom == 0.0 || !std::isfinite(denom))
    throw ModelError("singular cyclic tridiagonal system");
  const double scale = v_dot_y / denom;
  for (size_t i = 0; i < ni; ++i) y[i] -= scale * z[i];
  return y;
}

std::pair<StateField, StepReport> step(const StateField& u_prev, double t,
                                       const SchemeConfig& cfg,
                                       std::optional<double> dt_override) {
  cfg.validate();
  if (u_prev.size() != cfg.grid.total_cells())
    throw DataError("state size does not match the grid");
  if (!all_finite(u_prev.values)) throw DataError("previous state contains non-finite values");
  const double dt = dt_override.value_or(cfg.grid.dt);
  if (!(dt > 0.0)) throw ConfigError("step length must be positive");
  const double t_next = t + dt;
  const NumericalFlux g = flux_for_dt(cfg, dt);

  std::pair<StateField, StepReport> out;
  switch (cfg.solver.strategy) {
    case SolverStrategy::newton_banded:
      out = solve_newton(u_prev, t_next, dt, g, cfg);
      break;
    case SolverStrategy::fixed_point:
      out = solve_fixed_point(u_prev, t_next, dt, g, cfg);
      break;
    case SolverStrategy::newton_then_fixed_point:
      try {
        out = solve_newton(u_prev, t_next, dt, g, cfg);
      } catch (const SolverError&) {
        out = solve_fixed_point(u_prev, t_next, dt, g, cfg);
      }
      break;
  }
  out.first.level = u_prev.level + 1;
  out.second.source_sup = source_sup_at(out.first, t_next, cfg);
  return out;
}

RunResult run(const StateField& ic, double t0, double t_end, const SchemeConfig& cfg,
              const RunOptions& opts) {
  cfg.validate();
  if (ic.size() != cfg.grid.total_cells()) throw DataError("initial state does not match grid");
  if (t_end < t0) throw ConfigError("t_end must not precede t0");

  const double time_tol = 1e-9 * (1.0 + std::abs(t_end));
  std::vector<double> targets = opts.snapshot_times;
  for (double s : targets) {
    if (s < t0 - time_tol || s > t_end + time_tol)
      throw ConfigError("snapshot time outside [t0, t_end]");
  }
  targets.push_back(t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end(),
                            [&](double a, double b) { return std::abs(a - b) <= time_tol; }),
                targets.end());

  RunResult result;
  const StepReport trivial{0, 0.0, true, 0, 0.0, 0.0};
  if (opts.record_every_step || std::abs(targets.front() - t0) <= time_tol)
    result.snapshots.push_back({t0, ic, trivial});
  if (t_end - t0 <= time_tol) {
    if (result.snapshots.empty()) result.snapshots.push_back({t0, ic, trivial});
    return result;
  }

  double t = t0;
  StateField u = ic;
  for (double target : targets) {
    if (target - t0 <= time_tol) continue;
    StepReport last_report = trivial;
    while (t < target - time_tol) {
      const double remaining = target - t;
      double dt_step = cfg.grid.dt;
      std::optional<double> dt_override;
      if (remaining < cfg.grid.dt * (1.0 - 1e-12)) {
        dt_step = remaining;
        dt_override = remaining;
      }
      try {
        auto [u_next, report] = step(u, t, cfg, dt_override);
        u = std::move(u_next);
        t += dt_step;
        if (std::abs(t - target) <= time_tol) t = target;
        last_report = report;
        if (opts.record_every_step) result.snapshots.push_back({t, u, report});
      } catch (const SolverError& err) {
        result.completed = false;
        result.error = err.what();
        return result;
      }
    }
    if (!opts.record_every_step) result.snapshots.push_back({target, u, last_report});
  }
  return result;
}

}  // namespace conslaw
