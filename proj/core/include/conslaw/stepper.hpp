#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/flux.hpp"
#include "conslaw/source.hpp"

namespace conslaw {

enum class SolverStrategy { newton_banded, fixed_point, newton_then_fixed_point };

struct SolverConfig {
  double residual_tol = 1e-10;  // infinity norm
  int max_iter = 50;
  SolverStrategy strategy = SolverStrategy::newton_banded;
  double fd_epsilon = 1e-7;  // Jacobian differences, scaled by 1+|u|
  int max_damping_halvings = 20;
  int max_linear_sweeps = 5000;  // Gauss-Seidel cap for the 2D linear solve

  void validate() const;
};

struct SchemeConfig {
  GridSpec grid;
  NumericalFlux flux;  // lambda per axis filled from the grid
  SourceModel source;
  SolverConfig solver;

  static SchemeConfig make(GridSpec grid, FluxKind kind, FluxModel model,
                           SourceModel source = SourceModel::zero(),
                           SolverConfig solver = {});
  // For a custom numerical flux (testing seam; also drives the corrupted-flux
  // verification example).
  static SchemeConfig make_custom(
      GridSpec grid, FluxModel model,
      std::function<double(int, double, double, const Position&, double)> g,
      SourceModel source = SourceModel::zero(), SolverConfig solver = {});

  // True when the flux is Lax-Friedrichs with a known Lipschitz bound that
  // exceeds dx/dt on some axis (monotonicity of the scheme is then lost).
  bool lf_monotonicity_warning() const;
  void validate() const;
};

struct StepReport {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  int damping_events = 0;
  double dt = 0.0;          // actual step length (shortened on partial steps)
  double source_sup = 0.0;  // max_j |q_j^{n+1}| at the accepted state
};

// Raised when the implicit solve does not converge or diverges; carries the
// best iterate seen so the caller can emit partial results.
struct SolverError : std::runtime_error {
  SolverError(const std::string& msg, StateField best, StepReport rep)
      : std::runtime_error(msg), best_iterate(std::move(best)), report(rep) {}
  StateField best_iterate;
  StepReport report;
};

// Residual of the implicit update at u_next:
//   F_j = u_j^{n+1} - u_j^n + sum_l lambda_l [g_l(u_j, u_{j+dl}) - g_l(u_{j-dl}, u_j)]
//         - dt * q_j^{n+1}
// Boundary ghosts are resolved at t_next per the grid's policies.
StateField residual(const StateField& u_next, const StateField& u_prev, double t_next,
                    const SchemeConfig& cfg, std::optional<double> dt_override = {});

// Tridiagonal matrix with optional periodic wrap entries:
// corner_upper = (row 0, col n-1), corner_lower = (row n-1, col 0).
struct TridiagonalMatrix {
  std::vector<double> sub, diag, super;
  double corner_lower = 0.0;
  double corner_upper = 0.0;
  bool periodic_wrap = false;
};

// Newton matrix of the 1D residual. For affine fluxes with analytic df/du this
// is exact; in particular for linear advection with the Lax-Friedrichs flux it
// is the tridiagonal system (-1/2 - v*lambda/2, 2, -1/2 + v*lambda/2).
TridiagonalMatrix assemble_jacobian_1d(const StateField& u, double t_next,
                                       const SchemeConfig& cfg,
                                       std::optional<double> dt_override = {});

// Solves A x = b for tridiagonal A (partial pivoting; Sherman-Morrison
// correction when periodic wrap entries are present). Throws SolverError-free
// ConfigError on dimension mismatch; singular pivots raise ModelError.
std::vector<double> solve_tridiagonal(const TridiagonalMatrix& A, std::vector<double> b);

// One implicit step from (u_prev, t) to t + dt.
std::pair<StateField, StepReport> step(const StateField& u_prev, double t,
                                       const SchemeConfig& cfg,
                                       std::optional<double> dt_override = {});

struct Snapshot {
  double t = 0.0;
  StateField state;
  StepReport report;
};

struct RunOptions {
  std::vector<double> snapshot_times;  // defaults to {t_end}
  bool record_every_step = false;      // record every level incl. t0 (verification)
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  bool completed = true;
  std::string error;
};

// Advances from t0 to t_end in steps of grid.dt, shortening the step when a
// snapshot time or t_end is not a multiple of dt; lambda is recomputed for
// shortened steps. On solver failure returns the snapshots gathered so far
// with completed = false.
RunResult run(const StateField& ic, double t0, double t_end, const SchemeConfig& cfg,
              const RunOptions& opts = {});

}  // namespace conslaw
