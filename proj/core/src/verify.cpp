#include "conslaw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

namespace conslaw {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

NumericalFlux flux_with_dt(const SchemeConfig& cfg, double dt) {
  NumericalFlux g = cfg.flux;
  g.lambda.assign(static_cast<size_t>(cfg.grid.d), 0.0);
  for (int l = 0; l < cfg.grid.d; ++l)
    g.lambda[static_cast<size_t>(l)] = dt / cfg.grid.dx[static_cast<size_t>(l)];
  return g;
}

struct NeighborState {
  double value = 0.0;
  bool ghost = false;
};

NeighborState neighbor_state(const StateField& u, std::int64_t j, int axis, int offset,
                             const GridSpec& grid, double t) {
  const Neighbor nb = neighbor(j, axis, offset, grid);
  if (!nb.ghost) return {u[nb.index], false};
  const auto& policy = grid.boundary[static_cast<size_t>(axis)];
  const auto& side = nb.side == 0 ? policy.lower : policy.upper;
  if (side.kind == BoundaryKind::dirichlet) return {side.value(t), true};
  return {u[j], true};
}

double fd_x_derivative(const AxisFlux& ax, int axis, Position x, double t, double u) {
  const auto ai = static_cast<size_t>(axis);
  const double h = 1e-6 * (1.0 + std::abs(x[ai]));
  Position xp = x, xm = x;
  xp[ai] += h;
  xm[ai] -= h;
  return (ax.f(xp, t, u) - ax.f(xm, t, u)) / (xp[ai] - xm[ai]);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MonotonicityReport check_flux_monotonicity(const NumericalFlux& g, int axis, SampleBox box,
                                           long n_samples, const std::vector<double>& delta_set,
                                           std::uint64_t seed, double tol) {
  if (n_samples < 1) throw ConfigError("monotonicity check needs n_samples >= 1");
  for (double d : delta_set) {
    if (!(d > 0.0)) throw ConfigError("delta_set entries must be positive");
  }

  MonotonicityReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(box.lo, box.hi);

  auto test_triple = [&](double a, double b, double c) {
    ++report.samples_tested;
    const double base = g.scheme_increment(axis, a, b, c);
    for (double d : delta_set) {
      const double raise_a = g.scheme_increment(axis, a + d, b, c) - base;
      if (raise_a < -tol)
        report.condition18_violations.push_back({axis, a, b, c, d, -raise_a});
      const double raise_c = g.scheme_increment(axis, a, b, c + d) - base;
      if (raise_c < -tol)
        report.condition19_violations.push_back({axis, a, b, c, d, -raise_c});
    }
  };

  const double mid = 0.5 * (box.lo + box.hi);
  for (double a : {box.lo, mid, box.hi})
    for (double b : {box.lo, mid, box.hi})
      for (double c : {box.lo, mid, box.hi}) test_triple(a, b, c);
  for (long s = 0; s < n_samples; ++s) test_triple(uni(rng), uni(rng), uni(rng));

  report.pass =
      report.condition18_violations.empty() && report.condition19_violations.empty();
  return report;
}

double ordered_pair_violation(const SchemeConfig& cfg, const StateField& v0,
                              const StateField& w0, int steps, double t0) {
  StateField v = v0, w = w0;
  double t = t0;
  double worst = 0.0;
  for (int s = 0; s < steps; ++s) {
    auto [vn, vrep] = step(v, t, cfg);
    auto [wn, wrep] = step(w, t, cfg);
    v = std::move(vn);
    w = std::move(wn);
    t += cfg.grid.dt;
    for (std::int64_t j = 0; j < v.size(); ++j) worst = std::max(worst, w[j] - v[j]);
  }
  return std::max(worst, 0.0);
}

ComparisonReport check_comparison(const SchemeConfig& cfg, int trials, int steps,
                                  std::uint64_t seed, SampleBox box, double tol) {
  if (trials < 1 || steps < 1) throw ConfigError("comparison check needs trials, steps >= 1");
  ComparisonReport report;
  report.trials = trials;
  report.steps = steps;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(box.lo, box.hi);
  std::uniform_real_distribution<double> bump(0.0, 0.25 * (box.hi - box.lo));

  const std::int64_t n = cfg.grid.total_cells();
  for (int trial = 0; trial < trials; ++trial) {
    StateField w;
    w.values.resize(static_cast<size_t>(n));
    StateField v = w;
    for (std::int64_t j = 0; j < n; ++j) {
      w[j] = uni(rng);
      v[j] = w[j] + bump(rng);
    }
    StateField vs = v, ws = w;
    double t = 0.0;
    for (int s = 0; s < steps; ++s) {
      auto [vn, vrep] = step(vs, t, cfg);
      auto [wn, wrep] = step(ws, t, cfg);
      vs = std::move(vn);
      ws = std::move(wn);
      t += cfg.grid.dt;
      for (std::int64_t j = 0; j < n; ++j) {
        const double gap = ws[j] - vs[j];
        if (gap > report.max_violation) {
          report.max_violation = gap;
          report.worst_trial = trial;
          report.worst_step = s;
          report.worst_cell = j;
        }
      }
    }
  }
  report.pass = report.max_violation <= tol;
  return report;
}

std::vector<double> default_k_values(const std::vector<Snapshot>& traj, int count) {
  if (traj.empty()) throw DataError("trajectory is empty");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& snap : traj) {
    for (double u : snap.state.values) {
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
  }
  std::set<double> ks;
  for (int i = 0; i < count; ++i)
    ks.insert(lo - 1.0 + (hi - lo + 2.0) * static_cast<double>(i) / (count - 1));
  for (double u : traj.front().state.values) ks.insert(u);
  return {ks.begin(), ks.end()};
}

EntropyReport check_discrete_entropy(const std::vector<Snapshot>& traj, const SchemeConfig& cfg,
                                     std::vector<double> k_values, double tol) {
  if (traj.size() < 2) throw DataError("entropy check needs at least two trajectory levels");
  if (k_values.empty()) k_values = default_k_values(traj);

  EntropyReport report;
  report.k_samples = k_values;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  report.worst_boundary = -std::numeric_limits<double>::infinity();

  const GridSpec& grid = cfg.grid;
  const std::int64_t n = grid.total_cells();
  const bool scenario2 = cfg.flux.model.scenario == 2 || cfg.source.scenario == 2;

  for (size_t lev = 1; lev < traj.size(); ++lev) {
    const Snapshot& prev = traj[lev - 1];
    const Snapshot& next = traj[lev];
    const double dt = next.t - prev.t;
    if (!(dt > 0.0)) continue;
    const double t_next = next.t;
    const NumericalFlux g = flux_with_dt(cfg, dt);

    for (std::int64_t j = 0; j < n; ++j) {
      const Position x = cell_center(j, grid);
      const double uj = next.state[j];
      const double q = eval_source(cfg.source, j, grid, t_next, uj);

      bool boundary = false;
      double flux_sum = 0.0;
      for (int l = 0; l < grid.d; ++l) {
        const NeighborState left = neighbor_state(next.state, j, l, -1, grid, t_next);
        const NeighborState right = neighbor_state(next.state, j, l, +1, grid, t_next);
        boundary = boundary || left.ghost || right.ghost;
        for (double k : k_values) {
          // accumulated separately per k below; the flux part depends on k
          (void)k;
        }
        (void)flux_sum;
      }

      for (double k : k_values) {
        double lhs = (std::abs(uj - k) - std::abs(prev.state[j] - k)) / dt;
        double source_term;
        if (scenario2) {
          source_term = 0.0;
          for (int l = 0; l < grid.d; ++l)
            source_term +=
                sgn(uj - k) *
                (q - fd_x_derivative(cfg.flux.model.axes[static_cast<size_t>(l)], l, x, t_next, uj));
        } else {
          source_term = sgn(uj - k) * q;
        }
        bool cell_boundary = false;
        for (int l = 0; l < grid.d; ++l) {
          const NeighborState left = neighbor_state(next.state, j, l, -1, grid, t_next);
          const NeighborState right = neighbor_state(next.state, j, l, +1, grid, t_next);
          cell_boundary = cell_boundary || left.ghost || right.ghost;
          lhs += (g.entropy_flux(l, uj, right.value, k, x, t_next) -
                  g.entropy_flux(l, left.value, uj, k, x, t_next)) /
                 grid.dx[static_cast<size_t>(l)];
        }
        lhs -= source_term;

        if (cell_boundary) {
          report.worst_boundary = std::max(report.worst_boundary, lhs);
        } else if (lhs > report.worst_violation) {
          report.worst_violation = lhs;
          report.worst = {j, static_cast<int>(lev), k};
        }
      }
    }
  }

  report.pass = report.worst_violation <= tol;
  return report;
}

StabilityReport check_linf_stability(const std::vector<Snapshot>& traj, double tol) {
  if (traj.empty()) throw DataError("trajectory is empty");
  StabilityReport report;
  const auto& initial = traj.front().state.values;
  report.min_initial = *std::min_element(initial.begin(), initial.end());
  report.max_initial = *std::max_element(initial.begin(), initial.end());
  report.min_seen = report.min_initial;
  report.max_seen = report.max_initial;

  bool ok = true;
  double m = 0.0;
  for (size_t lev = 1; lev < traj.size(); ++lev) {
    const auto& snap = traj[lev];
    m += snap.report.dt * snap.report.source_sup;
    for (double u : snap.state.values) {
      report.min_seen = std::min(report.min_seen, u);
      report.max_seen = std::max(report.max_seen, u);
      if (u < report.min_initial - m - tol || u > report.max_initial + m + tol) ok = false;
    }
  }
  report.accumulated_source = m;
  report.pass = ok;
  return report;
}

KeyValues to_key_values(const MonotonicityReport& r, const std::string& prefix) {
  KeyValues kv;
  kv.emplace_back(prefix + ".pass", r.pass ? "true" : "false");
  kv.emplace_back(prefix + ".samples_tested", std::to_string(r.samples_tested));
  kv.emplace_back(prefix + ".condition18_violations",
                  std::to_string(r.condition18_violations.size()));
  kv.emplace_back(prefix + ".condition19_violations",
                  std::to_string(r.condition19_violations.size()));
  auto add_witness = [&](const char* name, const std::vector<MonotonicityViolation>& list) {
    if (list.empty()) return;
    const auto worst =
        *std::max_element(list.begin(), list.end(),
                          [](const auto& x, const auto& y) { return x.deficit < y.deficit; });
    kv.emplace_back(prefix + "." + name + ".a", format_double(worst.a));
    kv.emplace_back(prefix + "." + name + ".b", format_double(worst.b));
    kv.emplace_back(prefix + "." + name + ".c", format_double(worst.c));
    kv.emplace_back(prefix + "." + name + ".delta", format_double(worst.delta));
    kv.emplace_back(prefix + "." + name + ".deficit", format_double(worst.deficit));
  };
  add_witness("worst18", r.condition18_violations);
  add_witness("worst19", r.condition19_violations);
  return kv;
}

KeyValues to_key_values(const ComparisonReport& r, const std::string& prefix) {
  KeyValues kv;
  kv.emplace_back(prefix + ".pass", r.pass ? "true" : "false");
  kv.emplace_back(prefix + ".trials", std::to_string(r.trials));
  kv.emplace_back(prefix + ".steps", std::to_string(r.steps));
  kv.emplace_back(prefix + ".max_violation", format_double(r.max_violation));
  kv.emplace_back(prefix + ".worst_trial", std::to_string(r.worst_trial));
  kv.emplace_back(prefix + ".worst_step", std::to_string(r.worst_step));
  kv.emplace_back(prefix + ".worst_cell", std::to_string(r.worst_cell));
  return kv;
}

KeyValues to_key_values(const EntropyReport& r, const std::string& prefix) {
  KeyValues kv;
  kv.emplace_back(prefix + ".pass", r.pass ? "true" : "false");
  kv.emplace_back(prefix + ".worst_violation", format_double(r.worst_violation));
  kv.emplace_back(prefix + ".worst_cell", std::to_string(r.worst.cell));
  kv.emplace_back(prefix + ".worst_step", std::to_string(r.worst.step));
  kv.emplace_back(prefix + ".worst_k", format_double(r.worst.k));
  kv.emplace_back(prefix + ".worst_boundary", format_double(r.worst_boundary));
  kv.emplace_back(prefix + ".k_count", std::to_string(r.k_samples.size()));
  return kv;
}

KeyValues to_key_values(const StabilityReport& r, const std::string& prefix) {
  KeyValues kv;
  kv.emplace_back(prefix + ".pass", r.pass ? "true" : "false");
  kv.emplace_back(prefix + ".min_initial", format_double(r.min_initial));
  kv.emplace_back(prefix + ".max_initial", format_double(r.max_initial));
  kv.emplace_back(prefix + ".min_seen", format_double(r.min_seen));
  kv.emplace_back(prefix + ".max_seen", format_double(r.max_seen));
  kv.emplace_back(prefix + ".accumulated_source", format_double(r.accumulated_source));
  return kv;
}

}  // namespace conslaw
