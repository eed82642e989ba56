#include "conslaw/flux.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace conslaw {

namespace {

constexpr double kPi = 3.14159265358979323846;

double checked(double value, const char* what) {
  if (!std::isfinite(value)) throw ModelError(std::string("non-finite ") + what);
  return value;
}

// One-sided difference quotient using the actually representable step.
double fd_derivative(const std::function<double(double)>& fn, double v, double eps) {
  const double h0 = eps * (1.0 + std::abs(v));
  const double vp = v + h0;
  const double h = vp - v;
  return (fn(vp) - fn(v)) / h;
}

}  // namespace

FluxModel FluxModel::advection(const std::vector<double>& speeds) {
  FluxModel m;
  for (double v : speeds) {
    AxisFlux ax;
    ax.f = [v](const Position&, double, double u) { return v * u; };
    ax.dfdu = [v](const Position&, double, double) { return v; };
    ax.lipschitz_bound = std::abs(v);
    ax.critical_points = [](double, double) { return std::vector<double>{}; };
    m.axes.push_back(std::move(ax));
  }
  return m;
}

FluxModel FluxModel::burgers() {
  FluxModel m;
  AxisFlux ax;
  ax.f = [](const Position&, double, double u) { return 0.5 * u * u; };
  ax.dfdu = [](const Position&, double, double u) { return u; };
  ax.critical_points = [](double lo, double hi) {
    std::vector<double> pts;
    if (lo < 0.0 && 0.0 < hi) pts.push_back(0.0);
    return pts;
  };
  m.axes.push_back(std::move(ax));
  return m;
}

FluxModel FluxModel::sine() {
  FluxModel m;
  AxisFlux ax;
  ax.f = [](const Position&, double, double u) { return std::sin(u); };
  ax.dfdu = [](const Position&, double, double u) { return std::cos(u); };
  ax.lipschitz_bound = 1.0;
  ax.critical_points = [](double lo, double hi) {
    // stationary points of sin: pi/2 + k*pi
    std::vector<double> pts;
    const double first = std::ceil((lo - kPi / 2.0) / kPi);
    for (double k = first;; k += 1.0) {
      const double p = kPi / 2.0 + k * kPi;
      if (p >= hi) break;
      if (p > lo) pts.push_back(p);
    }
    return pts;
  };
  m.axes.push_back(std::move(ax));
  return m;
}

FluxModel FluxModel::scalar_1d(std::function<double(double)> f) {
  FluxModel m;
  AxisFlux ax;
  ax.f = [fn = std::move(f)](const Position&, double, double u) { return fn(u); };
  m.axes.push_back(std::move(ax));
  return m;
}

double eval_upwind(const FluxModel& model, int axis, double v, double /*w*/,
                   const Position& x, double t) {
  return checked(model.axes[static_cast<size_t>(axis)].f(x, t, v), "flux value");
}

double eval_lax_friedrichs(const FluxModel& model, int axis, double v, double w,
                           double lambda, const Position& x, double t) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ConfigError("Lax-Friedrichs flux needs lambda > 0");
  const auto& ax = model.axes[static_cast<size_t>(axis)];
  const double fv = checked(ax.f(x, t, v), "flux value");
  const double fw = checked(ax.f(x, t, w), "flux value");
  return 0.5 * (fv + fw) - (w - v) / (2.0 * lambda);
}

double interval_extremum(const AxisFlux& flux, double lo, double hi, bool minimize,
                         const Position& x, double t, double tol) {
  if (!(tol > 0.0)) throw ConfigError("interval extremum tolerance must be positive");
  const double sign = minimize ? 1.0 : -1.0;
  auto phi = [&](double u) { return sign * checked(flux.f(x, t, u), "flux value"); };

  if (hi <= lo) return sign * phi(lo);

  if (flux.critical_points) {
    double best = phi(lo);
    best = std::min(best, phi(hi));
    for (double p : flux.critical_points(lo, hi)) {
      if (p > lo && p < hi) best = std::min(best, phi(p));
    }
    return sign * best;
  }

  // Dense scan, then golden-section refinement inside the bracket around the
  // best sample. Exact enough for the low-degree fluxes in scope; tol-level
  // for anything smooth.
  constexpr int kScanSamples = 256;
  double best_u = lo;
  double best_phi = phi(lo);
  for (int i = 1; i <= kScanSamples; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) / kScanSamples;
    const double p = phi(u);
    if (p < best_phi) {
      best_phi = p;
      best_u = u;
    }
  }
  const double h = (hi - lo) / kScanSamples;
  double a = std::max(lo, best_u - h);
  double b = std::min(hi, best_u + h);

  constexpr double kInvGolden = 0.6180339887498949;
  double x1 = b - kInvGolden * (b - a);
  double x2 = a + kInvGolden * (b - a);
  double p1 = phi(x1);
  double p2 = phi(x2);
  for (int iter = 0; iter < 200 && (b - a) > tol * 1e-3 + 1e-15 * (1.0 + std::abs(a)); ++iter) {
    if (p1 < p2) {
      b = x2;
      x2 = x1;
      p2 = p1;
      x1 = b - kInvGolden * (b - a);
      p1 = phi(x1);
    } else {
      a = x1;
      x1 = x2;
      p1 = p2;
      x2 = a + kInvGolden * (b - a);
      p2 = phi(x2);
    }
  }
  best_phi = std::min({best_phi, p1, p2});
  return sign * best_phi;
}

double eval_godunov(const FluxModel& model, int axis, double v, double w,
                    const Position& x, double t, double tol) {
  const auto& ax = model.axes[static_cast<size_t>(axis)];
  if (v == w) return checked(ax.f(x, t, v), "flux value");
  if (v <= w) return interval_extremum(ax, v, w, true, x, t, tol);
  return interval_extremum(ax, w, v, false, x, t, tol);
}

NumericalFlux NumericalFlux::make(FluxKind kind, FluxModel model, std::vector<double> lambda) {
  NumericalFlux g;
  g.kind = kind;
  g.model = std::move(model);
  g.lambda = std::move(lambda);
  return g;
}

NumericalFlux NumericalFlux::custom(
    FluxModel model, std::function<double(int, double, double, const Position&, double)> g,
    std::vector<double> lambda) {
  NumericalFlux nf;
  nf.kind = FluxKind::custom;
  nf.model = std::move(model);
  nf.custom_g = std::move(g);
  nf.lambda = std::move(lambda);
  return nf;
}

void NumericalFlux::validate(int dim) const {
  if (static_cast<int>(model.axes.size()) < dim)
    throw ConfigError("flux model does not cover every grid axis");
  for (int l = 0; l < dim; ++l) {
    if (!model.axes[static_cast<size_t>(l)].f) throw ConfigError("flux evaluator missing");
  }
  if (static_cast<int>(lambda.size()) < dim)
    throw ConfigError("numerical flux needs lambda per axis");
  if (kind == FluxKind::lax_friedrichs) {
    for (int l = 0; l < dim; ++l) {
      if (!(lambda[static_cast<size_t>(l)] > 0.0))
        throw ConfigError("Lax-Friedrichs flux needs lambda > 0");
    }
  }
  if (kind == FluxKind::godunov && !(godunov_tol > 0.0))
    throw ConfigError("godunov tolerance must be positive");
  if (kind == FluxKind::custom && !custom_g)
    throw ConfigError("custom numerical flux needs an evaluator");
}

double NumericalFlux::eval(int axis, double v, double w, const Position& x, double t) const {
  switch (kind) {
    case FluxKind::upwind:
      return eval_upwind(model, axis, v, w, x, t);
    case FluxKind::lax_friedrichs:
      return eval_lax_friedrichs(model, axis, v, w, lambda[static_cast<size_t>(axis)], x, t);
    case FluxKind::godunov:
      return eval_godunov(model, axis, v, w, x, t, godunov_tol);
    case FluxKind::custom:
      return checked(custom_g(axis, v, w, x, t), "numerical flux value");
  }
  throw ConfigError("unknown flux kind");
}

double NumericalFlux::entropy_flux(int axis, double v, double w, double k,
                                   const Position& x, double t) const {
  return eval(axis, std::max(v, k), std::max(w, k), x, t) -
         eval(axis, std::min(v, k), std::min(w, k), x, t);
}

double NumericalFlux::scheme_increment(int axis, double a, double b, double c,
                                       const Position& x, double t) const {
  const double lam = lambda[static_cast<size_t>(axis)];
  return -lam * (eval(axis, b, c, x, t) - eval(axis, a, b, x, t));
}

double NumericalFlux::d_first(int axis, double v, double w, const Position& x, double t,
                              double fd_eps) const {
  const auto& ax = model.axes[static_cast<size_t>(axis)];
  switch (kind) {
    case FluxKind::upwind:
      if (ax.dfdu) return ax.dfdu(x, t, v);
      return fd_derivative([&](double u) { return ax.f(x, t, u); }, v, fd_eps);
    case FluxKind::lax_friedrichs: {
      const double fp = ax.dfdu ? ax.dfdu(x, t, v)
                                : fd_derivative([&](double u) { return ax.f(x, t, u); }, v, fd_eps);
      return 0.5 * fp + 0.5 / lambda[static_cast<size_t>(axis)];
    }
    case FluxKind::godunov:
    case FluxKind::custom:
      return fd_derivative([&](double u) { return eval(axis, u, w, x, t); }, v, fd_eps);
  }
  throw ConfigError("unknown flux kind");
}

double NumericalFlux::d_second(int axis, double v, double w, const Position& x, double t,
                               double fd_eps) const {
  const auto& ax = model.axes[static_cast<size_t>(axis)];
  switch (kind) {
    case FluxKind::upwind:
      return 0.0;
    case FluxKind::lax_friedrichs: {
      const double fp = ax.dfdu ? ax.dfdu(x, t, w)
                                : fd_derivative([&](double u) { return ax.f(x, t, u); }, w, fd_eps);
      return 0.5 * fp - 0.5 / lambda[static_cast<size_t>(axis)];
    }
    case FluxKind::godunov:
    case FluxKind::custom:
      return fd_derivative([&](double u) { return eval(axis, v, u, x, t); }, w, fd_eps);
  }
  throw ConfigError("unknown flux kind");
}

}  // namespace conslaw
