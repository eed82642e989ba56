#include "conslaw/source.hpp"

#include <cmath>
#include <utility>

namespace conslaw {

namespace {

double checked(double value) {
  if (!std::isfinite(value)) throw ModelError("non-finite source value");
  return value;
}

}  // namespace

SourceModel SourceModel::zero() { return SourceModel{}; }

SourceModel SourceModel::smooth(std::function<double(const Position&, double)> q) {
  SourceModel m;
  m.variant = SourceVariant::smooth;
  m.q_xt = std::move(q);
  return m;
}

SourceModel SourceModel::point(const Position& x0, std::function<double(double)> amplitude) {
  SourceModel m;
  m.variant = SourceVariant::point;
  m.x0 = x0;
  m.amplitude = std::move(amplitude);
  return m;
}

SourceModel SourceModel::derivative(std::function<double(double)> qx) {
  SourceModel m;
  m.variant = SourceVariant::derivative;
  m.qx = std::move(qx);
  return m;
}

SourceModel SourceModel::nonlinear(std::function<double(const Position&, double, double)> q,
                                   std::function<double(const Position&, double, double)> dqdu) {
  SourceModel m;
  m.variant = SourceVariant::nonlinear;
  m.scenario = 2;
  m.q_xtu = std::move(q);
  m.dqdu = std::move(dqdu);
  return m;
}

void SourceModel::validate(const GridSpec& grid) const {
  switch (variant) {
    case SourceVariant::zero:
      return;
    case SourceVariant::smooth:
      if (!q_xt) throw ConfigError("smooth source needs an evaluator");
      return;
    case SourceVariant::point: {
      if (!amplitude) throw ConfigError("point source needs an amplitude function");
      for (int l = 0; l < grid.d; ++l) {
        if (containing_cell(x0[static_cast<size_t>(l)], l, grid) < 0)
          throw ConfigError("point source lies outside the grid domain");
      }
      return;
    }
    case SourceVariant::derivative:
      if (!qx) throw ConfigError("derivative source needs qx");
      return;
    case SourceVariant::nonlinear:
      if (!q_xtu) throw ConfigError("nonlinear source needs an evaluator");
      return;
  }
  throw ConfigError("unknown source variant");
}

double eval_source(const SourceModel& model, std::int64_t cell, const GridSpec& grid,
                   double t, double u) {
  switch (model.variant) {
    case SourceVariant::zero:
      return 0.0;
    case SourceVariant::smooth:
      return checked(model.q_xt(cell_center(cell, grid), t));
    case SourceVariant::point: {
      const MultiIndex mi = multi_index(cell, grid);
      for (int l = 0; l < grid.d; ++l) {
        const auto li = static_cast<size_t>(l);
        if (mi[li] != containing_cell(model.x0[li], l, grid)) return 0.0;
      }
      return checked(model.amplitude(t)) / grid.cell_measure();
    }
    case SourceVariant::derivative:
      return checked(model.qx(cell_center(cell, grid)[0]));
    case SourceVariant::nonlinear:
      return checked(model.q_xtu(cell_center(cell, grid), t, u));
  }
  throw ConfigError("unknown source variant");
}

double eval_source_dqdu(const SourceModel& model, std::int64_t cell, const GridSpec& grid,
                        double t, double u, double fd_eps) {
  if (model.variant != SourceVariant::nonlinear) return 0.0;
  const Position x = cell_center(cell, grid);
  if (model.dqdu) return model.dqdu(x, t, u);
  const double h0 = fd_eps * (1.0 + std::abs(u));
  const double up = u + h0;
  const double h = up - u;
  return (model.q_xtu(x, t, up) - model.q_xtu(x, t, u)) / h;
}

}  // namespace conslaw
