#pragma once

#include <functional>

#include "conslaw/grid.hpp"

namespace conslaw {

enum class SourceVariant { zero, smooth, point, derivative, nonlinear };

// Source-term model q. The point variant is a moving-amplitude delta at x0,
// discretized as a(t)/measure(cell) in the single containing cell; the
// derivative variant is q = d/dx of a potential, supplied directly as qx(x);
// the nonlinear variant couples into the implicit solve through u.
struct SourceModel {
  SourceVariant variant = SourceVariant::zero;
  int scenario = 1;

  std::function<double(const Position&, double)> q_xt;           // smooth: (x, t)
  Position x0{0.0, 0.0};                                         // point location
  std::function<double(double)> amplitude;                       // point: a(t)
  std::function<double(double)> qx;                              // derivative: qx(x), 1D
  std::function<double(const Position&, double, double)> q_xtu;  // nonlinear: (x, t, u)
  std::function<double(const Position&, double, double)> dqdu;   // optional analytic d/du

  static SourceModel zero();
  static SourceModel smooth(std::function<double(const Position&, double)> q);
  static SourceModel point(const Position& x0, std::function<double(double)> amplitude);
  static SourceModel derivative(std::function<double(double)> qx);
  static SourceModel nonlinear(std::function<double(const Position&, double, double)> q,
                               std::function<double(const Position&, double, double)> dqdu = {});

  bool depends_on_u() const { return variant == SourceVariant::nonlinear; }
  void validate(const GridSpec& grid) const;  // throws ConfigError
};

// Discrete source value q_j at (cell, t, u).
double eval_source(const SourceModel& model, std::int64_t cell, const GridSpec& grid,
                   double t, double u);

// d(q_j)/du; zero unless the nonlinear variant. Analytic when supplied,
// one-sided finite difference with step fd_eps*(1+|u|) otherwise.
double eval_source_dqdu(const SourceModel& model, std::int64_t cell, const GridSpec& grid,
                        double t, double u, double fd_eps);

}  // namespace conslaw
