#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/stepper.hpp"

namespace conslaw {

// --- flux-level monotonicity (the two increment conditions) -------------------

struct MonotonicityViolation {
  int axis = 0;
  double a = 0, b = 0, c = 0, delta = 0;
  double deficit = 0;  // positive magnitude of the condition failure
};

struct MonotonicityReport {
  std::vector<MonotonicityViolation> condition18_violations;  // increment vs. lower neighbor
  std::vector<MonotonicityViolation> condition19_violations;  // increment vs. upper neighbor
  long samples_tested = 0;
  bool pass = false;
};

struct SampleBox {
  double lo = -1.0;
  double hi = 1.0;
};

// Samples (a,b,c) triples in the box (seeded, deterministic; endpoint lattice
// added as adversarial cases) and checks that the per-cell update increment
// -lambda[g(b,c)-g(a,b)] never decreases when a or c is raised by any delta
// in delta_set. Tolerance is absolute.
MonotonicityReport check_flux_monotonicity(const NumericalFlux& g, int axis, SampleBox box,
                                           long n_samples, const std::vector<double>& delta_set,
                                           std::uint64_t seed = 0x5eed0001u, double tol = 1e-12);

// --- comparison principle ----------------------------------------------------

struct ComparisonReport {
  int trials = 0;
  int steps = 0;
  double max_violation = 0.0;  // max over trials/steps/cells of (w - v)+
  int worst_trial = -1;
  int worst_step = -1;
  std::int64_t worst_cell = -1;
  bool pass = false;
};

// Advances random ordered pairs v0 >= w0 and measures order violations.
ComparisonReport check_comparison(const SchemeConfig& cfg, int trials, int steps,
                                  std::uint64_t seed = 0x5eed0002u, SampleBox box = {},
                                  double tol = 1e-8);

// Violation for one explicit ordered pair (drives deterministic witnesses).
double ordered_pair_violation(const SchemeConfig& cfg, const StateField& v0,
                              const StateField& w0, int steps, double t0 = 0.0);

// --- discrete entropy inequality ----------------------------------------------

struct EntropyWitness {
  std::int64_t cell = -1;
  int step = -1;  // index of the later level in the trajectory
  double k = 0.0;
};

struct EntropyReport {
  double worst_violation = 0.0;  // max over interior cells/steps/k of the inequality LHS
  EntropyWitness worst;
  double worst_boundary = 0.0;  // same quantity on boundary cells; informational only
  std::vector<double> k_samples;
  bool pass = false;
};

// k-grid: `count` evenly spaced values spanning [min u - 1, max u + 1] plus
// every distinct value of the initial level.
std::vector<double> default_k_values(const std::vector<Snapshot>& traj, int count = 21);

// Evaluates the per-cell entropy inequality for entropies |u - k| with the
// Crandall-Majda numerical entropy fluxes along a recorded trajectory
// (record_every_step runs). Interior cells gate pass/fail; boundary cells are
// reported separately.
EntropyReport check_discrete_entropy(const std::vector<Snapshot>& traj, const SchemeConfig& cfg,
                                     std::vector<double> k_values = {}, double tol = 1e-8);

// --- L-infinity stability ------------------------------------------------------

struct StabilityReport {
  bool pass = false;
  double min_initial = 0.0;
  double max_initial = 0.0;
  double min_seen = 0.0;
  double max_seen = 0.0;
  double accumulated_source = 0.0;  // M = sum over steps of dt * max_j |q_j|
};

// Checks min u0 - M <= u^n <= max u0 + M along a record_every_step trajectory,
// with M accumulated from the per-step source bounds.
StabilityReport check_linf_stability(const std::vector<Snapshot>& traj, double tol = 1e-8);

// --- serialization -------------------------------------------------------------

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues to_key_values(const MonotonicityReport& r, const std::string& prefix);
KeyValues to_key_values(const ComparisonReport& r, const std::string& prefix);
KeyValues to_key_values(const EntropyReport& r, const std::string& prefix);
KeyValues to_key_values(const StabilityReport& r, const std::string& prefix);

}  // namespace conslaw
