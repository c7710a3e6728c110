#pragma once

#include <cstdint>
#include <vector>

#include "filreg/convex.hpp"
#include "filreg/field.hpp"
#include "filreg/types.hpp"

namespace filreg {

/// Shrinking-ball schedule: radii delta0 * ratio^k for k < steps, a fixed
/// sample count per radius, and the agreement tolerance that declares the
/// iteration converged.
struct McSchedule {
  double delta0 = 0.5;
  double ratio = 0.5;
  int steps = 12;
  int samples = 4096;
  double tol_conv = 1e-3;

  double delta_at(int k) const;
  void validate() const;
};

/// Result of a shrinking-hull iteration. Bodies along the schedule are
/// nested by construction: the hull at each radius pools the samples of all
/// smaller radii (they lie inside the larger ball as well).
struct HullEstimate {
  ConvexBody body;        // hull at the final (smallest) radius
  double delta_final = 0;
  int samples_per_delta = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::vector<ConvexBody> history;  // one body per radius, largest first
};

/// Hull of the essential values: the Filippov value of a piecewise field.
/// Null overrides never enter.
ConvexBody filippov_exact(const PiecewiseField& f, const Vec& x, double tol = 1e-9);

/// Hull of essential values, the point value, and the values of every null
/// override whose carrier passes through x: the Krasovskii value.
ConvexBody krasovskii_exact(const PiecewiseField& f, const Vec& x, double tol = 1e-9);

/// The deterministic sample point for (seed, step, index): x plus a radius-
/// scaled offset that does not depend on x. Exposed so tests can replay the
/// sample sequence of the engines.
Vec mc_sample(const Vec& x, double delta, std::uint64_t seed, int step, int index);

/// Monte Carlo Filippov hull of a point-evaluation field: per radius, the
/// hull of the field over uniform ball samples. Uniform sampling misses any
/// fixed null set almost surely, so this estimates the essential hull.
HullEstimate filippov_mc(const PointField& f, const Vec& x, const McSchedule& sched,
                         std::uint64_t seed);

/// Krasovskii variant for point fields: the Filippov hull joined with the
/// value at x itself.
HullEstimate krasovskii_mc(const PointField& f, const Vec& x, const McSchedule& sched,
                           std::uint64_t seed);

/// Minimal-map estimate m(Phi) at x: per radius, the hull of the union of
/// the vertex sets of Phi over ball samples. Declared exceptional points are
/// excluded from sampling (they are hit with probability zero anyway).
HullEstimate minimal_map(const CuscoOracle& phi, const Vec& x, const McSchedule& sched,
                         std::uint64_t seed);

/// The minimal-map estimator packaged as an oracle, so it can be fed back
/// into itself.
CuscoOracle minimal_map_oracle(const CuscoOracle& phi, const McSchedule& sched,
                               std::uint64_t seed);

/// One probe of the representability test Phi = m(Phi).
struct Verdict {
  Vec probe;
  ConvexBody phi_value;
  ConvexBody m_value;
  double gap = 0.0;  // excess of phi_value over m_value; nonnegative
  bool representable_here = false;
  bool converged = false;
};

enum class Representability { representable, not_representable, inconclusive };

struct RepresentabilityReport {
  std::vector<Verdict> verdicts;
  Representability overall = Representability::inconclusive;
};

/// Tests Phi = m(Phi) at the probes. One-sided: only the excess of Phi over
/// m(Phi) matters, since m(Phi) is always contained in Phi. Callers should
/// include every declared exceptional point among the probes; those are
/// exactly where representability can fail.
RepresentabilityReport is_representable(const CuscoOracle& phi,
                                        const std::vector<Vec>& probes,
                                        const McSchedule& sched, double tol,
                                        std::uint64_t seed);

/// Per-radius fraction of ball samples with |f(x') - f(x)| >= eps: the
/// density ratio whose vanishing defines approximate continuity.
std::vector<double> approx_continuity_ratios(const PointField& f, const Vec& x,
                                             double eps, const McSchedule& sched,
                                             std::uint64_t seed);

constexpr double kRepresentabilityTol = 0.02;

}  // namespace filreg
