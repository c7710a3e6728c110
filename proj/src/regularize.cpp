#include "filreg/regularize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "filreg/rng.hpp"

namespace filreg {

double McSchedule::delta_at(int k) const { return delta0 * std::pow(ratio, k); }

void McSchedule::validate() const {
  if (!(delta0 > 0.0)) throw std::invalid_argument("delta0 must be positive");
  if (!(ratio > 0.0) || !(ratio < 1.0))
    throw std::invalid_argument("ratio must be in (0,1)");
  if (steps < 1) throw std::invalid_argument("need at least one step");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
}

ConvexBody filippov_exact(const PiecewiseField& f, const Vec& x, double tol) {
  auto vals = f.essential_values(x, tol);
  if (vals.empty()) throw std::runtime_error("uncovered point");
  return ConvexBody::hull(vals);
}

ConvexBody krasovskii_exact(const PiecewiseField& f, const Vec& x, double tol) {
  auto vals = f.essential_values(x, tol);
  if (vals.empty()) throw std::runtime_error("uncovered point");
  vals.push_back(f.eval(x));
  for (int i : f.matching_overrides(x, tol))
    vals.push_back(eval_map(f.overrides()[static_cast<size_t>(i)].value, x));
  return ConvexBody::hull(vals);
}

Vec mc_sample(const Vec& x, double delta, std::uint64_t seed, int step, int index) {
  CounterRng rng(seed, static_cast<std::uint64_t>(step),
                 static_cast<std::uint64_t>(index));
  return rng.next_in_ball(x, delta);
}

namespace {

std::string point_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

/// Backward pooling: the hull at radius k also absorbs the vertices of the
/// hull at radius k+1, whose samples lie inside the larger ball too. This
/// makes the estimate sequence nested by construction.
HullEstimate assemble(std::vector<std::vector<Vec>> step_points, const McSchedule& sched,
                      std::uint64_t seed) {
  const int K = sched.steps;
  std::vector<ConvexBody> bodies;
  bodies.reserve(K);
  ConvexBody last = ConvexBody::hull(step_points[static_cast<size_t>(K - 1)]);
  bodies.push_back(last);
  for (int k = K - 2; k >= 0; --k) {
    auto& pts = step_points[static_cast<size_t>(k)];
    const Mat& prev = bodies.back().vertices();
    for (Eigen::Index i = 0; i < prev.cols(); ++i) pts.push_back(prev.col(i));
    bodies.push_back(ConvexBody::hull(pts));
  }
  std::reverse(bodies.begin(), bodies.end());

  HullEstimate est;
  est.body = bodies.back();
  est.delta_final = sched.delta_at(K - 1);
  est.samples_per_delta = sched.samples;
  est.seed = seed;
  est.converged =
      (K < 2) || hausdorff(bodies[static_cast<size_t>(K - 2)], bodies.back()) <=
                     sched.tol_conv;
  est.history = std::move(bodies);
  return est;
}

}  // namespace

HullEstimate filippov_mc(const PointField& f, const Vec& x, const McSchedule& sched,
                         std::uint64_t seed) {
  sched.validate();
  std::vector<std::vector<Vec>> step_points(static_cast<size_t>(sched.steps));
  for (int k = 0; k < sched.steps; ++k) {
    const double delta = sched.delta_at(k);
    auto& pts = step_points[static_cast<size_t>(k)];
    pts.reserve(static_cast<size_t>(sched.samples));
    for (int i = 0; i < sched.samples; ++i) {
      Vec xp = mc_sample(x, delta, seed, k, i);
      try {
        pts.push_back(f.eval(xp));
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string("field evaluation failed at sample ") +
                                 point_str(xp) + ": " + e.what());
      }
    }
  }
  return assemble(std::move(step_points), sched, seed);
}

HullEstimate krasovskii_mc(const PointField& f, const Vec& x, const McSchedule& sched,
                           std::uint64_t seed) {
  HullEstimate est = filippov_mc(f, x, sched, seed);
  std::vector<Vec> pts{f.eval(x)};
  for (auto& body : est.history) {
    const Mat& v = body.vertices();
    std::vector<Vec> all = pts;
    for (Eigen::Index i = 0; i < v.cols(); ++i) all.push_back(v.col(i));
    body = ConvexBody::hull(all);
  }
  est.body = est.history.back();
  return est;
}

HullEstimate minimal_map(const CuscoOracle& phi, const Vec& x, const McSchedule& sched,
                         std::uint64_t seed) {
  sched.validate();
  std::vector<std::vector<Vec>> step_points(static_cast<size_t>(sched.steps));
  for (int k = 0; k < sched.steps; ++k) {
    const double delta = sched.delta_at(k);
    auto& pts = step_points[static_cast<size_t>(k)];
    for (int i = 0; i < sched.samples; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i));
      Vec xp = rng.next_in_ball(x, delta);
      while (phi.is_exceptional(xp)) xp = rng.next_in_ball(x, delta);
      ConvexBody value = phi(xp);
      const Mat& v = value.vertices();
      for (Eigen::Index j = 0; j < v.cols(); ++j) pts.push_back(v.col(j));
    }
  }
  return assemble(std::move(step_points), sched, seed);
}

CuscoOracle minimal_map_oracle(const CuscoOracle& phi, const McSchedule& sched,
                               std::uint64_t seed) {
  auto eval = [phi, sched, seed](const Vec& x) {
    return minimal_map(phi, x, sched, seed).body;
  };
  return CuscoOracle(phi.input_dim(), phi.output_dim(), phi.bound(), eval, {},
                     "m(" + phi.name() + ")");
}

RepresentabilityReport is_representable(const CuscoOracle& phi,
                                        const std::vector<Vec>& probes,
                                        const McSchedule& sched, double tol,
                                        std::uint64_t seed) {
  if (probes.empty()) throw std::invalid_argument("no probes given");
  RepresentabilityReport report;
  bool any_fail = false, all_conclusive = true;
  for (const auto& probe : probes) {
    HullEstimate est = minimal_map(phi, probe, sched, seed);
    Verdict v;
    v.probe = probe;
    v.phi_value = phi(probe);
    v.m_value = est.body;
    v.gap = hausdorff_excess(v.phi_value, v.m_value);
    v.representable_here = v.gap <= tol;
    v.converged = est.converged;
    if (!v.converged) all_conclusive = false;
    if (v.converged && !v.representable_here) any_fail = true;
    report.verdicts.push_back(std::move(v));
  }
  bool all_pass = true;
  for (const auto& v : report.verdicts) all_pass = all_pass && v.representable_here;
  if (any_fail)
    report.overall = Representability::not_representable;
  else if (all_pass && all_conclusive)
    report.overall = Representability::representable;
  else
    report.overall = Representability::inconclusive;
  return report;
}

std::vector<double> approx_continuity_ratios(const PointField& f, const Vec& x,
                                             double eps, const McSchedule& sched,
                                             std::uint64_t seed) {
  sched.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Vec fx = f.eval(x);
  std::vector<double> ratios;
  ratios.reserve(static_cast<size_t>(sched.steps));
  for (int k = 0; k < sched.steps; ++k) {
    const double delta = sched.delta_at(k);
    int far = 0;
    for (int i = 0; i < sched.samples; ++i) {
      Vec xp = mc_sample(x, delta, seed, k, i);
      if ((f.eval(xp) - fx).norm() >= eps) ++far;
    }
    ratios.push_back(static_cast<double>(far) / sched.samples);
  }
  return ratios;
}

}  // namespace filreg
