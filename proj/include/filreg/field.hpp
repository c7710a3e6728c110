#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "filreg/convex.hpp"
#include "filreg/poly.hpp"
#include "filreg/types.hpp"

namespace filreg {

/// Full-dimensional region {g_i(x) > 0 for all guards} with a polynomial
/// value map on it. An empty guard list means the whole space.
struct Stratum {
  std::vector<Polynomial> guards;
  PolyMap value;
};

/// A Lebesgue-null carrier: either the zero set of a nonzero polynomial or a
/// finite point set.
struct NullStratum {
  std::optional<Polynomial> zero_of;
  std::vector<Vec> points;

  bool matches(const Vec& x, double tol = 1e-9) const;
};

struct NullOverride {
  NullStratum where;
  PolyMap value;
};

/// Piecewise-polynomial model of a bounded measurable function
/// f : R^d -> R^l: polynomial strata plus declared null-set overrides.
/// Overrides are ordered; the latest declared one wins at a point.
class PiecewiseField {
 public:
  PiecewiseField(int d, int l, double bound, std::vector<Stratum> strata,
                 std::vector<NullOverride> overrides = {});

  int input_dim() const { return d_; }
  int output_dim() const { return l_; }
  double bound() const { return bound_; }
  const std::vector<Stratum>& strata() const { return strata_; }
  const std::vector<NullOverride>& overrides() const { return overrides_; }

  /// Pointwise evaluation. Latest matching override wins; otherwise the
  /// containing stratum. Throws "uncovered point" when nothing matches.
  Vec eval(const Vec& x) const;

  /// Limit values at x of the full-dimensional strata whose closure contains
  /// x (every guard >= -tol there). Overrides never contribute. Deduplicated,
  /// lexicographically sorted.
  std::vector<Vec> essential_values(const Vec& x, double tol = 1e-9) const;

  /// Returns a copy with one more null override appended (it takes priority
  /// over the existing ones). Throws "not a null set" when the carrier is
  /// full-dimensional. The bound is raised if needed; pass new_bound to set
  /// it explicitly.
  PiecewiseField modify_on_null(const NullStratum& where, PolyMap value,
                                std::optional<double> new_bound = std::nullopt) const;

  /// Indices of the overrides whose carrier passes through x, ascending.
  std::vector<int> matching_overrides(const Vec& x, double tol = 1e-9) const;

 private:
  void build_point_index();

  int d_, l_;
  double bound_;
  std::vector<Stratum> strata_;
  std::vector<NullOverride> overrides_;

  struct PointRef {
    Vec p;
    int override_idx;
  };
  std::vector<PointRef> point_index_;  // sorted by first coordinate
  std::vector<int> zero_overrides_;
};

/// Direct point-evaluation view of a field; the form every Monte Carlo
/// engine consumes. Piecewise fields adapt to it; gallery entries that are
/// not piecewise-polynomial (x/|x|, partition indicators) only exist in this
/// form.
struct PointField {
  int d = 0;
  int l = 0;
  double bound = 0.0;
  std::function<Vec(const Vec&)> eval;
  std::string name;
};

PointField as_point_field(const PiecewiseField& f, std::string name = {});

/// Set-valued map model: point -> convex body, with the points where the map
/// was deliberately enlarged declared up front.
class CuscoOracle {
 public:
  CuscoOracle(int d, int l, double bound, std::function<ConvexBody(const Vec&)> eval,
              std::vector<Vec> exceptional_points = {}, std::string name = {});

  int input_dim() const { return d_; }
  int output_dim() const { return l_; }
  double bound() const { return bound_; }
  const std::vector<Vec>& exceptional_points() const { return exceptional_; }
  const std::string& name() const { return name_; }

  ConvexBody operator()(const Vec& x) const { return eval_(x); }

  bool is_exceptional(const Vec& x, double tol = 1e-12) const;

 private:
  int d_, l_;
  double bound_;
  std::function<ConvexBody(const Vec&)> eval_;
  std::vector<Vec> exceptional_;
  std::string name_;
};

/// Countable dense targets in [-M, M]^l: dyadic grids refined level by
/// level, new points of each level in lexicographic order.
std::vector<Vec> dyadic_targets(int count, double bound, int l);

/// Measurable selections f_n(x) = nearest point of the oracle value to the
/// n-th dyadic target. Their closure recovers the oracle value as n grows.
class SelectionFamily {
 public:
  SelectionFamily(CuscoOracle parent, int count, double density_eps = 0.05);

  const CuscoOracle& parent() const { return parent_; }
  int count() const { return count_; }
  double density_eps() const { return density_eps_; }

  /// n is 1-based.
  Vec select(int n, const Vec& x) const;

  /// hull{f_n(x) : n <= count} as a body.
  ConvexBody span(const Vec& x) const;

 private:
  CuscoOracle parent_;
  int count_;
  double density_eps_;
  std::vector<Vec> targets_;
};

SelectionFamily selections_from_oracle(const CuscoOracle& phi, int count,
                                       double density_eps = 0.05);

/// Sampled field diagnostics for the declared invariants.
struct FieldValidation {
  double stratum_coverage = 0.0;   // fraction of samples inside some stratum
  double covered_fraction = 0.0;   // stratum or declared override
  double max_norm = 0.0;
  bool disjoint = true;            // no sample matched two strata
  bool bounded = true;
};
FieldValidation validate_field(const PiecewiseField& f, const Box& box, int n_samples,
                               std::uint64_t seed);

/// Sampled upper-semicontinuity check: true when some delta in the schedule
/// keeps the excess of nearby values over the value at x below eps.
bool check_usc(const CuscoOracle& phi, const Vec& x, double eps,
               const std::vector<double>& delta_schedule, int n_samples,
               std::uint64_t seed);

}  // namespace filreg
