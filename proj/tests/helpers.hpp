#pragma once

// Shared random-case generators for the property suites. Desk-scale
// coefficients keep every tolerance in the suites comfortable.

#include <cmath>
#include <vector>

#include "filreg/field.hpp"
#include "filreg/poly.hpp"
#include "filreg/rng.hpp"

namespace filreg::testgen {

inline Polynomial random_poly1(CounterRng& rng, double coef_scale = 0.5) {
  std::vector<PolyTerm> ts;
  for (int e = 0; e <= 2; ++e)
    ts.push_back({{e}, coef_scale * rng.next_symmetric()});
  return Polynomial(1, std::move(ts));
}

struct RandomField {
  PiecewiseField field;
  double guard_at;  // the interface point of the guard x - c
};

/// Two strata split at x = c with random quadratic values; sometimes a null
/// override on the interface or at an isolated point.
inline RandomField random_field_1d(CounterRng& rng, bool with_overrides) {
  const double c = 0.5 * rng.next_symmetric();
  Polynomial guard = Polynomial::affine(vec1(1.0), -c);
  Polynomial left = random_poly1(rng);
  Polynomial right = random_poly1(rng);
  Box ref = make_box({-3}, {3});
  double bound = std::max(left.bound_on_box(ref), right.bound_on_box(ref));
  std::vector<Stratum> strata{
      {{guard}, {right}},
      {{guard.negated()}, {left}},
  };
  std::vector<NullOverride> ovr;
  if (with_overrides) {
    if (rng.next_unit() < 0.7)
      ovr.push_back({NullStratum{guard, {}},
                     {Polynomial::constant(1, rng.next_symmetric())}});
    if (rng.next_unit() < 0.7)
      ovr.push_back({NullStratum{{}, {vec1(c + 0.1 + 0.5 * rng.next_unit())}},
                     {Polynomial::constant(1, 2.0 * rng.next_symmetric())}});
  }
  return {PiecewiseField(1, 1, std::max(1.0, bound), std::move(strata), std::move(ovr)),
          c};
}

/// A random null carrier compatible with the field above.
inline NullStratum random_null_stratum(CounterRng& rng) {
  if (rng.next_unit() < 0.5)
    return NullStratum{Polynomial::affine(vec1(1.0), -0.4 * rng.next_symmetric()), {}};
  std::vector<Vec> pts;
  int n = 1 + static_cast<int>(rng.next_u64() % 3);
  for (int i = 0; i < n; ++i) pts.push_back(vec1(rng.next_symmetric()));
  return NullStratum{{}, std::move(pts)};
}

struct RandomOracle {
  CuscoOracle oracle;
  std::vector<Vec> exceptional;
};

/// Interval-valued oracle [alpha(x), beta(x)] with slowly varying polynomial
/// ends, optionally enlarged at a few declared points.
inline RandomOracle random_interval_oracle(CounterRng& rng, bool with_exceptional) {
  Polynomial alpha = random_poly1(rng, 0.4);
  Polynomial halfwidth = random_poly1(rng, 0.3);
  std::vector<Vec> exceptional;
  if (with_exceptional) {
    int n = 1 + static_cast<int>(rng.next_u64() % 2);
    for (int i = 0; i < n; ++i) exceptional.push_back(vec1(0.8 * rng.next_symmetric()));
  }
  const double enlarge = 0.5 + 0.5 * rng.next_unit();
  auto eval = [alpha, halfwidth, exceptional, enlarge](const Vec& x) {
    double a = alpha(x);
    double w = halfwidth(x);
    double lo = a - w * w, hi = a + w * w;
    for (const auto& p : exceptional)
      if ((p - x).norm() <= 1e-12) {
        lo -= enlarge;
        hi += enlarge;
        break;
      }
    return ConvexBody::interval(lo, hi);
  };
  CuscoOracle phi(1, 1, 4.0, eval, exceptional, "random-interval");
  return {phi, exceptional};
}

}  // namespace filreg::testgen
