#include <cmath>

#include "doctest.h"
#include "filreg/field.hpp"
#include "filreg/gallery.hpp"
#include "filreg/rng.hpp"

using namespace filreg;

namespace {

// sign field: +1 on x>0, -1 on x<0, override {x=0} -> 7
PiecewiseField sign_with_7() {
  Polynomial x = Polynomial::monomial(1, 0);
  std::vector<Stratum> strata{
      {{x}, {Polynomial::constant(1, 1.0)}},
      {{x.negated()}, {Polynomial::constant(1, -1.0)}},
  };
  std::vector<NullOverride> ovr{
      {NullStratum{x, {}}, {Polynomial::constant(1, 7.0)}},
  };
  return PiecewiseField(1, 1, 7.0, strata, ovr);
}

PiecewiseField split_plane_2d() {
  Polynomial x1 = Polynomial::monomial(2, 0);
  std::vector<Stratum> strata{
      {{x1}, {Polynomial::constant(2, 1.0), Polynomial::constant(2, 0.0)}},
      {{x1.negated()}, {Polynomial::constant(2, 0.0), Polynomial::constant(2, 1.0)}},
  };
  return PiecewiseField(2, 2, 1.0, strata);
}

}  // namespace

TEST_SUITE_BEGIN("field");

TEST_CASE("eval picks stratum away from overrides") {
  auto f = sign_with_7();
  CHECK(f.eval(vec1(2))[0] == 1.0);
  CHECK(f.eval(vec1(-3))[0] == -1.0);
}

TEST_CASE("eval gives override priority") {
  auto f = sign_with_7();
  CHECK(f.eval(vec1(0))[0] == 7.0);
}

TEST_CASE("latest override wins") {
  auto f = sign_with_7().modify_on_null(
      NullStratum{Polynomial::monomial(1, 0), {}}, {Polynomial::constant(1, 3.0)});
  CHECK(f.eval(vec1(0))[0] == 3.0);
}

TEST_CASE("rational scale field evaluates 1/m on p/m") {
  auto f = gallery::rational_scale();
  CHECK(f.eval(vec1(1.0 / 3.0))[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(f.eval(vec1(0.5))[0] == 0.5);
  CHECK(f.eval(vec1(2.0))[0] == 1.0);
  CHECK(f.eval(vec1(0.0))[0] == 0.0);
  CHECK(f.eval(vec1(std::sqrt(0.5)))[0] == 0.0);
}

TEST_CASE("essential values at and away from the interface") {
  auto f = sign_with_7();
  auto at0 = f.essential_values(vec1(0));
  REQUIRE(at0.size() == 2);
  CHECK(at0[0][0] == -1.0);
  CHECK(at0[1][0] == 1.0);
  auto at2 = f.essential_values(vec1(2));
  REQUIRE(at2.size() == 1);
  CHECK(at2[0][0] == 1.0);
}

TEST_CASE("essential values see adjacency along a 2-D interface") {
  auto f = split_plane_2d();
  auto on = f.essential_values(make_vec({0, 5}));
  REQUIRE(on.size() == 2);
  CHECK(on[0] == make_vec({0, 1}));
  CHECK(on[1] == make_vec({1, 0}));
}

TEST_CASE("uncovered point reported") {
  // single stratum x>0 and nothing else
  Polynomial x = Polynomial::monomial(1, 0);
  PiecewiseField f(1, 1, 1.0, {{{x}, {Polynomial::constant(1, 1.0)}}});
  CHECK_THROWS_WITH(f.eval(vec1(-1)), "uncovered point");
}

TEST_CASE("modify_on_null rejects full-dimensional carriers") {
  auto f = sign_with_7();
  CHECK_THROWS_WITH_AS(
      f.modify_on_null(NullStratum{Polynomial::constant(1, 0.0), {}},
                       {Polynomial::constant(1, 1.0)}),
      "not a null set", std::invalid_argument);
}

TEST_CASE("null modification is invisible to essential values") {
  auto f = split_plane_2d();
  auto g = f.modify_on_null(NullStratum{Polynomial::monomial(2, 0), {}},
                            {Polynomial::constant(2, 9.0), Polynomial::constant(2, 9.0)});
  CounterRng rng(99, 1);
  for (int i = 0; i < 50; ++i) {
    Vec x = make_vec({2.0 * rng.next_symmetric(), 2.0 * rng.next_symmetric()});
    auto a = f.essential_values(x);
    auto b = g.essential_values(x);
    REQUIRE(a.size() == b.size());
    for (size_t j = 0; j < a.size(); ++j) CHECK(a[j] == b[j]);
  }
  // also exactly on the modified line
  auto on = g.essential_values(make_vec({0, 0.3}));
  CHECK(on.size() == 2);
}

TEST_CASE("eval is deterministic") {
  auto f = gallery::rational_scale();
  Vec x = vec1(0.7431);
  Vec a = f.eval(x), b = f.eval(x);
  CHECK(a[0] == b[0]);
}

TEST_CASE("constant-zero field with unit spike matches the first gallery map") {
  PiecewiseField base(1, 1, 0.0, {{{}, {Polynomial::constant(1, 0.0)}}});
  auto g = base.modify_on_null(NullStratum{{}, {vec1(0)}}, {Polynomial::constant(1, 1.0)});
  CHECK(g.eval(vec1(0))[0] == 1.0);
  CHECK(g.eval(vec1(0.2))[0] == 0.0);
  CHECK(g.bound() == 1.0);
  auto ev = g.essential_values(vec1(0));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0][0] == 0.0);
}

TEST_CASE("dyadic targets reach the box corners first") {
  auto ts = dyadic_targets(9, 1.0, 1);
  REQUIRE(ts.size() == 9);
  CHECK(ts[0][0] == -1.0);
  CHECK(ts[1][0] == 1.0);
  CHECK(ts[2][0] == 0.0);
  CHECK(ts[3][0] == -0.5);
  CHECK(ts[4][0] == 0.5);
  CHECK(ts[5][0] == -0.75);
  auto t2 = dyadic_targets(4, 2.0, 2);
  CHECK(t2[0] == make_vec({-2, -2}));
  CHECK(t2[3] == make_vec({2, 2}));
}

TEST_CASE("selections stay inside the oracle value") {
  // Phi(x) = [0, |x|]
  CuscoOracle phi(1, 1, 1.0, [](const Vec& x) {
    return ConvexBody::interval(0.0, std::abs(x[0]));
  });
  auto fam = selections_from_oracle(phi, 8);
  CounterRng rng(5, 55);
  for (int i = 0; i < 20; ++i) {
    Vec x = vec1(rng.next_symmetric());
    for (int n = 1; n <= 8; ++n) {
      Vec y = fam.select(n, x);
      CHECK(dist_point(phi(x), y) <= 1e-9);
    }
  }
  Vec f1 = fam.select(1, vec1(1));
  CHECK(f1[0] >= 0.0);
  CHECK(f1[0] <= 1.0);
}

TEST_CASE("constant singleton oracle selects itself") {
  CuscoOracle phi(1, 1, 1.0,
                  [](const Vec&) { return ConvexBody::singleton(vec1(0.0)); });
  auto fam = selections_from_oracle(phi, 16);
  for (int n = 1; n <= 16; ++n) CHECK(fam.select(n, vec1(0.3))[0] == 0.0);
}

TEST_CASE("64 dyadic selections cover a constant interval") {
  CuscoOracle phi(1, 1, 1.0,
                  [](const Vec&) { return ConvexBody::interval(-1.0, 1.0); });
  auto fam = selections_from_oracle(phi, 64);
  auto span = fam.span(vec1(0));
  CHECK(hausdorff(span, ConvexBody::interval(-1, 1)) <= 0.05);
}

TEST_CASE("selection density improves with the family size") {
  CuscoOracle phi(2, 2, 1.0, [](const Vec& x) {
    std::vector<Vec> vs{make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})};
    (void)x;
    return ConvexBody::hull(vs);
  });
  auto small = selections_from_oracle(phi, 8);
  auto large = selections_from_oracle(phi, 128);
  Vec x = make_vec({0.2, 0.2});
  double hs = hausdorff(small.span(x), phi(x));
  double hl = hausdorff(large.span(x), phi(x));
  CHECK(hl <= hs + 1e-12);
  CHECK(hl <= 0.15);
}

TEST_CASE("gallery fields validate on their reference boxes") {
  auto check = [](const PiecewiseField& f, const Box& box) {
    auto v = validate_field(f, box, 100000, 42);
    CHECK(v.covered_fraction >= 1.0 - 1e-3);
    CHECK(v.disjoint);
    CHECK(v.bounded);
  };
  check(gallery::sign1d(), make_box({-2}, {2}));
  check(gallery::rational_scale(), make_box({-2}, {2}));
  check(gallery::relay2d(), make_box({-2, -2}, {2, 2}));
  check(gallery::rotation2d(), make_box({-2, -2}, {2, 2}));
  check(gallery::abs_grad2d(), make_box({-2, -2}, {2, 2}));
}

TEST_CASE("gallery oracles are upper semicontinuous at probes") {
  std::vector<double> sched{0.25, 0.125, 0.0625, 0.03125};
  auto phi1 = gallery::phi1();
  CHECK(check_usc(phi1, vec1(0), 0.05, sched, 200, 42));
  CHECK(check_usc(phi1, vec1(0.5), 0.05, sched, 200, 42));
  auto phi3 = gallery::phi3();
  CHECK(check_usc(phi3, vec1(0.5), 0.05, sched, 200, 42));
}

TEST_SUITE_END();
