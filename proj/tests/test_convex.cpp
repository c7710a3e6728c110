#include <cmath>
#include <vector>

#include "doctest.h"
#include "filreg/convex.hpp"
#include "filreg/rng.hpp"

using namespace filreg;

namespace {

ConvexBody disk_polygon(int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * M_PI * i / n;
    pts.push_back(make_vec({std::cos(t), std::sin(t)}));
  }
  return ConvexBody::hull(pts);
}

}  // namespace

TEST_SUITE_BEGIN("convex");

TEST_CASE("1-D hull is min/max") {
  auto b = ConvexBody::hull(std::vector<Vec>{vec1(0), vec1(1), vec1(0.5)});
  CHECK(b.vertex_count() == 2);
  CHECK(b.min1d() == 0.0);
  CHECK(b.max1d() == 1.0);
}

TEST_CASE("2-D hull drops interior points") {
  auto b = ConvexBody::hull(std::vector<Vec>{make_vec({0, 0}), make_vec({1, 0}),
                                             make_vec({0, 1}), make_vec({0.2, 0.2})});
  CHECK(b.vertex_count() == 3);
  CHECK(dist_point(b, make_vec({0.2, 0.2})) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hull of dense circle samples approximates the disk") {
  // oracle: the disk has support function h(u) = 1; for a hull inside the
  // disk the Hausdorff distance is max over unit u of 1 - h_hull(u)
  CounterRng rng(7, 1);
  std::vector<Vec> pts;
  for (int i = 0; i < 1000; ++i) {
    double t = 2.0 * M_PI * rng.next_unit();
    pts.push_back(make_vec({std::cos(t), std::sin(t)}));
  }
  auto b = ConvexBody::hull(pts);
  double worst = 0.0;
  for (int i = 0; i < 3600; ++i) {
    double t = 2.0 * M_PI * i / 3600;
    Vec u = make_vec({std::cos(t), std::sin(t)});
    u /= u.norm();
    worst = std::max(worst, 1.0 - support(b, u));
  }
  CHECK(worst <= 0.01);
}

TEST_CASE("hull is idempotent") {
  CounterRng rng(11, 2);
  for (int dim = 1; dim <= 3; ++dim) {
    std::vector<Vec> pts;
    for (int i = 0; i < 50; ++i) {
      Vec p(dim);
      for (int a = 0; a < dim; ++a) p[a] = rng.next_symmetric();
      pts.push_back(p);
    }
    auto b = ConvexBody::hull(pts);
    auto b2 = ConvexBody::hull(b.vertices());
    CHECK(b == b2);
  }
}

TEST_CASE("empty input rejected") {
  CHECK_THROWS_WITH_AS(ConvexBody::hull(std::vector<Vec>{}), "empty point set",
                       std::invalid_argument);
}

TEST_CASE("hausdorff basics") {
  auto u01 = ConvexBody::interval(0, 1);
  auto u01b = ConvexBody::interval(0, 1);
  auto m11 = ConvexBody::interval(-1, 1);
  CHECK(hausdorff(u01, u01b) == 0.0);
  CHECK(hausdorff(u01, m11) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hausdorff of square and disk") {
  // square [-1,1]^2 contains the unit disk; the gap is at the corners
  auto square = ConvexBody::hull(std::vector<Vec>{make_vec({-1, -1}), make_vec({1, -1}),
                                                  make_vec({-1, 1}), make_vec({1, 1})});
  auto disk = disk_polygon(4096);
  const double expected = std::sqrt(2.0) - 1.0;
  CHECK(hausdorff(square, disk) == doctest::Approx(expected).epsilon(1e-5));

  // oracle: dense boundary sampling, distances to the true disk analytic
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double t = 8.0 * i / 100000.0;  // walk the square perimeter
    double s = std::fmod(t, 2.0) - 1.0;
    Vec p;
    if (t < 2)
      p = make_vec({s, -1});
    else if (t < 4)
      p = make_vec({1, s});
    else if (t < 6)
      p = make_vec({-s, 1});
    else
      p = make_vec({-1, -s});
    worst = std::max(worst, std::max(0.0, p.norm() - 1.0));
  }
  CHECK(worst == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("dist_point examples") {
  auto u01 = ConvexBody::interval(0, 1);
  CHECK(dist_point(u01, vec1(0.5)) == 0.0);
  CHECK(dist_point(u01, vec1(2)) == doctest::Approx(1.0).epsilon(1e-12));

  auto tri = ConvexBody::hull(
      std::vector<Vec>{make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
  CHECK(dist_point(tri, make_vec({1, 1})) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-11));
}

TEST_CASE("dist_point on degenerate bodies") {
  // a segment embedded in R^2
  auto seg = ConvexBody::hull(std::vector<Vec>{make_vec({-1, 0}), make_vec({1, 0})});
  CHECK(dist_point(seg, make_vec({0, 0.5})) == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(dist_point(seg, make_vec({2, 0})) == doctest::Approx(1.0).epsilon(1e-11));
  // a singleton in R^3
  auto pt = ConvexBody::singleton(make_vec({1, 2, 3}));
  CHECK(dist_point(pt, make_vec({1, 2, 4})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("support examples") {
  auto seg = ConvexBody::interval(-1, 1);
  CHECK(support(seg, vec1(1)) == doctest::Approx(1.0));
  auto sq = ConvexBody::hull(std::vector<Vec>{make_vec({0, 0}), make_vec({1, 0}),
                                              make_vec({0, 1}), make_vec({1, 1})});
  CHECK(support(sq, make_vec({1, 0})) == doctest::Approx(1.0));
  auto tri = ConvexBody::hull(
      std::vector<Vec>{make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
  double r = 1.0 / std::sqrt(2.0);
  CHECK(support(tri, make_vec({r, r})) == doctest::Approx(r).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(support(tri, make_vec({0, 0})), "zero direction",
                       std::invalid_argument);
}

TEST_CASE("support of a hull equals max over the generators") {
  CounterRng rng(3, 9);
  for (int dim = 1; dim <= 3; ++dim) {
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) {
      Vec p(dim);
      for (int a = 0; a < dim; ++a) p[a] = 2.0 * rng.next_symmetric();
      pts.push_back(p);
    }
    auto b = ConvexBody::hull(pts);
    for (int t = 0; t < 100; ++t) {
      Vec u(dim);
      double nu = 0;
      do {
        for (int a = 0; a < dim; ++a) u[a] = rng.next_symmetric();
        nu = u.norm();
      } while (nu < 1e-3);
      u /= nu;
      double expect = -1e30;
      for (const auto& p : pts) expect = std::max(expect, p.dot(u));
      CHECK(support(b, u) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("directed excess realizes hausdorff for nested bodies") {
  CounterRng rng(5, 21);
  for (int rep = 0; rep < 20; ++rep) {
    int dim = 1 + (int)(rng.next_u64() % 3);
    std::vector<Vec> inner, outer;
    for (int i = 0; i < 30; ++i) {
      Vec p(dim);
      for (int a = 0; a < dim; ++a) p[a] = rng.next_symmetric();
      inner.push_back(p);
      outer.push_back(p);
    }
    for (int i = 0; i < 10; ++i) {
      Vec p(dim);
      for (int a = 0; a < dim; ++a) p[a] = 2.0 * rng.next_symmetric();
      outer.push_back(p);
    }
    auto A = ConvexBody::hull(inner);
    auto B = ConvexBody::hull(outer);
    double h = hausdorff(A, B);
    double viaB = 0.0;
    for (int i = 0; i < B.vertex_count(); ++i)
      viaB = std::max(viaB, dist_point(A, B.vertex(i)));
    CHECK(h == doctest::Approx(viaB).epsilon(1e-12));
    CHECK(hausdorff_excess(A, B) <= 1e-12);
  }
}

TEST_CASE("hausdorff is a metric on random bodies") {
  CounterRng rng(17, 4);
  for (int rep = 0; rep < 25; ++rep) {
    int dim = 1 + (int)(rng.next_u64() % 3);
    auto rnd_body = [&](double scale) {
      std::vector<Vec> pts;
      int m = 3 + (int)(rng.next_u64() % 8);
      for (int i = 0; i < m; ++i) {
        Vec p(dim);
        for (int a = 0; a < dim; ++a) p[a] = scale * rng.next_symmetric();
        pts.push_back(p);
      }
      return ConvexBody::hull(pts);
    };
    auto A = rnd_body(1.0), B = rnd_body(1.5), C = rnd_body(0.7);
    double ab = hausdorff(A, B), ba = hausdorff(B, A);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(hausdorff(A, C) <= ab + hausdorff(B, C) + 1e-9);
    CHECK(hausdorff(A, A) == 0.0);
  }
}

TEST_CASE("dimension mismatch rejected") {
  auto seg = ConvexBody::interval(0, 1);
  auto sq = ConvexBody::hull(std::vector<Vec>{make_vec({0, 0}), make_vec({1, 1})});
  CHECK_THROWS_AS((void)hausdorff(seg, sq), std::invalid_argument);
  CHECK_THROWS_AS((void)dist_point(seg, make_vec({0, 0})), std::invalid_argument);
}

TEST_CASE("vertices above dimension 3 are deduplicated generators") {
  std::vector<Vec> pts;
  for (int i = 0; i < 8; ++i) {
    Vec p(4);
    p.setZero();
    p[i % 4] = (i < 4) ? 1.0 : -1.0;
    pts.push_back(p);
  }
  pts.push_back(pts.front());  // duplicate
  auto b = ConvexBody::hull(pts);
  CHECK(b.vertex_count() == 8);
  Vec u(4);
  u.setZero();
  u[0] = 1.0;
  CHECK(support(b, u) == doctest::Approx(1.0));
  Vec far(4);
  far.setZero();
  far[0] = 2.0;
  CHECK(dist_point(b, far) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_SUITE_END();
