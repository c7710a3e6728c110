#include "filreg/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace filreg {

namespace {

constexpr double kMergeTol = 1e-12;

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

Mat to_matrix(const std::vector<Vec>& pts) {
  Mat m(pts.front().size(), static_cast<Eigen::Index>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
  return m;
}

std::vector<Vec> dedup_sorted(const Mat& points) {
  std::vector<Vec> pts;
  pts.reserve(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    if (!points.col(i).allFinite()) throw std::invalid_argument("non-finite point");
    pts.push_back(points.col(i));
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Vec> out;
  for (auto& p : pts) {
    bool dup = false;
    // sorted by first coordinate, so only a trailing window can collide
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (p[0] - (*it)[0] > kMergeTol) break;
      if ((p - *it).norm() <= kMergeTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

double spread(const std::vector<Vec>& pts) {
  const Eigen::Index d = pts.front().size();
  double s = 0.0;
  for (Eigen::Index a = 0; a < d; ++a) {
    double lo = pts.front()[a], hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p[a]);
      hi = std::max(hi, p[a]);
    }
    s = std::max(s, hi - lo);
  }
  return s;
}

// ---- 2-D hull: monotone chain, strict turns only ----

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<Vec> hull2d(std::vector<Vec> pts) {
  const double eps = kMergeTol * std::max(1.0, spread(pts));
  const size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Vec> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // last point equals the first
  if (h.size() < 2) {  // fully collinear input collapses onto a segment
    std::vector<Vec> seg{pts.front(), pts.back()};
    if ((seg[0] - seg[1]).norm() <= kMergeTol) seg.pop_back();
    return seg;
  }
  return h;
}

// ---- 3-D hull: incremental, triangle faces ----

struct Face {
  int a, b, c;
  Vec n;       // unit outward normal
  double off;  // <n, vertex a>
};

Vec tri_normal(const Vec& p, const Vec& q, const Vec& r) {
  Vec u = q - p, v = r - p;
  Vec n(3);
  n[0] = u[1] * v[2] - u[2] * v[1];
  n[1] = u[2] * v[0] - u[0] * v[2];
  n[2] = u[0] * v[1] - u[1] * v[0];
  return n;
}

std::vector<Vec> hull3d(const std::vector<Vec>& pts) {
  const double scale = std::max(1.0, spread(pts));
  const double eps = kMergeTol * scale;
  const size_t n = pts.size();

  // extreme initial simplex
  size_t i0 = 0, i1 = 0;
  double best = -1.0;
  for (size_t i = 1; i < n; ++i) {
    double d = (pts[i] - pts[0]).norm();
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (best <= kMergeTol) return {pts[0]};

  Vec dir = (pts[i1] - pts[i0]).normalized();
  size_t i2 = i0;
  best = -1.0;
  for (size_t i = 0; i < n; ++i) {
    Vec w = pts[i] - pts[i0];
    double d = (w - dir.dot(w) * dir).norm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= eps) {
    // collinear: extreme points along dir
    size_t lo = i0, hi = i0;
    double tlo = 0, thi = 0;
    for (size_t i = 0; i < n; ++i) {
      double t = dir.dot(pts[i] - pts[i0]);
      if (t < tlo) {
        tlo = t;
        lo = i;
      }
      if (t > thi) {
        thi = t;
        hi = i;
      }
    }
    return {pts[lo], pts[hi]};
  }

  Vec nrm = tri_normal(pts[i0], pts[i1], pts[i2]).normalized();
  size_t i3 = i0;
  best = -1.0;
  for (size_t i = 0; i < n; ++i) {
    double d = std::abs(nrm.dot(pts[i] - pts[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps) {
    // coplanar: 2-D hull in the plane basis, then keep the original points
    Vec e1 = (pts[i1] - pts[i0]).normalized();
    Vec e2 = (pts[i2] - pts[i0] - e1.dot(pts[i2] - pts[i0]) * e1).normalized();
    std::vector<Vec> flat;
    flat.reserve(n);
    for (const auto& p : pts) {
      Vec q(2);
      q[0] = e1.dot(p - pts[i0]);
      q[1] = e2.dot(p - pts[i0]);
      flat.push_back(q);
    }
    // sort indices lexicographically by the 2-D coordinates
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return lex_less(flat[a], flat[b]); });
    std::vector<Vec> sorted2;
    sorted2.reserve(n);
    for (size_t i : idx) sorted2.push_back(flat[i]);
    std::vector<Vec> ring = hull2d(sorted2);
    std::vector<Vec> out;
    for (const auto& q : ring) {
      // recover the original 3-D point
      for (size_t i = 0; i < n; ++i)
        if ((flat[i] - q).norm() == 0.0) {
          out.push_back(pts[i]);
          break;
        }
    }
    return out;
  }

  std::vector<Face> faces;
  auto add_face = [&](int a, int b, int c, const Vec& inside) {
    Vec fn = tri_normal(pts[a], pts[b], pts[c]);
    double ln = fn.norm();
    if (ln <= 0) return;
    fn /= ln;
    if (fn.dot(inside - pts[a]) > 0) {
      std::swap(b, c);
      fn = -fn;
    }
    faces.push_back({a, b, c, fn, fn.dot(pts[a])});
  };
  Vec centroid = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  add_face((int)i0, (int)i1, (int)i2, centroid);
  add_face((int)i0, (int)i1, (int)i3, centroid);
  add_face((int)i0, (int)i2, (int)i3, centroid);
  add_face((int)i1, (int)i2, (int)i3, centroid);

  for (size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].n.dot(pts[p]) - faces[f].off > eps) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;
    // horizon: directed edges of visible faces whose reverse is not visible
    struct Edge {
      int u, v;
    };
    std::vector<Edge> horizon;
    auto edge_visible = [&](int u, int v) {
      for (size_t f = 0; f < faces.size(); ++f) {
        if (!visible[f]) continue;
        const Face& F = faces[f];
        if ((F.a == u && F.b == v) || (F.b == u && F.c == v) || (F.c == u && F.a == v))
          return true;
      }
      return false;
    };
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const Face& F = faces[f];
      int e[3][2] = {{F.a, F.b}, {F.b, F.c}, {F.c, F.a}};
      for (auto& ed : e)
        if (!edge_visible(ed[1], ed[0])) horizon.push_back({ed[0], ed[1]});
    }
    std::vector<Face> kept;
    for (size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) kept.push_back(faces[f]);
    faces.swap(kept);
    for (const auto& ed : horizon) {
      Vec fn = tri_normal(pts[ed.u], pts[ed.v], pts[p]);
      double ln = fn.norm();
      if (ln <= eps * eps) continue;
      fn /= ln;
      if (fn.dot(centroid - pts[ed.u]) > 0) fn = -fn;
      faces.push_back({ed.u, ed.v, (int)p, fn, fn.dot(pts[ed.u])});
    }
  }

  std::vector<char> used(n, 0);
  for (const auto& f : faces) used[f.a] = used[f.b] = used[f.c] = 1;
  std::vector<Vec> out;
  for (size_t i = 0; i < n; ++i)
    if (used[i]) out.push_back(pts[i]);
  return out;
}

}  // namespace

ConvexBody ConvexBody::hull(const Mat& points) {
  if (points.cols() == 0) throw std::invalid_argument("empty point set");
  std::vector<Vec> pts = dedup_sorted(points);
  const int d = static_cast<int>(points.rows());
  std::vector<Vec> verts;
  if (d == 1) {
    verts.push_back(pts.front());
    if (pts.size() > 1) verts.push_back(pts.back());
  } else if (d == 2) {
    verts = hull2d(std::move(pts));
  } else if (d == 3) {
    verts = hull3d(pts);
  } else {
    verts = std::move(pts);  // deduplicated generators, no extreme reduction
  }
  std::sort(verts.begin(), verts.end(), lex_less);
  return ConvexBody(to_matrix(verts));
}

ConvexBody ConvexBody::hull(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  return hull(to_matrix(points));
}

ConvexBody ConvexBody::singleton(const Vec& p) { return hull(std::vector<Vec>{p}); }

ConvexBody ConvexBody::interval(double lo, double hi) {
  return hull(std::vector<Vec>{vec1(lo), vec1(hi)});
}

double ConvexBody::min1d() const {
  if (ambient_dim() != 1) throw std::logic_error("min1d on non-1-D body");
  return verts_(0, 0);
}

double ConvexBody::max1d() const {
  if (ambient_dim() != 1) throw std::logic_error("max1d on non-1-D body");
  return verts_(0, verts_.cols() - 1);
}

double support(const ConvexBody& a, const Vec& u) {
  if (u.size() != a.ambient_dim()) throw std::invalid_argument("direction dimension mismatch");
  double nu = u.norm();
  if (nu < 1e-12) throw std::invalid_argument("zero direction");
  if (std::abs(nu - 1.0) > 1e-9) throw std::invalid_argument("direction must be unit");
  return (a.vertices().transpose() * u).maxCoeff();
}

MinNormPoint min_norm_point(const Mat& P) {
  const Eigen::Index n = P.cols();
  const Eigen::Index d = P.rows();
  // start from the column of least norm
  Eigen::Index start = 0;
  double bn = P.col(0).squaredNorm();
  for (Eigen::Index i = 1; i < n; ++i) {
    double v = P.col(i).squaredNorm();
    if (v < bn) {
      bn = v;
      start = i;
    }
  }
  std::vector<Eigen::Index> S{start};
  Vec lambda(1);
  lambda[0] = 1.0;
  Vec y = P.col(start);

  const int max_major = 2 * static_cast<int>(n) + 64;
  for (int major = 0; major < max_major; ++major) {
    double yy = y.squaredNorm();
    if (yy <= 1e-28) break;
    // most improving vertex in direction -y
    Eigen::Index jstar = 0;
    double cmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      double c = y.dot(P.col(j));
      if (c < cmin) {
        cmin = c;
        jstar = j;
      }
    }
    if (yy - cmin <= 1e-12 * std::max(1.0, yy)) break;
    if (std::find(S.begin(), S.end(), jstar) != S.end()) break;
    S.push_back(jstar);
    lambda.conservativeResize(S.size());
    lambda[lambda.size() - 1] = 0.0;

    // minor loop: affine minimizer over S, walking back to feasibility
    for (int minor = 0; minor < 64; ++minor) {
      const Eigen::Index k = static_cast<Eigen::Index>(S.size());
      Mat A(d, k);
      for (Eigen::Index i = 0; i < k; ++i) A.col(i) = P.col(S[i]);
      Mat K(k + 1, k + 1);
      K.setZero();
      K.topLeftCorner(k, k) = A.transpose() * A;
      K.topRightCorner(k, 1).setOnes();
      K.bottomLeftCorner(1, k).setOnes();
      Vec rhs(k + 1);
      rhs.setZero();
      rhs[k] = 1.0;
      Vec sol = K.fullPivLu().solve(rhs);
      Vec mu = sol.head(k);
      if (mu.minCoeff() >= -1e-12) {
        lambda = mu.cwiseMax(0.0);
        lambda /= lambda.sum();
        y = A * lambda;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < k; ++i)
        if (mu[i] < 1e-14 && lambda[i] > mu[i])
          theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
      lambda = (1.0 - theta) * lambda + theta * mu;
      // drop a vanished index
      std::vector<Eigen::Index> S2;
      std::vector<double> l2;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (lambda[i] > 1e-14) {
          S2.push_back(S[i]);
          l2.push_back(lambda[i]);
        }
      }
      if (S2.empty()) {
        S2.push_back(S[0]);
        l2.push_back(1.0);
      }
      S = std::move(S2);
      lambda = Eigen::Map<Vec>(l2.data(), static_cast<Eigen::Index>(l2.size()));
      double sum = lambda.sum();
      lambda /= sum;
      Mat A2(d, static_cast<Eigen::Index>(S.size()));
      for (size_t i = 0; i < S.size(); ++i) A2.col(static_cast<Eigen::Index>(i)) = P.col(S[i]);
      y = A2 * lambda;
    }
  }
  double norm = y.norm();
  if (norm < 1e-14) {
    y.setZero();
    norm = 0.0;
  }
  return {y, norm};
}

double dist_point(const ConvexBody& a, const Vec& x) {
  if (x.size() != a.ambient_dim()) throw std::invalid_argument("point dimension mismatch");
  Mat P = a.vertices().colwise() - x;
  return min_norm_point(P).norm;
}

Vec project_point(const ConvexBody& a, const Vec& x) {
  if (x.size() != a.ambient_dim()) throw std::invalid_argument("point dimension mismatch");
  Mat P = a.vertices().colwise() - x;
  return x + min_norm_point(P).point;
}

double hausdorff_excess(const ConvexBody& a, const ConvexBody& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("body dimension mismatch");
  double m = 0.0;
  for (int i = 0; i < a.vertex_count(); ++i)
    m = std::max(m, dist_point(b, a.vertex(i)));
  return m;
}

double hausdorff(const ConvexBody& a, const ConvexBody& b) {
  return std::max(hausdorff_excess(a, b), hausdorff_excess(b, a));
}

bool contains_point(const ConvexBody& a, const Vec& x, double tol) {
  return dist_point(a, x) <= tol;
}

}  // namespace filreg
