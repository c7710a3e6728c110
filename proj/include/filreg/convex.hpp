#pragma once

#include <vector>

#include "filreg/types.hpp"

namespace filreg {

/// Compact convex polytope, stored as its extreme points. Columns of the
/// vertex matrix are kept in canonical (lexicographic) order, so two bodies
/// are equal as sets iff their matrices are identical.
///
/// For ambient dimension 1..3 the stored vertices are exactly the extreme
/// points of the hull (re-hulling is a no-op). Above dimension 3 the points
/// are only deduplicated; metric queries still go through the min-norm-point
/// solver and are exact for the hull of what is stored.
class ConvexBody {
 public:
  /// Placeholder with no vertices; every constructor that matters goes
  /// through hull().
  ConvexBody() = default;

  /// Convex hull of a nonempty point set (columns). Duplicates within 1e-12
  /// are merged. Throws on an empty set.
  static ConvexBody hull(const Mat& points);
  static ConvexBody hull(const std::vector<Vec>& points);
  static ConvexBody singleton(const Vec& p);
  /// 1-D interval [lo, hi].
  static ConvexBody interval(double lo, double hi);

  int ambient_dim() const { return static_cast<int>(verts_.rows()); }
  int vertex_count() const { return static_cast<int>(verts_.cols()); }
  const Mat& vertices() const { return verts_; }
  Vec vertex(int i) const { return verts_.col(i); }

  double min1d() const;
  double max1d() const;

  bool operator==(const ConvexBody& o) const {
    return verts_.rows() == o.verts_.rows() && verts_.cols() == o.verts_.cols() &&
           verts_ == o.verts_;
  }

 private:
  explicit ConvexBody(Mat verts) : verts_(std::move(verts)) {}
  Mat verts_;
};

/// Support function: max over vertices of <v, u>. u must be unit within 1e-9.
double support(const ConvexBody& a, const Vec& u);

/// Euclidean distance from x to the body (0 iff x is in the body).
double dist_point(const ConvexBody& a, const Vec& x);

/// Nearest point of the body to x.
Vec project_point(const ConvexBody& a, const Vec& x);

/// Directed Hausdorff excess sup_{p in a} dist(p, b).
double hausdorff_excess(const ConvexBody& a, const ConvexBody& b);

/// Hausdorff distance (symmetric).
double hausdorff(const ConvexBody& a, const ConvexBody& b);

bool contains_point(const ConvexBody& a, const Vec& x, double tol = 1e-9);

/// Min-norm point of the convex hull of the columns of P, with its norm.
/// Wolfe's algorithm; exact up to linear-solve precision in any dimension.
struct MinNormPoint {
  Vec point;
  double norm;
};
MinNormPoint min_norm_point(const Mat& P);

}  // namespace filreg
