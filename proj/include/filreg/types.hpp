#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <string>
#include <vector>

namespace filreg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Vec vec1(double x) {
  Vec v(1);
  v[0] = x;
  return v;
}

/// Axis-aligned box, lo and hi per axis.
struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double side(int a) const { return hi[a] - lo[a]; }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= side(a);
    return v;
  }
  bool contains(const Vec& x) const {
    for (int a = 0; a < dim(); ++a)
      if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
  }
};

inline Box make_box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  return Box{make_vec(lo), make_vec(hi)};
}

/// Shortest round-trip decimal form, used by every text output.
std::string fmt_double(double x);

}  // namespace filreg
