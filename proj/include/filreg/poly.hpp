#pragma once

#include <vector>

#include "filreg/types.hpp"

namespace filreg {

struct PolyTerm {
  std::vector<int> exponents;  // one entry per input variable
  double coef = 0.0;
};

/// Sparse multivariate polynomial on R^arity. Terms are kept in a canonical
/// form: exponent tuples sorted lexicographically, duplicates merged, zero
/// coefficients dropped.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int arity, std::vector<PolyTerm> terms);

  static Polynomial constant(int arity, double c);
  /// coef * x_axis^power
  static Polynomial monomial(int arity, int axis, int power = 1, double coef = 1.0);
  /// <lin, x> + c
  static Polynomial affine(const Vec& lin, double c);

  double operator()(const Vec& x) const;

  Polynomial derivative(int axis) const;
  Polynomial negated() const;
  Polynomial scaled(double c) const;

  int arity() const { return arity_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }
  int degree() const;
  bool is_zero(double tol = 0.0) const;

  /// Upper bound of |p| over the box: sum of |coef| * max(|lo|,|hi|)^e.
  double bound_on_box(const Box& box) const;

  bool same_terms(const Polynomial& other, double tol = 1e-12) const;

 private:
  int arity_ = 0;
  std::vector<PolyTerm> terms_;
};

/// Component-wise polynomial map R^d -> R^l.
using PolyMap = std::vector<Polynomial>;

Vec eval_map(const PolyMap& f, const Vec& x);

}  // namespace filreg
