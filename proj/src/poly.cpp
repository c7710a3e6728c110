#include "filreg/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace filreg {

namespace {

double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

Polynomial::Polynomial(int arity, std::vector<PolyTerm> terms) : arity_(arity) {
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != arity)
      throw std::invalid_argument("polynomial term arity mismatch");
    for (int e : t.exponents)
      if (e < 0) throw std::invalid_argument("negative exponent");
  }
  std::sort(terms.begin(), terms.end(),
            [](const PolyTerm& a, const PolyTerm& b) { return a.exponents < b.exponents; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().exponents == t.exponents)
      terms_.back().coef += t.coef;
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const PolyTerm& t) { return t.coef == 0.0; });
}

Polynomial Polynomial::constant(int arity, double c) {
  return Polynomial(arity, {{std::vector<int>(arity, 0), c}});
}

Polynomial Polynomial::monomial(int arity, int axis, int power, double coef) {
  std::vector<int> e(arity, 0);
  e.at(axis) = power;
  return Polynomial(arity, {{e, coef}});
}

Polynomial Polynomial::affine(const Vec& lin, double c) {
  const int d = static_cast<int>(lin.size());
  std::vector<PolyTerm> ts;
  ts.push_back({std::vector<int>(d, 0), c});
  for (int a = 0; a < d; ++a) {
    std::vector<int> e(d, 0);
    e[a] = 1;
    ts.push_back({e, lin[a]});
  }
  return Polynomial(d, std::move(ts));
}

double Polynomial::operator()(const Vec& x) const {
  if (static_cast<int>(x.size()) != arity_)
    throw std::invalid_argument("polynomial evaluated at wrong dimension");
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = t.coef;
    for (int a = 0; a < arity_; ++a)
      if (t.exponents[a] > 0) m *= int_pow(x[a], t.exponents[a]);
    s += m;
  }
  return s;
}

Polynomial Polynomial::derivative(int axis) const {
  std::vector<PolyTerm> out;
  for (const auto& t : terms_) {
    int e = t.exponents.at(axis);
    if (e == 0) continue;
    PolyTerm d = t;
    d.coef *= e;
    d.exponents[axis] = e - 1;
    out.push_back(std::move(d));
  }
  return Polynomial(arity_, std::move(out));
}

Polynomial Polynomial::negated() const { return scaled(-1.0); }

Polynomial Polynomial::scaled(double c) const {
  std::vector<PolyTerm> out = terms_;
  for (auto& t : out) t.coef *= c;
  return Polynomial(arity_, std::move(out));
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_zero(double tol) const {
  for (const auto& t : terms_)
    if (std::abs(t.coef) > tol) return false;
  return true;
}

double Polynomial::bound_on_box(const Box& box) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = std::abs(t.coef);
    for (int a = 0; a < arity_; ++a) {
      double r = std::max(std::abs(box.lo[a]), std::abs(box.hi[a]));
      m *= int_pow(r, t.exponents[a]);
    }
    s += m;
  }
  return s;
}

bool Polynomial::same_terms(const Polynomial& other, double tol) const {
  if (arity_ != other.arity_ || terms_.size() != other.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exponents != other.terms_[i].exponents) return false;
    if (std::abs(terms_[i].coef - other.terms_[i].coef) > tol) return false;
  }
  return true;
}

Vec eval_map(const PolyMap& f, const Vec& x) {
  Vec y(static_cast<Eigen::Index>(f.size()));
  for (size_t i = 0; i < f.size(); ++i) y[static_cast<Eigen::Index>(i)] = f[i](x);
  return y;
}

}  // namespace filreg
