#include "filreg/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "filreg/rng.hpp"

namespace filreg {

namespace {

bool lex_less_vec(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

bool NullStratum::matches(const Vec& x, double tol) const {
  if (zero_of) return std::abs((*zero_of)(x)) <= tol;
  for (const auto& p : points)
    if ((p - x).norm() <= tol) return true;
  return false;
}

PiecewiseField::PiecewiseField(int d, int l, double bound, std::vector<Stratum> strata,
                               std::vector<NullOverride> overrides)
    : d_(d), l_(l), bound_(bound), strata_(std::move(strata)), overrides_(std::move(overrides)) {
  if (d_ < 1 || l_ < 1) throw std::invalid_argument("field dimensions must be positive");
  for (const auto& s : strata_) {
    if (static_cast<int>(s.value.size()) != l_)
      throw std::invalid_argument("stratum value has wrong output dimension");
    for (const auto& g : s.guards)
      if (g.arity() != d_) throw std::invalid_argument("guard arity mismatch");
    for (const auto& v : s.value)
      if (v.arity() != d_) throw std::invalid_argument("value arity mismatch");
  }
  for (const auto& o : overrides_) {
    if (static_cast<int>(o.value.size()) != l_)
      throw std::invalid_argument("override value has wrong output dimension");
    if (o.where.zero_of && o.where.zero_of->arity() != d_)
      throw std::invalid_argument("override carrier arity mismatch");
    for (const auto& p : o.where.points)
      if (static_cast<int>(p.size()) != d_)
        throw std::invalid_argument("override point dimension mismatch");
  }
  build_point_index();
}

void PiecewiseField::build_point_index() {
  point_index_.clear();
  zero_overrides_.clear();
  for (size_t i = 0; i < overrides_.size(); ++i) {
    if (overrides_[i].where.zero_of) {
      zero_overrides_.push_back(static_cast<int>(i));
    } else {
      for (const auto& p : overrides_[i].where.points)
        point_index_.push_back({p, static_cast<int>(i)});
    }
  }
  std::sort(point_index_.begin(), point_index_.end(),
            [](const PointRef& a, const PointRef& b) { return a.p[0] < b.p[0]; });
}

std::vector<int> PiecewiseField::matching_overrides(const Vec& x, double tol) const {
  std::vector<int> out;
  for (int i : zero_overrides_)
    if (std::abs((*overrides_[static_cast<size_t>(i)].where.zero_of)(x)) <= tol)
      out.push_back(i);
  auto it = std::lower_bound(
      point_index_.begin(), point_index_.end(), x[0] - tol,
      [](const PointRef& r, double v) { return r.p[0] < v; });
  for (; it != point_index_.end() && it->p[0] <= x[0] + tol; ++it)
    if ((it->p - x).norm() <= tol) out.push_back(it->override_idx);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vec PiecewiseField::eval(const Vec& x) const {
  if (static_cast<int>(x.size()) != d_)
    throw std::invalid_argument("point dimension mismatch");
  if (!x.allFinite()) throw std::invalid_argument("non-finite point");
  auto hits = matching_overrides(x);
  if (!hits.empty()) return eval_map(overrides_[static_cast<size_t>(hits.back())].value, x);
  for (const auto& s : strata_) {
    bool in = true;
    for (const auto& g : s.guards)
      if (!(g(x) > 0.0)) {
        in = false;
        break;
      }
    if (in) return eval_map(s.value, x);
  }
  throw std::runtime_error("uncovered point");
}

std::vector<Vec> PiecewiseField::essential_values(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != d_)
    throw std::invalid_argument("point dimension mismatch");
  std::vector<Vec> vals;
  for (const auto& s : strata_) {
    bool adjacent = true;
    for (const auto& g : s.guards)
      if (g(x) < -tol) {
        adjacent = false;
        break;
      }
    if (adjacent) vals.push_back(eval_map(s.value, x));
  }
  std::sort(vals.begin(), vals.end(), lex_less_vec);
  std::vector<Vec> out;
  for (auto& v : vals) {
    if (!out.empty() && (out.back() - v).norm() <= 1e-12) continue;
    out.push_back(std::move(v));
  }
  return out;
}

PiecewiseField PiecewiseField::modify_on_null(const NullStratum& where, PolyMap value,
                                              std::optional<double> new_bound) const {
  if (where.zero_of && where.zero_of->is_zero(1e-12))
    throw std::invalid_argument("not a null set");
  if (!where.zero_of && where.points.empty())
    throw std::invalid_argument("not a null set");
  if (static_cast<int>(value.size()) != l_)
    throw std::invalid_argument("override value has wrong output dimension");

  double b = bound_;
  if (new_bound) {
    b = std::max(b, *new_bound);
  } else if (!where.points.empty()) {
    for (const auto& p : where.points) {
      double n = eval_map(value, p).norm();
      b = std::max(b, n);
    }
  } else {
    // crude profile of the override value on the reference box [-10,10]^d
    Box ref{Vec::Constant(d_, -10.0), Vec::Constant(d_, 10.0)};
    double n2 = 0.0;
    for (const auto& c : value) {
      double m = c.bound_on_box(ref);
      n2 += m * m;
    }
    b = std::max(b, std::sqrt(n2));
  }
  auto copy = *this;
  copy.overrides_.push_back(NullOverride{where, std::move(value)});
  copy.bound_ = b;
  copy.build_point_index();
  return copy;
}

PointField as_point_field(const PiecewiseField& f, std::string name) {
  PointField pf;
  pf.d = f.input_dim();
  pf.l = f.output_dim();
  pf.bound = f.bound();
  pf.eval = [f](const Vec& x) { return f.eval(x); };
  pf.name = std::move(name);
  return pf;
}

CuscoOracle::CuscoOracle(int d, int l, double bound,
                         std::function<ConvexBody(const Vec&)> eval,
                         std::vector<Vec> exceptional_points, std::string name)
    : d_(d),
      l_(l),
      bound_(bound),
      eval_(std::move(eval)),
      exceptional_(std::move(exceptional_points)),
      name_(std::move(name)) {
  std::sort(exceptional_.begin(), exceptional_.end(),
            [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
}

bool CuscoOracle::is_exceptional(const Vec& x, double tol) const {
  auto it = std::lower_bound(exceptional_.begin(), exceptional_.end(), x[0] - tol,
                             [](const Vec& p, double v) { return p[0] < v; });
  for (; it != exceptional_.end() && (*it)[0] <= x[0] + tol; ++it)
    if ((*it - x).norm() <= tol) return true;
  return false;
}

std::vector<Vec> dyadic_targets(int count, double bound, int l) {
  if (count < 1) throw std::invalid_argument("target count must be positive");
  std::vector<Vec> out;
  out.reserve(count);
  for (int level = 0; static_cast<int>(out.size()) < count && level < 40; ++level) {
    const long steps = 1L << level;
    std::vector<long> idx(l, 0);
    while (true) {
      bool fresh = (level == 0);
      for (int a = 0; a < l && !fresh; ++a) fresh = (idx[a] % 2 == 1);
      if (fresh) {
        Vec t(l);
        for (int a = 0; a < l; ++a)
          t[a] = -bound + (2.0 * bound) * static_cast<double>(idx[a]) / steps;
        out.push_back(t);
        if (static_cast<int>(out.size()) >= count) return out;
      }
      // next tuple, lexicographic
      int a = l - 1;
      while (a >= 0) {
        if (++idx[a] <= steps) break;
        idx[a] = 0;
        --a;
      }
      if (a < 0) break;
    }
  }
  return out;
}

SelectionFamily::SelectionFamily(CuscoOracle parent, int count, double density_eps)
    : parent_(std::move(parent)), count_(count), density_eps_(density_eps) {
  if (count_ < 1) throw std::invalid_argument("selection count must be positive");
  targets_ = dyadic_targets(count_, parent_.bound(), parent_.output_dim());
}

Vec SelectionFamily::select(int n, const Vec& x) const {
  if (n < 1 || n > count_) throw std::out_of_range("selection index");
  return project_point(parent_(x), targets_[static_cast<size_t>(n - 1)]);
}

ConvexBody SelectionFamily::span(const Vec& x) const {
  ConvexBody value = parent_(x);
  std::vector<Vec> pts;
  pts.reserve(count_);
  for (int n = 1; n <= count_; ++n)
    pts.push_back(project_point(value, targets_[static_cast<size_t>(n - 1)]));
  return ConvexBody::hull(pts);
}

SelectionFamily selections_from_oracle(const CuscoOracle& phi, int count,
                                       double density_eps) {
  return SelectionFamily(phi, count, density_eps);
}

FieldValidation validate_field(const PiecewiseField& f, const Box& box, int n_samples,
                               std::uint64_t seed) {
  FieldValidation v;
  CounterRng rng(seed, 0x76616c6964ull);
  long in_stratum = 0, covered = 0;
  for (int i = 0; i < n_samples; ++i) {
    Vec x = rng.next_in_box(box);
    int hits = 0;
    for (const auto& s : f.strata()) {
      bool in = true;
      for (const auto& g : s.guards)
        if (!(g(x) > 0.0)) {
          in = false;
          break;
        }
      if (in) ++hits;
    }
    if (hits > 1) v.disjoint = false;
    bool on_override = !f.matching_overrides(x).empty();
    if (hits > 0) ++in_stratum;
    if (hits > 0 || on_override) {
      ++covered;
      double n = f.eval(x).norm();
      v.max_norm = std::max(v.max_norm, n);
      if (n > f.bound() + 1e-9) v.bounded = false;
    }
  }
  v.stratum_coverage = static_cast<double>(in_stratum) / n_samples;
  v.covered_fraction = static_cast<double>(covered) / n_samples;
  return v;
}

bool check_usc(const CuscoOracle& phi, const Vec& x, double eps,
               const std::vector<double>& delta_schedule, int n_samples,
               std::uint64_t seed) {
  ConvexBody at_x = phi(x);
  for (size_t k = 0; k < delta_schedule.size(); ++k) {
    double excess = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(k),
                     static_cast<std::uint64_t>(i));
      Vec xp = rng.next_in_ball(x, delta_schedule[k]);
      excess = std::max(excess, hausdorff_excess(phi(xp), at_x));
      if (excess > eps) break;
    }
    if (excess <= eps) return true;
  }
  return false;
}

}  // namespace filreg
