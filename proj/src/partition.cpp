#include "filreg/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace filreg {

namespace {

constexpr double kMinGap = 1e-12;

double slack_for(double lo, double hi) {
  double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  return 16.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

FatCantorSet::FatCantorSet(double lo, double hi, double r, int depth)
    : lo_(lo), hi_(hi), r_(r), depth_(depth) {
  if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("removal ratio must be in (0,1]");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("empty interval");
  slack_ = slack_for(lo, hi);

  const double base_len = hi - lo;
  std::vector<Interval> survivors{{lo, hi}};
  removed_.reserve((1u << depth) - 1);
  for (int n = 1; n <= depth; ++n) {
    const double w = base_len * r_ * std::ldexp(1.0, -2 * n);  // r * 4^-n
    std::vector<Interval> next;
    next.reserve(2 * survivors.size());
    for (const auto& s : survivors) {
      const double c = 0.5 * (s.lo + s.hi);
      Interval gap{c - 0.5 * w, c + 0.5 * w};
      removed_.push_back(gap);
      next.push_back({s.lo, gap.lo});
      next.push_back({gap.hi, s.hi});
    }
    survivors.swap(next);
  }
  std::sort(removed_.begin(), removed_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
}

std::vector<FatCantorSet::Interval> FatCantorSet::survivors() const {
  std::vector<Interval> out;
  out.reserve(removed_.size() + 1);
  double cursor = lo_;
  for (const auto& gap : removed_) {
    out.push_back({cursor, gap.lo});
    cursor = gap.hi;
  }
  out.push_back({cursor, hi_});
  return out;
}

FatCantorSet::Membership FatCantorSet::contains(double x) const {
  if (x < lo_ - slack_ || x > hi_ + slack_) return Membership::out;
  if (x < lo_ + slack_ || x > hi_ - slack_) return Membership::frontier;
  auto it = std::upper_bound(removed_.begin(), removed_.end(), x,
                             [](double v, const Interval& g) { return v < g.lo; });
  if (it != removed_.begin()) {
    const Interval& g = *(it - 1);
    if (x < g.hi + slack_) {
      if (x < g.lo + slack_ || x > g.hi - slack_) return Membership::frontier;
      return Membership::out;
    }
  }
  if (it != removed_.end() && x > it->lo - slack_) return Membership::frontier;
  return Membership::in;
}

double FatCantorSet::measure() const {
  const double removed_frac = 0.5 * r_ * (1.0 - std::ldexp(1.0, -depth_));
  return (hi_ - lo_) * (1.0 - removed_frac);
}

double FatCantorSet::measure_lower() const {
  return measure() - slack_ * static_cast<double>(removed_.size() + 2);
}

double FatCantorSet::measure_in_lower(double a, double b) const {
  double s = 0.0;
  for (const auto& iv : survivors()) {
    double lo = std::max(iv.lo, a), hi = std::min(iv.hi, b);
    if (hi > lo) s += (hi - lo) - 2.0 * slack_;
  }
  return std::max(0.0, s);
}

double FatCantorSet::measure_in_upper(double a, double b) const {
  double s = 0.0;
  for (const auto& iv : survivors()) {
    double lo = std::max(iv.lo, a), hi = std::min(iv.hi, b);
    if (hi > lo) s += (hi - lo) + 2.0 * slack_;
  }
  return s;
}

FatCantorSet build_fat_cantor(double lo, double hi, double r, int depth) {
  return FatCantorSet(lo, hi, r, depth);
}

std::uint64_t pair_index(std::uint64_t k, std::uint64_t n) {
  const std::uint64_t s = k + n;
  return (s - 1) * (s - 2) / 2 + n;
}

void unpair_index(std::uint64_t m, std::uint64_t& k, std::uint64_t& n) {
  std::uint64_t s = 2;
  while ((s) * (s - 1) / 2 < m) ++s;  // smallest s with T(s-1) >= m
  const std::uint64_t base = (s - 1) * (s - 2) / 2;
  n = m - base;
  k = s - n;
}

namespace {

// positive rationals in Calkin-Wilf order: 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ...
double calkin_wilf(std::uint64_t i) {
  double q = 1.0;
  for (std::uint64_t t = 1; t < i; ++t) q = 1.0 / (2.0 * std::floor(q) - q + 1.0);
  return q;
}

double rational_center(std::uint64_t i) {
  if (i == 1) return 0.0;
  const std::uint64_t j = (i - 2) / 2 + 1;
  const double q = calkin_wilf(j);
  return (i % 2 == 0) ? q : -q;
}

}  // namespace

void rational_interval(std::uint64_t k, double& lo, double& hi) {
  std::uint64_t ci, rj;
  unpair_index(k, ci, rj);
  const double c = rational_center(ci);
  const double rad = 1.0 / static_cast<double>(rj);
  lo = c - rad;
  hi = c + rad;
}

std::vector<Box> default_test_boxes(int dim) {
  auto cube = [dim](double a, double b) {
    return Box{Vec::Constant(dim, a), Vec::Constant(dim, b)};
  };
  return {cube(0.0, 1.0), cube(-1.0, 1.0), cube(-1.0, 0.0)};
}

SplittingPartition build_splitting(int n_classes, std::uint64_t k_max, int depth, double r,
                                   int dim, std::vector<Box> test_boxes) {
  if (n_classes < 1) throw std::invalid_argument("need at least one class");
  if (n_classes >= 2 && k_max < static_cast<std::uint64_t>(n_classes))
    throw std::invalid_argument("k_max must be >= the class count");
  if (dim < 1) throw std::invalid_argument("dimension must be positive");

  SplittingPartition p;
  p.n_classes_ = n_classes;
  p.k_max_ = k_max;
  p.depth_ = depth;
  p.r_ = r;
  p.dim_ = dim;
  p.boxes_ = test_boxes.empty() ? default_test_boxes(dim) : std::move(test_boxes);
  for (const auto& b : p.boxes_)
    if (b.dim() != dim) throw std::invalid_argument("test box dimension mismatch");

  if (n_classes == 1) {  // degenerate: class 1 is everything
    p.certify();
    return p;
  }

  const std::uint64_t m_max = pair_index(k_max, static_cast<std::uint64_t>(n_classes));
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    std::uint64_t k, n;
    unpair_index(m, k, n);
    if (k > k_max || n > static_cast<std::uint64_t>(n_classes)) continue;
    double uk_lo, uk_hi;
    rational_interval(k, uk_lo, uk_hi);

    // largest open gap of U_k minus every survivor interval placed so far;
    // the placed sets are nowhere dense at depth, so gaps always exist
    double best_lo = 0, best_hi = 0, best_len = -1;
    auto consider = [&](double glo, double ghi) {
      if (ghi - glo > best_len) {
        best_len = ghi - glo;
        best_lo = glo;
        best_hi = ghi;
      }
    };
    auto it = std::upper_bound(
        p.cells_.begin(), p.cells_.end(), uk_lo,
        [](double v, const SplittingPartition::Cell& c) { return v < c.lo; });
    double cursor = uk_lo;
    if (it != p.cells_.begin() && (it - 1)->hi > uk_lo) cursor = (it - 1)->hi;
    for (; it != p.cells_.end() && it->lo < uk_hi; ++it) {
      if (it->lo > cursor) consider(cursor, it->lo);
      cursor = std::max(cursor, it->hi);
    }
    if (cursor < uk_hi) consider(cursor, uk_hi);
    if (best_len < kMinGap) throw std::runtime_error("increase K_max/depth");

    const double quarter = 0.25 * best_len;
    FatCantorSet set(best_lo + quarter, best_hi - quarter, r, depth);
    // splice the new survivor cells in; they are contiguous in the order
    std::vector<SplittingPartition::Cell> fresh;
    fresh.reserve(set.removed().size() + 1);
    for (const auto& iv : set.survivors())
      fresh.push_back({iv.lo, iv.hi, static_cast<int>(n)});
    auto pos = std::upper_bound(
        p.cells_.begin(), p.cells_.end(), fresh.front().lo,
        [](double v, const SplittingPartition::Cell& c) { return v < c.lo; });
    p.cells_.insert(pos, fresh.begin(), fresh.end());
    p.placed_.push_back({m, k, static_cast<int>(n), std::move(set)});
  }
  p.certify();
  return p;
}

void SplittingPartition::certify() {
  certificates_ = Mat::Zero(n_classes_, static_cast<Eigen::Index>(boxes_.size()));
  for (int cls = 1; cls <= n_classes_; ++cls)
    for (size_t b = 0; b < boxes_.size(); ++b)
      certificates_(cls - 1, static_cast<Eigen::Index>(b)) =
          measure_lower(cls, boxes_[b]);
}

int SplittingPartition::assign1d(double x1) const {
  if (n_classes_ == 1 || cells_.empty()) return 1;
  auto it = std::upper_bound(cells_.begin(), cells_.end(), x1,
                             [](double v, const Cell& c) { return v < c.lo; });
  if (it == cells_.begin()) return 1;
  const Cell& c = *(it - 1);
  const double slack = slack_for(c.lo, c.hi);
  if (x1 > c.hi - slack || x1 < c.lo + slack) return 1;  // outside or frontier
  return c.cls;
}

int SplittingPartition::assign(const Vec& x) const {
  if (x.size() < 1 || !x.allFinite()) throw std::invalid_argument("bad point");
  return assign1d(x[0]);
}

double SplittingPartition::measure_upper_1d(int cls, double a, double b) const {
  if (b <= a) return 0.0;
  if (cls == 1) {
    double s = b - a;
    for (auto it = std::upper_bound(cells_.begin(), cells_.end(), a,
                                    [](double v, const Cell& c) { return v < c.hi; });
         it != cells_.end() && it->lo < b; ++it) {
      if (it->cls == 1) continue;
      double lo = std::max(it->lo, a), hi = std::min(it->hi, b);
      const double slack = slack_for(it->lo, it->hi);
      if (hi > lo) s -= std::max(0.0, (hi - lo) - 2.0 * slack);
    }
    return std::max(0.0, s);
  }
  double s = 0.0;
  for (auto it = std::upper_bound(cells_.begin(), cells_.end(), a,
                                  [](double v, const Cell& c) { return v < c.hi; });
       it != cells_.end() && it->lo < b; ++it) {
    if (it->cls != cls) continue;
    double lo = std::max(it->lo, a), hi = std::min(it->hi, b);
    const double slack = slack_for(it->lo, it->hi);
    if (hi > lo) s += (hi - lo) + 2.0 * slack;
  }
  return s;
}

double SplittingPartition::measure_lower_1d(int cls, double a, double b) const {
  if (b <= a) return 0.0;
  if (n_classes_ == 1) return b - a;
  if (cls == 1) {
    // everything that no class >= 2 survivor claims stays in class 1
    double s = b - a;
    for (auto it = std::upper_bound(cells_.begin(), cells_.end(), a,
                                    [](double v, const Cell& c) { return v < c.hi; });
         it != cells_.end() && it->lo < b; ++it) {
      if (it->cls == 1) continue;
      double lo = std::max(it->lo, a), hi = std::min(it->hi, b);
      const double slack = slack_for(it->lo, it->hi);
      if (hi > lo) s -= (hi - lo) + 2.0 * slack;
    }
    return std::max(0.0, s);
  }
  double s = 0.0;
  for (auto it = std::upper_bound(cells_.begin(), cells_.end(), a,
                                  [](double v, const Cell& c) { return v < c.hi; });
       it != cells_.end() && it->lo < b; ++it) {
    if (it->cls != cls) continue;
    double lo = std::max(it->lo, a), hi = std::min(it->hi, b);
    const double slack = slack_for(it->lo, it->hi);
    if (hi > lo) s += std::max(0.0, (hi - lo) - 2.0 * slack);
  }
  return s;
}

double SplittingPartition::measure_lower(int cls, const Box& box) const {
  double m1 = measure_lower_1d(cls, box.lo[0], box.hi[0]);
  for (int a = 1; a < dim_; ++a) m1 *= std::max(0.0, box.side(a));
  return m1;
}

std::vector<double> SplittingPartition::splitting_probes(
    int cls, int count, const std::vector<double>& radii, double min_density) const {
  // candidate points: endpoints of the widest removed gaps of the class
  struct Cand {
    double len;
    double x;
  };
  std::vector<Cand> cands;
  for (const auto& ps : placed_) {
    if (ps.cls != cls) continue;
    for (const auto& gap : ps.set.removed()) {
      cands.push_back({gap.length(), gap.lo});
      cands.push_back({gap.length(), gap.hi});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.len != b.len) return a.len > b.len;
    return a.x < b.x;
  });
  std::vector<double> out;
  for (const auto& c : cands) {
    bool ok = true;
    for (double rad : radii) {
      double lo = c.x - rad, hi = c.x + rad;
      if (measure_lower_1d(cls, lo, hi) < min_density * (hi - lo) ||
          measure_lower_1d(1, lo, hi) < min_density * (hi - lo)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.push_back(c.x);
      if (static_cast<int>(out.size()) >= count) break;
    }
  }
  return out;
}

PointField representing_function(const CuscoOracle& phi, const SelectionFamily& sel,
                                 const SplittingPartition& part) {
  if (sel.count() < part.n_classes())
    throw std::invalid_argument("fewer selections than classes");
  if (sel.parent().input_dim() != phi.input_dim() ||
      sel.parent().output_dim() != phi.output_dim())
    throw std::invalid_argument("selection family does not match the oracle");
  PointField f;
  f.d = phi.input_dim();
  f.l = phi.output_dim();
  f.bound = phi.bound();
  f.name = "representing";
  f.eval = [sel, part](const Vec& x) { return sel.select(part.assign(x), x); };
  return f;
}

}  // namespace filreg
