#include "filreg/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "filreg/regularize.hpp"

namespace filreg::gallery {

namespace {

constexpr int kMaxDenominator = 100;
constexpr double kRationalSpan = 2.5;  // truncation window for rational points

Polynomial c1(double v) { return Polynomial::constant(1, v); }
Polynomial c2(double v) { return Polynomial::constant(2, v); }

PiecewiseField make_sign1d(double at_zero) {
  Polynomial x = Polynomial::monomial(1, 0);
  std::vector<Stratum> strata{
      {{x}, {c1(1.0)}},
      {{x.negated()}, {c1(-1.0)}},
  };
  std::vector<NullOverride> ovr{{NullStratum{x, {}}, {c1(at_zero)}}};
  return PiecewiseField(1, 1, 1.0, std::move(strata), std::move(ovr));
}

}  // namespace

PiecewiseField sign1d() { return make_sign1d(1.0); }

PiecewiseField sign_flow() {
  Polynomial x = Polynomial::monomial(1, 0);
  std::vector<Stratum> strata{
      {{x}, {c1(-1.0)}},
      {{x.negated()}, {c1(1.0)}},
  };
  std::vector<NullOverride> ovr{{NullStratum{x, {}}, {c1(0.0)}}};
  return PiecewiseField(1, 1, 1.0, std::move(strata), std::move(ovr));
}

PiecewiseField relay2d() {
  Polynomial x2 = Polynomial::monomial(2, 1);
  std::vector<Stratum> strata{
      {{x2}, {c2(1.0), c2(-1.0)}},
      {{x2.negated()}, {c2(1.0), c2(1.0)}},
  };
  std::vector<NullOverride> ovr{{NullStratum{x2, {}}, {c2(1.0), c2(0.0)}}};
  return PiecewiseField(2, 2, std::sqrt(2.0), std::move(strata), std::move(ovr));
}

PiecewiseField rational_scale() {
  std::vector<Stratum> strata{{{}, {c1(0.0)}}};
  std::vector<NullOverride> ovr;
  ovr.reserve(kMaxDenominator);
  for (int m = 1; m <= kMaxDenominator; ++m) {
    std::vector<Vec> pts;
    const int pmax = static_cast<int>(kRationalSpan * m);
    for (int p = -pmax; p <= pmax; ++p) {
      if (p == 0 || std::gcd(std::abs(p), m) != 1) continue;
      pts.push_back(vec1(static_cast<double>(p) / m));
    }
    if (pts.empty()) continue;
    ovr.push_back({NullStratum{{}, std::move(pts)}, {c1(1.0 / m)}});
  }
  return PiecewiseField(1, 1, 1.0, std::move(strata), std::move(ovr));
}

PiecewiseField rotation2d() {
  std::vector<Stratum> strata{
      {{}, {Polynomial::monomial(2, 1), Polynomial::monomial(2, 0, 1, -1.0)}}};
  return PiecewiseField(2, 2, 2.0 * std::sqrt(2.0), std::move(strata));
}

PiecewiseField abs_grad2d() {
  Polynomial x1 = Polynomial::monomial(2, 0);
  std::vector<Stratum> strata{
      {{x1}, {c2(1.0), c2(0.0)}},
      {{x1.negated()}, {c2(-1.0), c2(0.0)}},
  };
  std::vector<NullOverride> ovr{{NullStratum{x1, {}}, {c2(0.0), c2(0.0)}}};
  return PiecewiseField(2, 2, 1.0, std::move(strata), std::move(ovr));
}

PointField radial2d() {
  PointField f;
  f.d = 2;
  f.l = 2;
  f.bound = 1.0;
  f.name = "radial2d";
  f.eval = [](const Vec& x) -> Vec {
    double n = x.norm();
    if (n == 0.0) return Vec::Zero(2);
    return x / n;
  };
  return f;
}

const SplittingPartition& default_partition() {
  static const SplittingPartition part = build_splitting(8, 32, 12);
  return part;
}

PointField splitting_indicator() {
  PointField f;
  f.d = 1;
  f.l = 1;
  f.bound = 1.0;
  f.name = "splitting-indicator";
  f.eval = [](const Vec& x) {
    return vec1(default_partition().assign(x) == 2 ? 1.0 : 0.0);
  };
  return f;
}

int denominator_of(double x, int max_den, double tol) {
  for (int m = 1; m <= max_den; ++m) {
    const double y = x * m;
    const double p = std::round(y);
    if (std::abs(y - p) <= tol) return (p == 0.0) ? 0 : m;
  }
  return 0;
}

namespace {

CuscoOracle spike_oracle(std::string name, double lo_at_zero, double hi_at_zero) {
  auto eval = [lo_at_zero, hi_at_zero](const Vec& x) {
    if (std::abs(x[0]) <= 1e-12) return ConvexBody::interval(lo_at_zero, hi_at_zero);
    return ConvexBody::singleton(vec1(0.0));
  };
  return CuscoOracle(1, 1, 1.0, eval, {vec1(0.0)}, std::move(name));
}

std::vector<Vec> rational_points() {
  std::vector<Vec> pts;
  for (int m = 1; m <= kMaxDenominator; ++m) {
    const int pmax = static_cast<int>(kRationalSpan * m);
    for (int p = -pmax; p <= pmax; ++p) {
      if (p == 0 || std::gcd(std::abs(p), m) != 1) continue;
      pts.push_back(vec1(static_cast<double>(p) / m));
    }
  }
  return pts;
}

}  // namespace

CuscoOracle phi1() { return spike_oracle("phi1", 0.0, 1.0); }
CuscoOracle phi2() { return spike_oracle("phi2", -1.0, 1.0); }

CuscoOracle phi3() {
  auto eval = [](const Vec& x) {
    const int m = denominator_of(x[0], kMaxDenominator);
    if (m == 0) return ConvexBody::singleton(vec1(0.0));
    return ConvexBody::interval(-1.0 / m, 1.0 / m);
  };
  return CuscoOracle(1, 1, 1.0, eval, rational_points(), "phi3");
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> all{
      "sign1d",         "sign-flow", "relay2d",  "phi1",
      "phi2",           "phi3",      "rational-scale",
      "splitting-indicator", "rotation2d", "radial2d", "abs-grad2d"};
  return all;
}

bool has(const std::string& name) {
  const auto& ns = names();
  return std::find(ns.begin(), ns.end(), name) != ns.end();
}

std::string unknown_name_message(const std::string& name) {
  std::string msg = "unknown gallery name '" + name + "'; known names:";
  for (const auto& n : names()) msg += " " + n;
  return msg;
}

Kind kind_of(const std::string& name) {
  if (name == "phi1" || name == "phi2" || name == "phi3") return Kind::oracle;
  if (name == "radial2d" || name == "splitting-indicator") return Kind::point;
  if (has(name)) return Kind::piecewise;
  throw std::invalid_argument(unknown_name_message(name));
}

std::optional<PiecewiseField> piecewise(const std::string& name) {
  if (name == "sign1d") return sign1d();
  if (name == "sign-flow") return sign_flow();
  if (name == "relay2d") return relay2d();
  if (name == "rational-scale") return rational_scale();
  if (name == "rotation2d") return rotation2d();
  if (name == "abs-grad2d") return abs_grad2d();
  return std::nullopt;
}

PointField point_field(const std::string& name) {
  if (name == "radial2d") return radial2d();
  if (name == "splitting-indicator") return splitting_indicator();
  if (auto f = piecewise(name)) return as_point_field(*f, name);
  throw std::invalid_argument(unknown_name_message(name));
}

CuscoOracle oracle(const std::string& name) {
  if (name == "phi1") return phi1();
  if (name == "phi2") return phi2();
  if (name == "phi3") return phi3();
  if (name.rfind("filippov:", 0) == 0) {
    auto f = piecewise(name.substr(9));
    if (!f) throw std::invalid_argument(unknown_name_message(name.substr(9)));
    PiecewiseField field = *f;
    auto eval = [field](const Vec& x) { return filippov_exact(field, x); };
    return CuscoOracle(field.input_dim(), field.output_dim(), field.bound(), eval, {},
                       name);
  }
  throw std::invalid_argument(unknown_name_message(name));
}

}  // namespace filreg::gallery
