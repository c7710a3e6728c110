#include "filreg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace filreg {

namespace {

// sign convention: a guard is stored with its leading canonical coefficient
// positive, so +g / -g pairs across strata identify one surface
struct Surface {
  Polynomial g;
  std::vector<Polynomial> grad;
  std::vector<int> pos_strata, neg_strata;
};

struct FlowModel {
  const PiecewiseField* field = nullptr;
  int dim = 0;
  std::vector<Surface> surfaces;
  // per stratum: orientation on each surface (+1, -1, or 0 when unrelated)
  std::vector<std::vector<int>> orientation;

  Vec value(int stratum, const Vec& x) const {
    return eval_map(field->strata()[static_cast<size_t>(stratum)].value, x);
  }
  Vec grad_at(int s, const Vec& x) const {
    Vec n(dim);
    for (int a = 0; a < dim; ++a) n[a] = surfaces[static_cast<size_t>(s)].grad[static_cast<size_t>(a)](x);
    return n;
  }
};

FlowModel build_model(const PiecewiseField& f) {
  if (f.input_dim() != f.output_dim())
    throw std::invalid_argument("flow needs matching input and output dimensions");
  FlowModel m;
  m.field = &f;
  m.dim = f.input_dim();
  const auto& strata = f.strata();
  m.orientation.assign(strata.size(), {});
  for (size_t si = 0; si < strata.size(); ++si) {
    for (const auto& guard : strata[si].guards) {
      Polynomial canon = guard;
      int orient = 1;
      if (!canon.terms().empty() && canon.terms().front().coef < 0) {
        canon = canon.negated();
        orient = -1;
      }
      int idx = -1;
      for (size_t j = 0; j < m.surfaces.size(); ++j)
        if (m.surfaces[j].g.same_terms(canon)) {
          idx = static_cast<int>(j);
          break;
        }
      if (idx < 0) {
        Surface s;
        s.g = canon;
        for (int a = 0; a < m.dim; ++a) s.grad.push_back(canon.derivative(a));
        m.surfaces.push_back(std::move(s));
        idx = static_cast<int>(m.surfaces.size()) - 1;
        for (auto& o : m.orientation) o.resize(m.surfaces.size(), 0);
      }
      m.orientation[si].resize(m.surfaces.size(), 0);
      m.orientation[si][static_cast<size_t>(idx)] = orient;
      auto& lst = orient > 0 ? m.surfaces[static_cast<size_t>(idx)].pos_strata
                             : m.surfaces[static_cast<size_t>(idx)].neg_strata;
      if (std::find(lst.begin(), lst.end(), static_cast<int>(si)) == lst.end())
        lst.push_back(static_cast<int>(si));
    }
    m.orientation[si].resize(m.surfaces.size(), 0);
  }
  for (auto& o : m.orientation) o.resize(m.surfaces.size(), 0);
  return m;
}

int stratum_at_strict(const FlowModel& m, const Vec& x) {
  const auto& strata = m.field->strata();
  for (size_t si = 0; si < strata.size(); ++si) {
    bool in = true;
    for (const auto& g : strata[si].guards)
      if (!(g(x) > 0.0)) {
        in = false;
        break;
      }
    if (in) return static_cast<int>(si);
  }
  throw std::runtime_error("uncovered point");
}

/// Stratum on the requested side of surface s whose other guards hold at x.
int side_stratum(const FlowModel& m, int s, bool positive, const Vec& x, double tol) {
  const auto& cands = positive ? m.surfaces[static_cast<size_t>(s)].pos_strata
                               : m.surfaces[static_cast<size_t>(s)].neg_strata;
  int found = -1;
  for (int si : cands) {
    bool ok = true;
    for (size_t gi = 0; gi < m.field->strata()[static_cast<size_t>(si)].guards.size(); ++gi) {
      // skip the guard that carries this surface
      const auto& g = m.field->strata()[static_cast<size_t>(si)].guards[gi];
      Polynomial canon = g;
      if (!canon.terms().empty() && canon.terms().front().coef < 0) canon = canon.negated();
      if (canon.same_terms(m.surfaces[static_cast<size_t>(s)].g)) continue;
      if (g(x) <= tol) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (found >= 0) throw std::runtime_error("codimension >= 2 point");
      found = si;
    }
  }
  if (found < 0) throw std::runtime_error("surface has no stratum on one side");
  return found;
}

using VecField = std::function<Vec(const Vec&)>;

Vec rk4_step(const VecField& F, const Vec& x, double h) {
  Vec k1 = F(x);
  Vec k2 = F(x + 0.5 * h * k1);
  Vec k3 = F(x + 0.5 * h * k2);
  Vec k4 = F(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::string Mode::str() const {
  switch (kind) {
    case Kind::regular:
      return "regular:" + std::to_string(id);
    case Kind::sliding:
      return "sliding:" + std::to_string(id);
    case Kind::event:
      switch (event) {
        case Event::crossing:
          return "event:crossing";
        case Event::entry:
          return "event:entry";
        case Event::exit:
          return "event:exit";
        default:
          return "event:none";
      }
  }
  return "?";
}

Classification classify_point(const PiecewiseField& f, const Vec& x, double tol) {
  FlowModel m = build_model(f);
  std::vector<int> near;
  for (size_t s = 0; s < m.surfaces.size(); ++s)
    if (std::abs(m.surfaces[s].g(x)) <= tol) near.push_back(static_cast<int>(s));
  if (near.size() >= 2) throw std::runtime_error("codimension >= 2 point");
  if (near.size() == 1) return {Classification::Where::surface, near[0]};
  return {Classification::Where::regular, stratum_at_strict(m, x)};
}

SlidingValue sliding_field(const Vec& f_plus, const Vec& f_minus, const Vec& grad_g) {
  const double denom = grad_g.dot(f_minus - f_plus);
  if (std::abs(denom) < 1e-14) throw std::runtime_error("grazing contact");
  const double lambda = grad_g.dot(f_minus) / denom;
  Vec v = lambda * f_plus + (1.0 - lambda) * f_minus;
  return {std::move(v), lambda};
}

Trajectory integrate(const PiecewiseField& f, const Vec& x0, double T, double h_max,
                     double tol_event) {
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!x0.allFinite()) throw std::invalid_argument("non-finite start");
  FlowModel model = build_model(f);
  const double h_def = h_max > 0.0 ? h_max : 1e-3 * T;

  Trajectory tr;
  auto push = [&tr](double t, const Vec& x, Mode m) {
    tr.times.push_back(t);
    tr.states.push_back(x);
    tr.modes.push_back(std::move(m));
  };
  auto tol_at = [tol_event](const Vec& x) { return tol_event * (1.0 + x.norm()); };
  auto corner_guard = [&](const Vec& x) {
    int near = 0;
    for (const auto& s : model.surfaces)
      if (std::abs(s.g(x)) <= tol_at(x)) ++near;
    if (near >= 2) throw IntegrationError("codimension >= 2 point", tr);
  };

  enum class State { regular, sliding };
  State state = State::regular;
  int stratum = -1, surface = -1;
  double t = 0.0;
  Vec x = x0;

  // decide what happens on a surface landing; returns the new state
  auto handle_surface = [&](int s, const Vec& xe, int incoming,
                            bool initial) -> State {
    const double tol = tol_at(xe);
    const int pos = side_stratum(model, s, true, xe, tol);
    const int neg = side_stratum(model, s, false, xe, tol);
    const Vec fp = model.value(pos, xe);
    const Vec fm = model.value(neg, xe);
    const Vec n = model.grad_at(s, xe);
    const double ap = n.dot(fp), am = n.dot(fm);
    const double eps = 1e-13 * (1.0 + fp.norm() + fm.norm()) * std::max(1.0, n.norm());
    if (ap < -eps && am > eps) {  // attracting
      push(t, xe, initial ? Mode::sliding(s) : Mode::at_event(Mode::Event::entry));
      if (!initial) ++tr.events_seen;
      surface = s;
      return State::sliding;
    }
    if (ap > eps && am < -eps) {  // repelling: keep the stratum of approach
      push(t, xe, Mode::at_event(Mode::Event::exit));
      ++tr.events_seen;
      stratum = incoming >= 0 ? incoming : pos;
      return State::regular;
    }
    if (std::abs(ap) <= eps || std::abs(am) <= eps)
      throw IntegrationError("grazing contact", tr);
    // transversal: continue on the side the flow moves into
    stratum = ap > 0 ? pos : neg;
    push(t, xe, initial ? Mode::regular(stratum) : Mode::at_event(Mode::Event::crossing));
    if (!initial) ++tr.events_seen;
    return State::regular;
  };

  {  // initial classification
    std::vector<int> near;
    for (size_t s = 0; s < model.surfaces.size(); ++s)
      if (std::abs(model.surfaces[s].g(x)) <= tol_at(x)) near.push_back(static_cast<int>(s));
    if (near.size() >= 2) throw IntegrationError("codimension >= 2 point", tr);
    if (near.size() == 1) {
      state = handle_surface(near[0], x, -1, true);
    } else {
      stratum = stratum_at_strict(model, x);
      push(0.0, x, Mode::regular(stratum));
    }
  }

  const double t_end = T * (1.0 - 1e-14);
  while (t < t_end) {
    const double h = std::min(h_def, T - t);
    if (state == State::regular) {
      const auto& value_map = f.strata()[static_cast<size_t>(stratum)].value;
      VecField F = [&value_map](const Vec& y) { return eval_map(value_map, y); };
      Vec x_try = rk4_step(F, x, h);
      ++tr.steps_taken;

      double best_tau = std::numeric_limits<double>::infinity();
      int hit = -1;
      Vec x_hit;
      for (size_t s = 0; s < model.surfaces.size(); ++s) {
        const auto& g = model.surfaces[s].g;
        const int o = model.orientation[static_cast<size_t>(stratum)][s];
        const double g_end = g(x_try), g_start = g(x);
        const double sgn = o != 0 ? o : (g_start >= 0 ? 1.0 : -1.0);
        const bool trig = o != 0 ? (sgn * g_end <= tol_at(x_try))
                                 : (g_start * g_end < 0.0 ||
                                    std::abs(g_end) <= tol_at(x_try));
        if (!trig) continue;
        double lo = 0.0, hi = h;
        Vec xm = x_try;
        double tau = h;
        for (int iter = 0; iter < 200; ++iter) {
          tau = 0.5 * (lo + hi);
          xm = rk4_step(F, x, tau);
          const double psi = sgn * g(xm);
          if (std::abs(psi) <= tol_at(xm)) break;
          (psi > 0 ? lo : hi) = tau;
        }
        if (tau < best_tau) {
          best_tau = tau;
          hit = static_cast<int>(s);
          x_hit = xm;
        }
      }

      if (hit < 0) {
        t += h;
        x = x_try;
        push(t, x, Mode::regular(stratum));
        continue;
      }
      if (best_tau <= 1e-15 * std::max(1.0, T))
        throw IntegrationError("stiff event", tr);
      t += best_tau;
      x = x_hit;
      corner_guard(x);
      try {
        state = handle_surface(hit, x, stratum, false);
      } catch (const std::runtime_error& e) {
        if (std::string(e.what()) == "codimension >= 2 point")
          throw IntegrationError(e.what(), tr);
        throw;
      }
      continue;
    }

    // sliding along `surface`
    const int s = surface;
    const double tol0 = tol_at(x);
    const int pos = side_stratum(model, s, true, x, tol0);
    const int neg = side_stratum(model, s, false, x, tol0);
    const auto& pos_map = f.strata()[static_cast<size_t>(pos)].value;
    const auto& neg_map = f.strata()[static_cast<size_t>(neg)].value;
    VecField slide = [&](const Vec& y) {
      return sliding_field(eval_map(pos_map, y), eval_map(neg_map, y),
                           model.grad_at(s, y))
          .velocity;
    };
    auto project = [&](Vec y) {
      for (int it = 0; it < 10; ++it) {
        const double g = model.surfaces[static_cast<size_t>(s)].g(y);
        if (std::abs(g) <= tol_at(y)) break;
        const Vec n = model.grad_at(s, y);
        const double nn = n.squaredNorm();
        if (nn < 1e-28) throw IntegrationError("grazing contact", tr);
        y -= (g / nn) * n;
      }
      return y;
    };
    auto attracting_margin = [&](const Vec& y) {
      const Vec fp = eval_map(pos_map, y), fm = eval_map(neg_map, y);
      const Vec n = model.grad_at(s, y);
      return std::min(-n.dot(fp), n.dot(fm));
    };

    Vec x_try = project(rk4_step(slide, x, h));
    ++tr.steps_taken;

    // another guard reached while sliding means a corner
    for (size_t s2 = 0; s2 < model.surfaces.size(); ++s2) {
      if (static_cast<int>(s2) == s) continue;
      const auto& g2 = model.surfaces[s2].g;
      if (g2(x) * g2(x_try) < 0.0 || std::abs(g2(x_try)) <= tol_at(x_try)) {
        double lo = 0.0, hi = h;
        Vec xm = x_try;
        const double sgn = g2(x) >= 0 ? 1.0 : -1.0;
        for (int iter = 0; iter < 200; ++iter) {
          const double tau = 0.5 * (lo + hi);
          xm = project(rk4_step(slide, x, tau));
          const double psi = sgn * g2(xm);
          if (std::abs(psi) <= tol_at(xm)) break;
          (psi > 0 ? lo : hi) = tau;
        }
        t += 0.5 * (lo + hi);
        x = xm;
        push(t, x, Mode::sliding(s));
        throw IntegrationError("codimension >= 2 point", tr);
      }
    }

    if (attracting_margin(x_try) > 0.0) {
      t += h;
      x = x_try;
      push(t, x, Mode::sliding(s));
      continue;
    }

    // the convex coefficient left [0,1]: locate the exit time
    double lo = 0.0, hi = h;
    Vec xe = x_try;
    for (int iter = 0; iter < 200; ++iter) {
      const double tau = 0.5 * (lo + hi);
      xe = project(rk4_step(slide, x, tau));
      const double chi = attracting_margin(xe);
      if (std::abs(chi) <= 1e-13 * (1.0 + xe.norm())) break;
      (chi > 0 ? lo : hi) = tau;
    }
    t += 0.5 * (lo + hi);
    x = xe;
    push(t, x, Mode::at_event(Mode::Event::exit));
    ++tr.events_seen;
    const Vec fp = eval_map(pos_map, xe);
    const Vec n = model.grad_at(s, xe);
    stratum = n.dot(fp) >= 0 ? pos : neg;
    state = State::regular;
  }
  return tr;
}

double residual_check(const Trajectory& tr, const PiecewiseField& f, HullEngine engine,
                      const McSchedule& mc_sched, std::uint64_t seed) {
  if (tr.size() < 3) throw std::invalid_argument("trajectory too short");
  double worst = 0.0;
  for (size_t i = 1; i + 1 < tr.size(); ++i) {
    const double dt = tr.times[i + 1] - tr.times[i - 1];
    if (!(dt > 0.0)) throw std::invalid_argument("times not increasing");
    const Vec v = (tr.states[i + 1] - tr.states[i - 1]) / dt;
    ConvexBody hull = engine == HullEngine::exact
                          ? filippov_exact(f, tr.states[i])
                          : filippov_mc(as_point_field(f), tr.states[i], mc_sched, seed)
                                .body;
    worst = std::max(worst, dist_point(hull, v));
  }
  return worst;
}

}  // namespace filreg
