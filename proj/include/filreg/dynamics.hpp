#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "filreg/field.hpp"
#include "filreg/regularize.hpp"
#include "filreg/types.hpp"

namespace filreg {

/// Per-row trajectory tag: the motion that starts at the row's time.
struct Mode {
  enum class Kind { regular, sliding, event };
  enum class Event { none, crossing, entry, exit };

  Kind kind = Kind::regular;
  int id = -1;  // stratum index for regular, surface index for sliding
  Event event = Event::none;

  static Mode regular(int stratum) { return {Kind::regular, stratum, Event::none}; }
  static Mode sliding(int surface) { return {Kind::sliding, surface, Event::none}; }
  static Mode at_event(Event e) { return {Kind::event, -1, e}; }

  bool operator==(const Mode&) const = default;
  std::string str() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<Mode> modes;
  int steps_taken = 0;
  int events_seen = 0;

  size_t size() const { return times.size(); }
};

/// Integration failures carry the trajectory computed so far.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, Trajectory prefix)
      : std::runtime_error(what), prefix_(std::move(prefix)) {}
  const Trajectory& prefix() const { return prefix_; }

 private:
  Trajectory prefix_;
};

/// Location of a point relative to the discontinuity surfaces of the field.
struct Classification {
  enum class Where { regular, surface };
  Where where = Where::regular;
  int id = -1;  // stratum index or surface index
};

/// Throws "codimension >= 2 point" when two guards vanish at once.
Classification classify_point(const PiecewiseField& f, const Vec& x, double tol = 1e-8);

/// Filippov convex combination on an attracting codimension-1 surface:
/// lambda f_plus + (1-lambda) f_minus, tangent to the surface. Expects
/// <grad_g, f_plus> < 0 < <grad_g, f_minus>; throws "grazing contact" when
/// the denominator degenerates.
struct SlidingValue {
  Vec velocity;
  double lambda;
};
SlidingValue sliding_field(const Vec& f_plus, const Vec& f_minus, const Vec& grad_g);

/// Event-driven integration of dx/dt in the Filippov hull of f: classical
/// 4th-order steps inside strata, bisection onto guard zeros, sliding along
/// attracting surfaces, stratum switch at transversal crossings. Repelling
/// surfaces follow the stratum of approach and tag the ambiguity.
/// h_max <= 0 picks the default 1e-3 * T.
Trajectory integrate(const PiecewiseField& f, const Vec& x0, double T, double h_max = 0.0,
                     double tol_event = 1e-10);

enum class HullEngine { exact, mc };

/// Max over interior grid points of the distance from the central-difference
/// velocity to the Filippov hull at that point.
double residual_check(const Trajectory& tr, const PiecewiseField& f,
                      HullEngine engine = HullEngine::exact,
                      const McSchedule& mc_sched = {}, std::uint64_t seed = 42);

}  // namespace filreg
