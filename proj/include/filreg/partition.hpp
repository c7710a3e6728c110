#pragma once

#include <cstdint>
#include <vector>

#include "filreg/field.hpp"
#include "filreg/types.hpp"

namespace filreg {

/// Finite-depth Smith-Volterra construction: step n removes from each of the
/// 2^(n-1) surviving intervals a centered open interval of length
/// (hi-lo)*r*4^(-n). The depth-D survivor keeps measure >= (hi-lo)*(1-r/2).
class FatCantorSet {
 public:
  enum class Membership { in, out, frontier };

  struct Interval {
    double lo, hi;
    double length() const { return hi - lo; }
  };

  FatCantorSet(double lo, double hi, double r, int depth);

  double base_lo() const { return lo_; }
  double base_hi() const { return hi_; }
  double removal_ratio() const { return r_; }
  int depth() const { return depth_; }

  /// Removed open intervals, sorted and pairwise disjoint.
  const std::vector<Interval>& removed() const { return removed_; }

  /// The 2^depth closed survivor intervals, sorted.
  std::vector<Interval> survivors() const;

  /// Tristate membership; points within the floating-point slack of an
  /// interval endpoint come back as frontier.
  Membership contains(double x) const;

  /// Exact survivor measure from the schedule:
  /// (hi-lo)*(1 - (r/2)*(1 - 2^-depth)).
  double measure() const;
  /// Certified lower bound (slack subtracted).
  double measure_lower() const;
  /// Certified bounds of the survivor measure inside [a, b].
  double measure_in_lower(double a, double b) const;
  double measure_in_upper(double a, double b) const;

  double slack() const { return slack_; }

 private:
  double lo_, hi_, r_;
  int depth_;
  double slack_;
  std::vector<Interval> removed_;
};

FatCantorSet build_fat_cantor(double lo, double hi, double r, int depth);

/// Cantor pairing with pair_index(1,1) = 1; enumerates the (k, n) grid along
/// anti-diagonals.
std::uint64_t pair_index(std::uint64_t k, std::uint64_t n);
void unpair_index(std::uint64_t m, std::uint64_t& k, std::uint64_t& n);

/// k-th open interval with rational endpoints: centers walk 0, 1, -1, 1/2,
/// -1/2, 2, ... (Calkin-Wilf order), radii walk 1, 1/2, 1/3, ...; the pair is
/// picked by the same diagonal enumeration. 1-based.
void rational_interval(std::uint64_t k, double& lo, double& hi);

/// Partition of R^d in which every class keeps certified positive measure in
/// the test boxes: fat Cantor sets are packed into the rational intervals in
/// pairing order, class n >= 2 is the union of its sets, class 1 the
/// complement. In dimension d the class of x is the class of x[0].
class SplittingPartition {
 public:
  struct PlacedSet {
    std::uint64_t m;  // placement index
    std::uint64_t k;  // rational interval index
    int cls;
    FatCantorSet set;
  };

  /// One survivor interval of one placed set. The cells of all sets are
  /// pairwise disjoint; together they index the whole partition.
  struct Cell {
    double lo, hi;
    int cls;
  };

  int n_classes() const { return n_classes_; }
  std::uint64_t k_max() const { return k_max_; }
  int depth() const { return depth_; }
  double removal_ratio() const { return r_; }
  int dim() const { return dim_; }
  const std::vector<PlacedSet>& placed() const { return placed_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<Box>& test_boxes() const { return boxes_; }

  /// Total class assignment; frontier points go to class 1.
  int assign(const Vec& x) const;
  int assign1d(double x1) const;

  /// Certified lower bound of the measure of class cls inside the box.
  double measure_lower(int cls, const Box& box) const;
  /// Same on a 1-D window (the first axis of the lift).
  double measure_lower_1d(int cls, double a, double b) const;
  double measure_upper_1d(int cls, double a, double b) const;

  /// Stored certificate table, row = class (1-based), column = test box.
  const Mat& certificates() const { return certificates_; }

  /// Points of R near which both class cls and class 1 keep local density at
  /// least min_density at every radius of the schedule. Derived from the gap
  /// endpoints of the class's placed sets.
  std::vector<double> splitting_probes(int cls, int count,
                                       const std::vector<double>& radii,
                                       double min_density = 0.02) const;

  friend SplittingPartition build_splitting(int n_classes, std::uint64_t k_max, int depth,
                                            double r, int dim, std::vector<Box> test_boxes);

 private:
  int n_classes_ = 0;
  std::uint64_t k_max_ = 0;
  int depth_ = 0;
  double r_ = 1.0;
  int dim_ = 1;
  std::vector<PlacedSet> placed_;
  std::vector<Cell> cells_;  // sorted by lo, pairwise disjoint
  std::vector<Box> boxes_;
  Mat certificates_;

  void certify();
};

std::vector<Box> default_test_boxes(int dim);

SplittingPartition build_splitting(int n_classes, std::uint64_t k_max, int depth,
                                   double r = 1.0, int dim = 1,
                                   std::vector<Box> test_boxes = {});

/// f(x) = f_n(x) with n the class of x: a single-valued selection of the
/// oracle whose Filippov hull recovers the oracle value.
PointField representing_function(const CuscoOracle& phi, const SelectionFamily& sel,
                                 const SplittingPartition& part);

}  // namespace filreg
