#pragma once

#include <optional>
#include <string>
#include <vector>

#include "filreg/field.hpp"
#include "filreg/partition.hpp"

namespace filreg::gallery {

// Built-in examples. Names are frozen; the CLI refers to them directly.

PiecewiseField sign1d();
PiecewiseField sign_flow();
PiecewiseField relay2d();
PiecewiseField rational_scale();
PiecewiseField rotation2d();
PiecewiseField abs_grad2d();

PointField radial2d();
/// Indicator of class 2 of the default splitting partition.
PointField splitting_indicator();

/// Shared default partition (8 classes, 32 rational intervals, depth 12).
const SplittingPartition& default_partition();

CuscoOracle phi1();
CuscoOracle phi2();
CuscoOracle phi3();

/// Smallest denominator m <= max_den with x = p/m (p nonzero integer), or 0.
int denominator_of(double x, int max_den, double tol = 1e-12);

const std::vector<std::string>& names();
bool has(const std::string& name);

enum class Kind { piecewise, point, oracle };
Kind kind_of(const std::string& name);  // throws on unknown names

/// Any field-kind entry as a point-evaluation field.
PointField point_field(const std::string& name);
/// Piecewise entries only.
std::optional<PiecewiseField> piecewise(const std::string& name);
/// Oracle entries; also accepts "filippov:<field>" for the hull of a
/// piecewise gallery field.
CuscoOracle oracle(const std::string& name);

/// "unknown gallery name 'x'; known names: ..." message helper.
std::string unknown_name_message(const std::string& name);

}  // namespace filreg::gallery
