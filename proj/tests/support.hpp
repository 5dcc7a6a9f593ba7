#pragma once

// Shared helpers for the test suite.  The crossing check and the assignment
// search here are deliberately independent re-implementations used to
// cross-examine the library's analytic predicates.

#include <string>
#include <vector>

#include "orbital/assignment.hpp"
#include "orbital/geometry.hpp"
#include "orbital/instance.hpp"

namespace testsupport {

using orbital::AssignmentResult;
using orbital::CostMatrix;
using orbital::Instance;
using orbital::Labeling;
using orbital::Leader;
using orbital::PolarPoint;
using orbital::Variant;

/// Uniform-label instance from polar feature positions (labels C/n each).
Instance make_instance(double circumference, const std::vector<PolarPoint>& pts,
                       const Variant& variant = {});

/// Instance with explicit label lengths.
Instance make_instance_sized(double circumference, const std::vector<PolarPoint>& pts,
                             const std::vector<double>& lambdas,
                             const Variant& variant = {});

/// Independent crossing check: both leaders are flattened to Cartesian
/// polylines (arc sampled densely + radial segment) and tested pairwise for
/// proper segment intersections and collinear overlap.  Endpoint touching
/// within `touch_eps` (absolute, world units) does not count.
bool sampled_leaders_cross(const Leader& a, const Leader& b, double radius_a,
                           double radius_b, double disk_radius,
                           double touch_eps = 1e-7);

/// Smallest circular distance among the angle pairs whose coincidence flips
/// the crossing predicate (ports, arc endpoints, spans near 0 or a full
/// turn).  Random-agreement tests skip configurations where this is tiny,
/// since the sampled and analytic answers legitimately differ there.
double degeneracy_margin(const Leader& a, const Leader& b);

/// Minimal XML well-formedness scanner: tags balance and nest, attributes
/// are quoted.  Fills `error` with a diagnostic when it returns false.
bool xml_well_formed(const std::string& text, std::string* error = nullptr);

long long count_occurrences(const std::string& text, const std::string& needle);

/// Exhaustive minimum-cost assignment (rows <= cols <= 9); among ties
/// returns the lexicographically smallest row-to-column map.
AssignmentResult brute_force_assignment(const CostMatrix& m);

}  // namespace testsupport
