#pragma once

// Deterministic SVG rendering of instances and labelings.  The drawing uses
// mathematical orientation: angles grow counterclockwise on screen, with
// angle 0 pointing right.

#include <string>

#include "orbital/geometry.hpp"
#include "orbital/instance.hpp"

namespace orbital {

struct RenderStyle {
    double size_px = 640.0;    // width == height of the square canvas
    double margin_px = 40.0;   // blank border around the outermost arcs
    double boundary_width = 1.5;
    double leader_width = 1.2;
    double label_width = 6.0;
    double feature_radius_px = 3.5;
    bool draw_candidates = true;   // tick marks for locked port candidates
    bool draw_witness = false;     // splitting ray for free-order labelings
};

// Render the instance alone (features, boundary, candidate ticks) or, when
// `labeling` is non-null, the full solution with leaders and label arcs.
// Throws InvalidArgument if the labeling references unknown feature indices.
std::string render_svg(const Instance& instance, const Labeling* labeling,
                       const RenderStyle& style = {}, const Policy& policy = {});

}  // namespace orbital
