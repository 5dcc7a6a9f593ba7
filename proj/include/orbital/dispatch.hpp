#pragma once

// Variant-aware entry point: routes an instance to the solver that handles
// its port/order/size/ratio combination, or reports the combination as
// unsupported when no exact polynomial algorithm exists.

#include "orbital/geometry.hpp"
#include "orbital/instance.hpp"
#include "orbital/solve.hpp"

namespace orbital {

// Solve `instance` with whichever algorithm matches its declared variant.
//
// Routing table (ports / order):
//   Free   / Locked -> rotation sweep over the one-parameter family
//   Locked / Locked -> rigid derivation per candidate port
//   Locked / Free   -> assignment of features to candidate ports
//   Free   / Free   -> anchored matching (uniform sizes, uniform ratio);
//                      otherwise exhaustive search for up to 8 features,
//                      and Unsupported beyond that.
SolveReport solve(const Instance& instance, const Policy& policy = {});

}  // namespace orbital
