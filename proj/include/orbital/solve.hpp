#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbital/geometry.hpp"

namespace orbital {

enum class SolveStatus { Optimal, Infeasible, Unsupported };

inline std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unsupported: return "unsupported";
    }
    return "unknown";
}

struct SolveReport {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<Labeling> labeling;
    std::string message;              // why infeasible / unsupported
    std::vector<std::string> notes;   // non-fatal diagnostics

    static SolveReport optimal(Labeling l) {
        SolveReport r;
        r.status = SolveStatus::Optimal;
        r.labeling = std::move(l);
        return r;
    }
    static SolveReport infeasible(std::string why) {
        SolveReport r;
        r.status = SolveStatus::Infeasible;
        r.message = std::move(why);
        return r;
    }
    static SolveReport unsupported(std::string why) {
        SolveReport r;
        r.status = SolveStatus::Unsupported;
        r.message = std::move(why);
        return r;
    }
};

}  // namespace orbital
