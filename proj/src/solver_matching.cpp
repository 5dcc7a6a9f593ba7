#include "orbital/solver_matching.hpp"

#include <algorithm>
#include <cmath>

#include "orbital/errors.hpp"

namespace orbital {

namespace {

constexpr double kTieRel = 1e-12;

std::vector<double> grid_ports(double anchor, int n) {
    std::vector<double> ports(n);
    for (int t = 0; t < n; ++t) ports[t] = normalize_angle(anchor + t * kTwoPi / n);
    std::sort(ports.begin(), ports.end());
    return ports;
}

Leader rebuild_leader(const Instance& inst, int f, double xi1, double port,
                      const Policy& policy) {
    double off_p = ccw_delta(xi1, inst.features[f].position.angle);
    double off_v = ccw_delta(xi1, port);
    bool on_cut = off_p <= policy.eps_theta || kTwoPi - off_p <= policy.eps_theta;
    LeaderDirection dir;
    if (on_cut)
        dir = (off_v <= kPi) ? LeaderDirection::CCW : LeaderDirection::CW;
    else
        dir = (off_v >= off_p) ? LeaderDirection::CCW : LeaderDirection::CW;
    return make_leader(f, inst.features[f].position, port, dir, policy);
}

}  // namespace

AnchorSet innermost_port_candidates(const Instance& instance, const Policy& policy) {
    const int n = instance.size();
    if (n == 0) throw InvalidArgument("anchor set needs at least one feature");
    std::vector<double> raw;
    raw.reserve(2 * n);
    for (const Feature& f : instance.features) {
        if (f.position.radius <= policy.eps_theta) continue;  // no direction at center
        raw.push_back(normalize_angle(f.position.angle));
        raw.push_back(normalize_angle(f.position.angle + kPi));
    }
    if (raw.empty()) raw.push_back(0.0);
    std::sort(raw.begin(), raw.end());
    AnchorSet out;
    for (double a : raw)
        if (out.anchors.empty() || a - out.anchors.back() > policy.eps_theta)
            out.anchors.push_back(a);
    while (out.anchors.size() > 1 &&
           out.anchors.front() + kTwoPi - out.anchors.back() <= policy.eps_theta)
        out.anchors.pop_back();
    out.ports_per_anchor = n;
    return out;
}

CutReduction reduce_to_assignment(const Instance& instance, double xi1,
                                  const std::vector<double>& port_set,
                                  const Policy& policy) {
    const int n = instance.size();
    const double R = instance.radius();
    xi1 = normalize_angle(xi1);
    bool xi_in_set = false;
    for (double p : port_set)
        if (circ_dist(p, xi1) <= policy.eps_theta) xi_in_set = true;
    if (!xi_in_set)
        throw InvalidArgument("the innermost port must be one of the supplied ports");

    CutReduction red;
    const int inner = instance.innermost();
    for (int f = 0; f < n; ++f) {
        if (f == inner) continue;
        red.row_feature.push_back(f);
        red.row_offset.push_back(ccw_delta(xi1, instance.features[f].position.angle));
    }
    struct Col {
        double off;
        double port;
    };
    std::vector<Col> cols;
    for (double p : port_set) {
        if (circ_dist(p, xi1) <= policy.eps_theta) continue;
        cols.push_back({ccw_delta(xi1, p), normalize_angle(p)});
    }
    std::sort(cols.begin(), cols.end(), [](const Col& a, const Col& b) {
        return a.off < b.off;
    });
    for (const Col& c : cols) {
        red.col_offset.push_back(c.off);
        red.col_port.push_back(c.port);
    }

    const int rows = static_cast<int>(red.row_feature.size());
    const int ncols = static_cast<int>(cols.size());
    red.matrix = CostMatrix(rows, ncols);
    for (int i = 0; i < rows; ++i) {
        const Feature& feat = instance.features[red.row_feature[i]];
        double r = feat.position.radius;
        double off_p = red.row_offset[i];
        bool on_cut = off_p <= policy.eps_theta || kTwoPi - off_p <= policy.eps_theta;
        for (int j = 0; j < ncols; ++j) {
            double span = on_cut ? std::min(red.col_offset[j], kTwoPi - red.col_offset[j])
                                 : std::abs(off_p - red.col_offset[j]);
            red.matrix.at(i, j) = R - r + r * span;
        }
    }
    return red;
}

SolveReport solve_free_order_uniform(const Instance& instance, const Policy& policy) {
    const Variant& v = instance.variant;
    if (v.ports != PortMode::Free)
        return SolveReport::unsupported("the matching solver needs freely placeable ports");
    if (v.order != OrderMode::Free)
        return SolveReport::unsupported("the matching solver needs a free label order");
    if (v.sizes != SizeMode::Uniform)
        return SolveReport::unsupported(
            "free order with non-uniform label lengths has no exact polynomial solver");
    if (v.ratios != RatioMode::UniformLocked && v.ratios != RatioMode::UniformFree)
        return SolveReport::unsupported(
            "the matching solver needs a shared port ratio (locked or free)");
    const int n = instance.size();
    if (n == 0) return SolveReport::infeasible("instance has no features");

    const double len_tol = policy.len_tol(instance.circumference);
    if (policy.strict && instance.has_duplicate_radii(len_tol))
        throw DegenerateInput(
            "two features share an orbit; rerun with the lenient policy to solve anyway");

    std::vector<std::string> notes;
    if (v.ratios == RatioMode::UniformFree)
        notes.push_back(
            "free shared ratio pinned to the label start; every shared ratio attains "
            "the same optimum");
    if (!policy.strict && instance.has_duplicate_radii(len_tol))
        notes.push_back(
            "features share an orbit: crossing-freeness is checked leniently and not "
            "guaranteed by construction");

    const int inner = instance.innermost();
    const PolarPoint& inner_feat = instance.features[inner].position;
    const double rho = (v.ratios == RatioMode::UniformLocked) ? v.k : 0.0;
    AnchorSet anchors = innermost_port_candidates(instance, policy);

    struct Best {
        double obj = 0.0;
        double anchor = 0.0;
        double xi1 = 0.0;
        LeaderDirection dir = LeaderDirection::CCW;
        bool valid = false;
    };
    Best best;
    const LeaderDirection dirs[2] = {LeaderDirection::CCW, LeaderDirection::CW};
    for (double anchor : anchors.anchors) {
        std::vector<double> slots = grid_ports(anchor, n);
        for (double xi1 : slots) {
            CutReduction red = reduce_to_assignment(instance, xi1, slots, policy);
            AssignmentResult ar = min_cost_assignment(red.matrix);
            for (LeaderDirection dir : dirs) {
                Leader l1 = make_leader(inner, inner_feat, xi1, dir, policy);
                double g1 =
                    leader_length(inner_feat, l1.orbital_span, instance.circumference);
                double obj = g1 + ar.cost;
                if (!best.valid || obj < best.obj - kTieRel * (1.0 + std::abs(best.obj)))
                    best = {obj, anchor, xi1, dir, true};
            }
        }
    }
    if (!best.valid) return SolveReport::infeasible("no candidate configuration found");

    // Rebuild the winning configuration (deterministic recomputation).
    std::vector<double> slots = grid_ports(best.anchor, n);
    CutReduction red = reduce_to_assignment(instance, best.xi1, slots, policy);
    AssignmentResult ar = min_cost_assignment(red.matrix);

    std::vector<double> port_of(n, 0.0);
    port_of[inner] = best.xi1;
    std::vector<int> col_of_row = ar.column_of_row;
    for (size_t i = 0; i < red.row_feature.size(); ++i)
        port_of[red.row_feature[i]] = red.col_port[col_of_row[i]];

    auto build_leaders = [&](std::vector<Leader>& leaders) {
        leaders.clear();
        leaders.reserve(n);
        for (int f = 0; f < n; ++f) {
            if (f == inner)
                leaders.push_back(make_leader(f, inner_feat, best.xi1, best.dir, policy));
            else
                leaders.push_back(rebuild_leader(instance, f, best.xi1, port_of[f], policy));
        }
    };
    std::vector<Leader> leaders;
    build_leaders(leaders);

    // A tie in the assignment can in principle return a crossing co-optimum;
    // swapping the ports of a crossing pair never lengthens the total, so
    // repair by exchange until clean (bounded).
    const double R = instance.radius();
    int guard = n * n + 8;
    bool dirty = true;
    while (dirty && guard-- > 0) {
        dirty = false;
        for (size_t a = 0; a < red.row_feature.size() && !dirty; ++a)
            for (size_t b = a + 1; b < red.row_feature.size() && !dirty; ++b) {
                int fa = red.row_feature[a], fb = red.row_feature[b];
                if (!leaders_cross(leaders[fa], leaders[fb],
                                   instance.features[fa].position.radius,
                                   instance.features[fb].position.radius, R, policy))
                    continue;
                double before = red.matrix.at(a, col_of_row[a]) +
                                red.matrix.at(b, col_of_row[b]);
                double after = red.matrix.at(a, col_of_row[b]) +
                               red.matrix.at(b, col_of_row[a]);
                if (after > before + len_tol) continue;
                std::swap(col_of_row[a], col_of_row[b]);
                port_of[fa] = red.col_port[col_of_row[a]];
                port_of[fb] = red.col_port[col_of_row[b]];
                build_leaders(leaders);
                dirty = true;
            }
    }

    Labeling lab;
    lab.labels.reserve(n);
    lab.leaders = std::move(leaders);
    const double ext = kTwoPi / n;
    for (int f = 0; f < n; ++f) {
        Label l;
        l.feature = f;
        l.extent = ext;
        l.port = port_of[f];
        l.start = normalize_angle(port_of[f] - rho * ext);
        lab.labels.push_back(l);
    }
    double total = leader_length(inner_feat, lab.leaders[inner].orbital_span,
                                 instance.circumference);
    for (size_t i = 0; i < red.row_feature.size(); ++i)
        total += red.matrix.at(i, col_of_row[i]);
    lab.objective = total;

    SolveReport rep = SolveReport::optimal(std::move(lab));
    rep.notes = std::move(notes);
    return rep;
}

}  // namespace orbital
