#include "orbital/solver_candidates.hpp"

#include <algorithm>
#include <cmath>

#include "orbital/assignment.hpp"
#include "orbital/errors.hpp"
#include "orbital/solver_rotation.hpp"

namespace orbital {

namespace {

constexpr double kTieRel = 1e-12;
constexpr size_t kMaxRecordedRejections = 24;

bool labeling_has_crossing(const Labeling& lab, const Instance& inst,
                           const Policy& policy, int* a_out, int* b_out) {
    const int n = inst.size();
    const double R = inst.radius();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (leaders_cross(lab.leaders[a], lab.leaders[b],
                              inst.features[a].position.radius,
                              inst.features[b].position.radius, R, policy)) {
                if (a_out) *a_out = a;
                if (b_out) *b_out = b;
                return true;
            }
    return false;
}

std::string angle_str(double a) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", a);
    return buf;
}

}  // namespace

CandidateIndex CandidateIndex::build(const std::vector<double>& candidates, double tol) {
    CandidateIndex idx;
    std::vector<double> sorted;
    sorted.reserve(candidates.size());
    for (double c : candidates) sorted.push_back(normalize_angle(c));
    std::sort(sorted.begin(), sorted.end());
    for (double c : sorted)
        if (idx.angles.empty() || c - idx.angles.back() > tol) idx.angles.push_back(c);
    while (idx.angles.size() > 1 &&
           idx.angles.front() + kTwoPi - idx.angles.back() <= tol)
        idx.angles.pop_back();

    const int m = static_cast<int>(idx.angles.size());
    if (m == 1) {
        idx.full_ring = true;
        idx.spacing = kTwoPi;
    } else if (m >= 2) {
        double sp = kTwoPi / m;
        bool ok = true;
        for (int i = 0; i < m; ++i) {
            double gap = ccw_delta(idx.angles[i], idx.angles[(i + 1) % m]);
            if (i == m - 1 && m == 1) gap = kTwoPi;
            if (std::abs(gap - sp) > tol) ok = false;
        }
        idx.full_ring = ok;
        idx.spacing = sp;
    }
    return idx;
}

int CandidateIndex::find(double angle, double tol) const {
    if (angles.empty()) return -1;
    double a = normalize_angle(angle);
    auto it = std::lower_bound(angles.begin(), angles.end(), a);
    int i = static_cast<int>(it - angles.begin());
    const int m = static_cast<int>(angles.size());
    for (int d : {i % m, (i + m - 1) % m}) {
        if (circ_dist(angles[d], a) <= tol) return d;
    }
    return -1;
}

SolveReport solve_locked_order_locked_ports(const Instance& instance,
                                            const Policy& policy) {
    const Variant& v = instance.variant;
    if (v.ports != PortMode::Locked)
        return SolveReport::unsupported("this solver needs locked port candidates");
    if (v.order != OrderMode::Locked)
        return SolveReport::unsupported("this solver needs a locked label order");
    if (v.ratios == RatioMode::NonUniformFree)
        return SolveReport::unsupported("per-feature free port ratios are not supported");
    if (v.ratios == RatioMode::UniformFree && v.sizes != SizeMode::Uniform)
        return SolveReport::unsupported(
            "a shared free port ratio reduces to a locked one only for uniform label lengths");
    const int n = instance.size();
    if (n == 0) return SolveReport::infeasible("instance has no features");

    const double len_tol = policy.len_tol(instance.circumference);
    if (policy.strict && instance.has_duplicate_radii(len_tol))
        throw DegenerateInput(
            "two features share an orbit; rerun with the lenient policy to solve anyway");

    CandidateIndex cand = CandidateIndex::build(instance.candidates, policy.eps_theta);
    if (static_cast<int>(cand.angles.size()) < n)
        return SolveReport::infeasible("fewer port candidates than features");

    std::vector<std::string> notes;
    if (v.ratios == RatioMode::UniformFree)
        notes.push_back(
            "free shared ratio pinned to the label start; every shared ratio attains "
            "the same optimum");
    if (!policy.strict && instance.has_duplicate_radii(len_tol))
        notes.push_back(
            "features share an orbit: crossing-freeness is checked leniently and not "
            "guaranteed by construction");

    RotationContext ctx = make_rotation_context(instance);

    // Full equally spaced ring: derived ports land on the ring for every first
    // choice iff every port offset is a multiple of the spacing, so membership
    // is decided once by index arithmetic instead of per-candidate lookups.
    bool grid_decided = false, grid_member = false;
    if (cand.full_ring) {
        grid_decided = true;
        grid_member = true;
        for (int f = 0; f < n; ++f) {
            double k = std::round(ctx.port_offset[f] / cand.spacing);
            double residue = std::abs(ctx.port_offset[f] - k * cand.spacing);
            if (std::min(residue, kTwoPi - residue) > policy.eps_theta) grid_member = false;
        }
    }

    struct Best {
        double obj = 0.0;
        double c = 0.0;
        LeaderDirection dir = LeaderDirection::CCW;
        bool valid = false;
    };
    Best best;
    std::vector<std::string> rejects;
    auto record = [&](const std::string& why) {
        if (rejects.size() < kMaxRecordedRejections) rejects.push_back(why);
    };

    const LeaderDirection dirs[2] = {LeaderDirection::CCW, LeaderDirection::CW};
    if (grid_decided && !grid_member) {
        record("derived ports sit off the candidate ring for every first-port choice");
    } else {
        for (double c : cand.angles) {
            bool member = true;
            if (!grid_decided) {
                for (int f = 0; f < n && member; ++f) {
                    double port = normalize_angle(c + ctx.port_offset[f]);
                    if (cand.find(port, policy.eps_theta) < 0) {
                        member = false;
                        record("first port at " + angle_str(c) + ": derived port " +
                               angle_str(port) + " of '" + instance.features[f].id +
                               "' matches no candidate");
                    }
                }
            }
            if (!member) continue;
            for (LeaderDirection dir : dirs) {
                Labeling lab = derive_configuration(instance, c, dir, policy);
                int a = -1, b = -1;
                if (labeling_has_crossing(lab, instance, policy, &a, &b)) {
                    record("first port at " + angle_str(c) + " (" + to_string(dir) +
                           "): leaders of '" + instance.features[a].id + "' and '" +
                           instance.features[b].id + "' cross");
                    continue;
                }
                if (!best.valid ||
                    lab.objective < best.obj - kTieRel * (1.0 + std::abs(best.obj)))
                    best = {lab.objective, c, dir, true};
            }
        }
    }

    if (!best.valid) {
        SolveReport rep = SolveReport::infeasible(
            "no candidate placement of the locked order is crossing-free with all "
            "ports on candidates");
        rep.notes = std::move(notes);
        for (auto& r : rejects) rep.notes.push_back(std::move(r));
        return rep;
    }
    SolveReport rep = SolveReport::optimal(
        derive_configuration(instance, best.c, best.dir, policy));
    rep.notes = std::move(notes);
    return rep;
}

SolveReport solve_free_order_locked_ports(const Instance& instance,
                                          const Policy& policy) {
    const Variant& v = instance.variant;
    if (v.ports != PortMode::Locked)
        return SolveReport::unsupported("this solver needs locked port candidates");
    if (v.order != OrderMode::Free)
        return SolveReport::unsupported("this solver needs a free label order");
    if (v.sizes != SizeMode::Uniform)
        return SolveReport::unsupported(
            "locked ports with a free order are only solved for uniform label lengths");
    if (v.ratios != RatioMode::UniformLocked && v.ratios != RatioMode::UniformFree)
        return SolveReport::unsupported(
            "locked ports with a free order need a shared port ratio");
    const int n = instance.size();
    if (n == 0) return SolveReport::infeasible("instance has no features");

    const double len_tol = policy.len_tol(instance.circumference);
    if (policy.strict && instance.has_duplicate_radii(len_tol))
        throw DegenerateInput(
            "two features share an orbit; rerun with the lenient policy to solve anyway");

    CandidateIndex cand = CandidateIndex::build(instance.candidates, policy.eps_theta);
    const int m = static_cast<int>(cand.angles.size());
    if (n > m) return SolveReport::infeasible("more features than port candidates");

    std::vector<std::string> notes;
    if (v.ratios == RatioMode::UniformFree)
        notes.push_back(
            "free shared ratio pinned to the label start; every shared ratio attains "
            "the same optimum");
    if (!policy.strict && instance.has_duplicate_radii(len_tol))
        notes.push_back(
            "features share an orbit: crossing-freeness is checked leniently and not "
            "guaranteed by construction");

    const double R = instance.radius();
    CostMatrix w(n, m);
    for (int p = 0; p < n; ++p) {
        double r = instance.features[p].position.radius;
        double alpha = instance.features[p].position.angle;
        for (int j = 0; j < m; ++j)
            w.at(p, j) = R - r + r * circ_dist(alpha, cand.angles[j]);
    }
    AssignmentResult ar = min_cost_assignment(w);
    std::vector<int> col_of_row = ar.column_of_row;

    auto leader_for = [&](int p) {
        double port = cand.angles[col_of_row[p]];
        double ccw = ccw_delta(instance.features[p].position.angle, port);
        LeaderDirection dir =
            (ccw <= kPi) ? LeaderDirection::CCW : LeaderDirection::CW;
        return make_leader(p, instance.features[p].position, port, dir, policy);
    };
    std::vector<Leader> leaders;
    leaders.reserve(n);
    for (int p = 0; p < n; ++p) leaders.push_back(leader_for(p));

    // Assignment ties can return a crossing co-optimum; swapping the two
    // candidates of a crossing pair never lengthens the total (the inner
    // port lies on the outer leader's arc), so repair by exchange.
    int guard = n * n + 8;
    bool dirty = true;
    while (dirty && guard-- > 0) {
        dirty = false;
        for (int a = 0; a < n && !dirty; ++a)
            for (int b = a + 1; b < n && !dirty; ++b) {
                if (!leaders_cross(leaders[a], leaders[b],
                                   instance.features[a].position.radius,
                                   instance.features[b].position.radius, R, policy))
                    continue;
                double before = w.at(a, col_of_row[a]) + w.at(b, col_of_row[b]);
                double after = w.at(a, col_of_row[b]) + w.at(b, col_of_row[a]);
                if (after > before + len_tol) continue;
                std::swap(col_of_row[a], col_of_row[b]);
                leaders[a] = leader_for(a);
                leaders[b] = leader_for(b);
                dirty = true;
            }
    }

    const double rho = (v.ratios == RatioMode::UniformLocked) ? v.k : 0.0;
    const double ext = kTwoPi / n;
    Labeling lab;
    lab.labels.reserve(n);
    double total = 0.0;
    for (int p = 0; p < n; ++p) {
        Label l;
        l.feature = p;
        l.extent = ext;
        l.port = cand.angles[col_of_row[p]];
        l.start = normalize_angle(l.port - rho * ext);
        lab.labels.push_back(l);
        total += w.at(p, col_of_row[p]);
    }
    lab.leaders = std::move(leaders);
    lab.objective = total;

    // With more candidates than features the matched ports need not be evenly
    // spaced, so the placed label arcs can overlap; leaders are unaffected.
    bool overlap = false;
    std::vector<double> starts;
    for (const Label& l : lab.labels) starts.push_back(l.start);
    std::sort(starts.begin(), starts.end());
    for (int i = 0; i < n && n > 1; ++i)
        if (ccw_delta(starts[i], starts[(i + 1) % n]) < ext - policy.eps_theta)
            overlap = true;
    if (overlap)
        notes.push_back(
            "label arcs placed around the matched ports overlap; the objective "
            "covers leader lengths only");
    if (labeling_has_crossing(lab, instance, policy, nullptr, nullptr))
        notes.push_back("returned labeling still contains a leader crossing");

    SolveReport rep = SolveReport::optimal(std::move(lab));
    rep.notes = std::move(notes);
    return rep;
}

}  // namespace orbital
