#include "orbital/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace orbital {

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

}  // namespace

ValidationReport validate_instance(const Instance& instance, const Policy& policy) {
    ValidationReport rep;
    const int n = instance.size();
    if (n == 0) {
        rep.add("structure", "instance has no features");
        return rep;
    }
    if (!(instance.circumference > 0.0)) {
        rep.add("structure", "circumference must be positive");
        return rep;
    }
    const double R = instance.radius();
    const double len_tol = policy.len_tol(instance.circumference);

    std::set<std::string> ids;
    double lambda_sum = 0.0;
    for (const auto& f : instance.features) {
        if (!ids.insert(f.id).second)
            rep.add("structure", "duplicate feature id '" + f.id + "'");
        if (!(f.label_length > 0.0))
            rep.add("structure", "feature '" + f.id + "' has non-positive label length");
        lambda_sum += f.label_length;
        if (f.position.radius < -len_tol || f.position.radius > R + len_tol)
            rep.add("radius-range", "feature '" + f.id + "' lies outside the disk (r=" +
                                        fmt(f.position.radius) + ", R=" + fmt(R) + ")");
    }
    if (std::abs(lambda_sum - instance.circumference) > len_tol)
        rep.add("label-sum", "label lengths sum to " + fmt(lambda_sum) +
                                 ", circumference is " + fmt(instance.circumference));

    if (policy.strict && instance.has_duplicate_radii(len_tol))
        rep.add("duplicate-radii",
                "two features share an orbit; the crossing-freeness guarantee "
                "needs distinct radii (use the lenient policy to proceed)");

    switch (instance.variant.ratios) {
        case RatioMode::UniformLocked:
            if (instance.variant.k < 0.0 || instance.variant.k > 1.0)
                rep.add("ratio", "ratio k=" + fmt(instance.variant.k) +
                                     " outside [0, 1]");
            break;
        case RatioMode::NonUniformLocked:
            if (static_cast<int>(instance.variant.K.size()) != n)
                rep.add("ratio", "ratio vector K has " +
                                     std::to_string(instance.variant.K.size()) +
                                     " entries for " + std::to_string(n) + " features");
            for (double k : instance.variant.K)
                if (k < 0.0 || k > 1.0)
                    rep.add("ratio", "ratio " + fmt(k) + " outside [0, 1]");
            break;
        default: break;
    }

    if (instance.variant.sizes == SizeMode::Uniform) {
        for (const auto& f : instance.features)
            if (std::abs(f.label_length - instance.features[0].label_length) > len_tol) {
                rep.add("sizes", "variant declares uniform sizes but label lengths differ");
                break;
            }
    }

    // An absent order list under a locked order means the identity order
    // (feature-index order), matching the solvers; only a malformed explicit
    // list is a defect.
    if (instance.variant.order == OrderMode::Locked && !instance.order.empty()) {
        if (static_cast<int>(instance.order.size()) != n) {
            rep.add("missing-data", "locked order must list every feature exactly once");
        } else {
            std::vector<bool> seen(n, false);
            for (int idx : instance.order) {
                if (idx < 0 || idx >= n || seen[idx]) {
                    rep.add("missing-data", "locked order is not a permutation of the features");
                    break;
                }
                seen[idx] = true;
            }
        }
    }
    if (instance.variant.ports == PortMode::Locked) {
        if (instance.candidates.empty())
            rep.add("missing-data", "locked ports need a candidate list");
        for (size_t i = 1; i < instance.candidates.size(); ++i)
            if (ccw_delta(instance.candidates[i - 1], instance.candidates[i]) <=
                policy.eps_theta)
                rep.add("candidates", "candidate angles contain duplicates");
    }
    return rep;
}

namespace {

CircleInterval swept_of(const Leader& l, const Instance& inst) {
    double alpha = inst.features[l.feature].position.angle;
    if (l.direction == LeaderDirection::Radial || l.orbital_span <= 0.0)
        return {alpha, 0.0};
    double start = (l.direction == LeaderDirection::CCW) ? alpha : l.port;
    return {normalize_angle(start), l.orbital_span};
}

}  // namespace

ValidationReport validate_labeling(const Labeling& labeling, const Instance& instance,
                                   const Policy& policy) {
    ValidationReport rep;
    const int n = instance.size();
    const double R = instance.radius();
    const double tol = policy.eps_theta;
    const double len_tol = policy.len_tol(instance.circumference);

    if (static_cast<int>(labeling.labels.size()) != n ||
        static_cast<int>(labeling.leaders.size()) != n) {
        rep.add("structure", "labeling must carry exactly one label and one leader per feature");
        return rep;
    }
    std::vector<const Label*> label_of(n, nullptr);
    std::vector<const Leader*> leader_of(n, nullptr);
    for (const auto& l : labeling.labels) {
        if (l.feature < 0 || l.feature >= n || label_of[l.feature]) {
            rep.add("structure", "labels do not map one-to-one onto features");
            return rep;
        }
        label_of[l.feature] = &l;
    }
    for (const auto& l : labeling.leaders) {
        if (l.feature < 0 || l.feature >= n || leader_of[l.feature]) {
            rep.add("structure", "leaders do not map one-to-one onto features");
            return rep;
        }
        leader_of[l.feature] = &l;
    }

    // Labels: length, port on arc, ratio.
    std::vector<double> ratio_positions(n, 0.0);
    for (int f = 0; f < n; ++f) {
        const Label& lab = *label_of[f];
        const std::string& id = instance.features[f].id;
        double want_extent = instance.features[f].label_length / R;
        if (std::abs(lab.extent * R - instance.features[f].label_length) > len_tol)
            rep.add("label-length", "label '" + id + "' has extent " + fmt(lab.extent) +
                                        ", expected " + fmt(want_extent));
        double off = ccw_delta(lab.start, lab.port);
        if (off > lab.extent + tol)
            rep.add("structure", "port of label '" + id + "' lies off its arc");
        ratio_positions[f] = (lab.extent > 0.0) ? std::min(off / lab.extent, 1.0) : 0.0;
        switch (instance.variant.ratios) {
            case RatioMode::UniformLocked:
            case RatioMode::NonUniformLocked: {
                double want = normalize_angle(lab.start + instance.ratio_of(f) * lab.extent);
                if (circ_dist(lab.port, want) > 8.0 * tol)
                    rep.add("ratio", "port of label '" + id + "' deviates from the locked ratio");
                break;
            }
            default: break;
        }
    }
    if (instance.variant.ratios == RatioMode::UniformFree) {
        auto [lo, hi] = std::minmax_element(ratio_positions.begin(), ratio_positions.end());
        if (*hi - *lo > 1e-6)
            rep.add("ratio", "uniform-free ratios must agree across labels (spread " +
                                 fmt(*hi - *lo) + ")");
    }

    // Tiling: labels sorted by start must abut and wrap exactly once.
    bool tiling_is_note = instance.variant.ports == PortMode::Locked &&
                          instance.variant.order == OrderMode::Free;
    auto tiling_issue = [&](const std::string& msg) {
        if (tiling_is_note)
            rep.notes.push_back("label placement: " + msg);
        else
            rep.add("tiling", msg);
    };
    std::vector<int> by_start(n);
    for (int i = 0; i < n; ++i) by_start[i] = i;
    std::sort(by_start.begin(), by_start.end(), [&](int a, int b) {
        return label_of[a]->start < label_of[b]->start;
    });
    double extent_sum = 0.0;
    for (int i = 0; i < n; ++i) extent_sum += label_of[i]->extent;
    if (std::abs(extent_sum - kTwoPi) > n * tol + 1e-9)
        tiling_issue("label extents sum to " + fmt(extent_sum) + ", not 2*pi");
    for (int i = 0; i < n && n > 1; ++i) {
        const Label& cur = *label_of[by_start[i]];
        const Label& nxt = *label_of[by_start[(i + 1) % n]];
        double end = normalize_angle(cur.start + cur.extent);
        double d = circ_dist(end, nxt.start);
        if (d > 8.0 * tol) {
            bool gap = ccw_delta(end, nxt.start) < kPi;
            tiling_issue(std::string(gap ? "gap" : "overlap") + " of " + fmt(d) +
                         " rad between labels '" +
                         instance.features[cur.feature].id + "' and '" +
                         instance.features[nxt.feature].id + "'");
        }
    }

    // Locked order: cyclic sequence of labels around the boundary.  An
    // absent order list means the identity order, as in the solvers.
    if (instance.variant.order == OrderMode::Locked && n > 1 &&
        (instance.order.empty() || static_cast<int>(instance.order.size()) == n)) {
        std::vector<int> expected = instance.order;
        if (expected.empty())
            for (int f = 0; f < n; ++f) expected.push_back(f);
        int rot = -1;
        for (int i = 0; i < n; ++i)
            if (expected[i] == by_start[0]) rot = i;
        bool match = rot >= 0;
        for (int i = 0; match && i < n; ++i)
            if (expected[(rot + i) % n] != by_start[i]) match = false;
        if (!match)
            rep.add("order", "labels do not follow the locked cyclic order");
    }

    // Locked ports: every leader port must be a candidate.
    if (instance.variant.ports == PortMode::Locked) {
        for (int f = 0; f < n; ++f) {
            bool found = false;
            for (double c : instance.candidates)
                if (circ_dist(leader_of[f]->port, c) <= 8.0 * tol) found = true;
            if (!found)
                rep.add("candidate", "port of '" + instance.features[f].id +
                                         "' is not a candidate angle");
        }
    }

    // Leader geometry and attachment.
    for (int f = 0; f < n; ++f) {
        const Leader& l = *leader_of[f];
        const std::string& id = instance.features[f].id;
        double r = instance.features[f].position.radius;
        double alpha = instance.features[f].position.angle;
        if (circ_dist(l.port, label_of[f]->port) > 8.0 * tol)
            rep.add("port-mismatch", "leader of '" + id +
                                         "' does not attach at its label's port");
        if (l.direction == LeaderDirection::Radial) {
            if (l.orbital_span > tol)
                rep.add("leader-geometry", "radial leader of '" + id + "' has non-zero span");
            if (r > tol && circ_dist(alpha, l.port) > 8.0 * tol)
                rep.add("leader-geometry", "radial leader of '" + id +
                                               "' does not point at its feature");
        } else {
            double want = (l.direction == LeaderDirection::CCW)
                              ? ccw_delta(alpha, l.port)
                              : ccw_delta(l.port, alpha);
            if (std::abs(want - l.orbital_span) > 8.0 * tol)
                rep.add("leader-geometry", "leader of '" + id + "' stores span " +
                                               fmt(l.orbital_span) + ", geometry gives " +
                                               fmt(want));
        }
    }

    // Crossings.  Equal orbits void the guarantee; fall back to the lenient
    // predicate so the check still reports something useful.
    Policy cross_policy = policy;
    if (policy.strict && instance.has_duplicate_radii(len_tol)) {
        cross_policy.strict = false;
        rep.notes.push_back(
            "features share an orbit: crossing-free guarantee void; pairs "
            "checked with the lenient predicate");
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (leaders_cross(*leader_of[a], *leader_of[b],
                              instance.features[a].position.radius,
                              instance.features[b].position.radius, R, cross_policy))
                rep.add("crossing", "leaders of '" + instance.features[a].id +
                                        "' and '" + instance.features[b].id + "' cross");
        }

    double recomputed = total_leader_length(labeling, instance);
    if (std::abs(recomputed - labeling.objective) >
        len_tol * (1.0 + std::abs(recomputed)))
        rep.add("objective", "stored objective " + fmt(labeling.objective) +
                                 " differs from recomputed " + fmt(recomputed));
    return rep;
}

std::optional<double> find_splitting_witness(const Labeling& labeling,
                                             const Instance& instance,
                                             const Policy& policy) {
    std::vector<double> events;
    for (const auto& l : labeling.leaders) {
        events.push_back(l.port);
        events.push_back(instance.features[l.feature].position.angle);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    if (events.empty()) return std::nullopt;

    const double tol = policy.eps_theta;
    int m = static_cast<int>(events.size());
    for (int i = 0; i < m; ++i) {
        double next = events[(i + 1) % m];
        double chi = normalize_angle(events[i] + 0.5 * ccw_delta(events[i], next));
        if (m == 1) chi = normalize_angle(events[0] + kPi);
        bool clean = true;
        for (const auto& l : labeling.leaders) {
            if (angles_equal(chi, l.port, tol)) clean = false;
            CircleInterval swept = swept_of(l, instance);
            if (swept.extent > 0.0 && swept.contains(chi, tol)) clean = false;
            if (!clean) break;
        }
        if (clean) return chi;
    }
    return std::nullopt;
}

}  // namespace orbital
