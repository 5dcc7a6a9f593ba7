#include "orbital/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "orbital/errors.hpp"

namespace orbital {

namespace {

constexpr int kMaxFeatures = 8;
constexpr double kWeld = 1e-13;
constexpr double kTieRel = 1e-12;

// Label-block geometry for one cyclic order, derived from scratch: offsets of
// every label start and port relative to the first label's start.
struct Layout {
    std::vector<double> start_off, port_off, ext;
    int inner = 0;
};

Layout layout_for_order(const Instance& inst, const std::vector<int>& order) {
    const int n = inst.size();
    Layout L;
    L.start_off.assign(n, 0.0);
    L.port_off.assign(n, 0.0);
    L.ext.assign(n, 0.0);
    const double R = inst.radius();
    double cum = 0.0;
    for (int m = 0; m < n; ++m) {
        int f = order[m];
        L.ext[f] = inst.features[f].label_length / R;
        L.start_off[f] = cum;
        L.port_off[f] = cum + inst.ratio_of(f) * L.ext[f];
        cum += L.ext[f];
    }
    L.inner = 0;
    for (int f = 1; f < n; ++f)
        if (inst.features[f].position.radius < inst.features[L.inner].position.radius)
            L.inner = f;
    return L;
}

bool any_crossing(const std::vector<Leader>& leaders, const Instance& inst,
                  const Policy& policy) {
    const int n = static_cast<int>(leaders.size());
    const double R = inst.radius();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (leaders_cross(leaders[a], leaders[b],
                              inst.features[a].position.radius,
                              inst.features[b].position.radius, R, policy))
                return true;
    return false;
}

std::vector<double> event_rotations(const Instance& inst, const Layout& L, int grid) {
    const int n = inst.size();
    std::vector<double> ev;
    ev.reserve(2 * static_cast<size_t>(n) * n + n + std::max(grid, 0));
    for (int a = 0; a < n; ++a) {
        double alpha = inst.features[a].position.angle;
        ev.push_back(normalize_angle(alpha - L.port_off[L.inner]));
        for (int b = 0; b < n; ++b) {
            ev.push_back(normalize_angle(alpha - L.port_off[b]));
            ev.push_back(normalize_angle(alpha + kPi - L.port_off[b]));
        }
    }
    for (int g = 0; g < grid; ++g) ev.push_back(g * kTwoPi / grid);
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end(),
                         [](double a, double b) { return b - a <= kWeld; }),
             ev.end());
    return ev;
}

std::optional<double> eval_rotation(const Instance& inst, const Layout& L, double t,
                                    LeaderDirection inner_dir, const Policy& policy,
                                    std::vector<Leader>& buf) {
    const int n = inst.size();
    buf.clear();
    double xi1 = normalize_angle(t + L.port_off[L.inner]);
    for (int f = 0; f < n; ++f) {
        double port = normalize_angle(t + L.port_off[f]);
        LeaderDirection dir =
            (f == L.inner)
                ? inner_dir
                : forced_direction(inst.features[f].position.angle, port, xi1, policy);
        buf.push_back(make_leader(f, inst.features[f].position, port, dir, policy));
    }
    if (any_crossing(buf, inst, policy)) return std::nullopt;
    double obj = 0.0;
    for (int f = 0; f < n; ++f)
        obj += leader_length(inst.features[f].position, buf[f].orbital_span, inst.circumference);
    return obj;
}

struct OrderBest {
    bool feasible = false;
    double obj = 0.0;
    double rot = 0.0;
    LeaderDirection dir = LeaderDirection::CCW;
    long long evals = 0;
};

OrderBest run_order(const Instance& inst, const Layout& L,
                    const std::vector<double>& events, const Policy& policy) {
    OrderBest best;
    std::vector<Leader> buf;
    // Each event is probed at the point itself and a whisker to either side.
    // A piece of the objective can end at a rotation that is itself infeasible
    // (a direction tie resolving to the crossing side); the whiskers pick up
    // the one-sided limit values such a boundary only approaches.
    const double nudge = 32.0 * policy.eps_theta;
    for (LeaderDirection dir : {LeaderDirection::CCW, LeaderDirection::CW}) {
        for (double t0 : events) {
            for (double t : {t0, normalize_angle(t0 - nudge), normalize_angle(t0 + nudge)}) {
                ++best.evals;
                auto obj = eval_rotation(inst, L, t, dir, policy, buf);
                if (!obj) continue;
                if (!best.feasible ||
                    *obj < best.obj - kTieRel * (1.0 + std::abs(best.obj))) {
                    best.feasible = true;
                    best.obj = *obj;
                    best.rot = t;
                    best.dir = dir;
                }
            }
        }
    }
    return best;
}

Labeling materialize(const Instance& inst, const Layout& L, double t,
                     LeaderDirection inner_dir, const Policy& policy) {
    const int n = inst.size();
    Labeling lab;
    lab.labels.reserve(n);
    std::vector<Leader> buf;
    auto obj = eval_rotation(inst, L, t, inner_dir, policy, buf);
    for (int f = 0; f < n; ++f) {
        Label l;
        l.feature = f;
        l.start = normalize_angle(t + L.start_off[f]);
        l.extent = L.ext[f];
        l.port = normalize_angle(t + L.port_off[f]);
        lab.labels.push_back(l);
    }
    lab.leaders = std::move(buf);
    lab.objective = obj.value_or(0.0);
    return lab;
}

// Shared gates.
std::string ratio_gate(const Instance& inst) {
    if (inst.variant.ratios == RatioMode::NonUniformFree)
        return "per-feature free port ratios are not supported";
    if (inst.variant.ratios == RatioMode::UniformFree &&
        inst.variant.sizes != SizeMode::Uniform)
        return "a shared free port ratio with non-uniform label lengths is outside "
               "the oracle's scope";
    return "";
}

void common_checks(const Instance& inst, const Policy& policy, const char* who) {
    if (inst.size() > kMaxFeatures)
        throw SizeRefusal(std::string(who) + " refuses more than 8 features");
    if (policy.strict &&
        inst.has_duplicate_radii(policy.len_tol(inst.circumference)))
        throw DegenerateInput(
            "two features share an orbit; rerun with the lenient policy");
}

}  // namespace

OracleResult oracle_locked_order_free(const Instance& instance, int extra_grid,
                                      const Policy& policy) {
    OracleResult res;
    res.grid_resolution = std::max(extra_grid, 0);
    if (instance.variant.ports != PortMode::Free ||
        instance.variant.order != OrderMode::Locked) {
        res.status = SolveStatus::Unsupported;
        res.message = "this oracle evaluates free ports with a locked order";
        return res;
    }
    if (std::string msg = ratio_gate(instance); !msg.empty()) {
        res.status = SolveStatus::Unsupported;
        res.message = msg;
        return res;
    }
    if (instance.size() == 0) {
        res.message = "instance has no features";
        return res;
    }
    common_checks(instance, policy, "the locked-order oracle");
    // An absent order list means the identity order, as in the solvers.
    std::vector<int> order = instance.order;
    if (order.empty())
        for (int f = 0; f < instance.size(); ++f) order.push_back(f);
    if (static_cast<int>(order.size()) != instance.size())
        throw InvalidArgument("locked order must list every feature exactly once");

    Layout L = layout_for_order(instance, order);
    std::vector<double> events = event_rotations(instance, L, res.grid_resolution);
    OrderBest best = run_order(instance, L, events, policy);
    res.search_space = best.evals;
    if (!best.feasible) {
        res.status = SolveStatus::Infeasible;
        res.message = "no evaluated rotation is crossing-free";
        return res;
    }
    res.status = SolveStatus::Optimal;
    res.objective = best.obj;
    res.labeling = materialize(instance, L, best.rot, best.dir, policy);
    return res;
}

OracleResult oracle_free_order(const Instance& instance, const Policy& policy) {
    OracleResult res;
    if (instance.variant.ports != PortMode::Free ||
        instance.variant.order != OrderMode::Free) {
        res.status = SolveStatus::Unsupported;
        res.message = "this oracle evaluates free ports with a free order";
        return res;
    }
    if (std::string msg = ratio_gate(instance); !msg.empty()) {
        res.status = SolveStatus::Unsupported;
        res.message = msg;
        return res;
    }
    const int n = instance.size();
    if (n == 0) {
        res.message = "instance has no features";
        return res;
    }
    common_checks(instance, policy, "the free-order oracle");

    std::vector<int> tail;
    for (int f = 1; f < n; ++f) tail.push_back(f);
    std::vector<int> order(n);
    order[0] = 0;

    bool have = false;
    double best_obj = 0.0;
    std::vector<int> best_order;
    double best_rot = 0.0;
    LeaderDirection best_dir = LeaderDirection::CCW;
    do {
        for (size_t i = 0; i < tail.size(); ++i) order[i + 1] = tail[i];
        Layout L = layout_for_order(instance, order);
        std::vector<double> events = event_rotations(instance, L, 0);
        OrderBest ob = run_order(instance, L, events, policy);
        res.search_space += ob.evals;
        if (ob.feasible &&
            (!have || ob.obj < best_obj - kTieRel * (1.0 + std::abs(best_obj)))) {
            have = true;
            best_obj = ob.obj;
            best_order = order;
            best_rot = ob.rot;
            best_dir = ob.dir;
        }
    } while (std::next_permutation(tail.begin(), tail.end()));

    if (!have) {
        res.status = SolveStatus::Infeasible;
        res.message = "no cyclic order admits a crossing-free rotation";
        return res;
    }
    res.status = SolveStatus::Optimal;
    res.objective = best_obj;
    Layout L = layout_for_order(instance, best_order);
    res.labeling = materialize(instance, L, best_rot, best_dir, policy);
    return res;
}

OracleResult oracle_locked_candidates(const Instance& instance, const Policy& policy) {
    OracleResult res;
    if (instance.variant.ports != PortMode::Locked) {
        res.status = SolveStatus::Unsupported;
        res.message = "this oracle evaluates locked port candidates";
        return res;
    }
    if (std::string msg = ratio_gate(instance); !msg.empty()) {
        res.status = SolveStatus::Unsupported;
        res.message = msg;
        return res;
    }
    const int n = instance.size();
    if (n == 0) {
        res.message = "instance has no features";
        return res;
    }
    const bool locked_order = instance.variant.order == OrderMode::Locked;
    if (!locked_order && instance.variant.sizes != SizeMode::Uniform) {
        res.status = SolveStatus::Unsupported;
        res.message =
            "label placement around locked ports is undefined for a free order "
            "with non-uniform label lengths";
        return res;
    }
    common_checks(instance, policy, "the locked-candidates oracle");
    // An absent order list means the identity order, as in the solvers.
    std::vector<int> effective_order = instance.order;
    if (locked_order && effective_order.empty())
        for (int f = 0; f < n; ++f) effective_order.push_back(f);
    if (locked_order && static_cast<int>(effective_order.size()) != n)
        throw InvalidArgument("locked order must list every feature exactly once");

    std::vector<double> cand;
    for (double c : instance.candidates) cand.push_back(normalize_angle(c));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end(),
                           [&](double a, double b) { return b - a <= policy.eps_theta; }),
               cand.end());
    while (cand.size() > 1 && cand.front() + kTwoPi - cand.back() <= policy.eps_theta)
        cand.pop_back();
    const int m = static_cast<int>(cand.size());
    if (m < n) {
        res.status = SolveStatus::Infeasible;
        res.message = "fewer port candidates than features";
        return res;
    }
    double arrangements = 1.0;
    for (int t = 0; t < n; ++t) arrangements *= (m - t);
    if (arrangements > 1e7)
        throw SizeRefusal("the locked-candidates oracle refuses more than 10^7 "
                          "feature-to-candidate arrangements");

    Layout L = layout_for_order(
        instance, locked_order ? effective_order : [&] {
            std::vector<int> id(n);
            for (int f = 0; f < n; ++f) id[f] = f;
            return id;
        }());
    const int first = locked_order ? effective_order[0] : 0;

    std::vector<int> pick(n, -1);
    std::vector<char> used(m, 0);
    std::vector<Leader> buf, best_buf;
    bool have = false;
    double best_obj = 0.0;
    std::vector<int> best_pick;

    auto directions_best = [&](const std::vector<int>& sel) -> std::optional<double> {
        buf.clear();
        for (int f = 0; f < n; ++f) {
            double port = cand[sel[f]];
            double ccw = ccw_delta(instance.features[f].position.angle, port);
            LeaderDirection dir =
                (ccw <= kPi) ? LeaderDirection::CCW : LeaderDirection::CW;
            buf.push_back(make_leader(f, instance.features[f].position, port, dir, policy));
        }
        if (!any_crossing(buf, instance, policy)) {
            double obj = 0.0;
            for (int f = 0; f < n; ++f)
                obj += leader_length(instance.features[f].position, buf[f].orbital_span,
                                     instance.circumference);
            return obj;
        }
        // The cheap per-leader directions cross; enumerate all combinations.
        std::optional<double> best;
        std::vector<Leader> local;
        for (int mask = 0; mask < (1 << n); ++mask) {
            local.clear();
            for (int f = 0; f < n; ++f) {
                LeaderDirection dir = (mask >> f) & 1 ? LeaderDirection::CW
                                                      : LeaderDirection::CCW;
                local.push_back(
                    make_leader(f, instance.features[f].position, cand[sel[f]], dir, policy));
            }
            if (any_crossing(local, instance, policy)) continue;
            double obj = 0.0;
            for (int f = 0; f < n; ++f)
                obj += leader_length(instance.features[f].position, local[f].orbital_span,
                                     instance.circumference);
            if (!best || obj < *best) {
                best = obj;
                buf = local;
            }
        }
        return best;
    };

    auto rigid_ok = [&](const std::vector<int>& sel) {
        double phi0 = cand[sel[first]];
        for (int f = 0; f < n; ++f) {
            double want =
                normalize_angle(phi0 + L.port_off[f] - L.port_off[first]);
            if (circ_dist(cand[sel[f]], want) > policy.eps_theta) return false;
        }
        return true;
    };

    auto leaf = [&]() {
        ++res.search_space;
        if (locked_order && !rigid_ok(pick)) return;
        auto obj = directions_best(pick);
        if (!obj) return;
        if (!have || *obj < best_obj - kTieRel * (1.0 + std::abs(best_obj))) {
            have = true;
            best_obj = *obj;
            best_pick = pick;
            best_buf = buf;
        }
    };
    auto rec = [&](auto&& self, int f) -> void {
        if (f == n) {
            leaf();
            return;
        }
        for (int j = 0; j < m; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            pick[f] = j;
            self(self, f + 1);
            used[j] = 0;
        }
        pick[f] = -1;
    };
    rec(rec, 0);

    if (!have) {
        res.status = SolveStatus::Infeasible;
        res.message = locked_order
                          ? "no candidate placement of the locked order is feasible"
                          : "no crossing-free feature-to-candidate assignment exists";
        return res;
    }

    Labeling lab;
    lab.labels.reserve(n);
    for (int f = 0; f < n; ++f) {
        Label l;
        l.feature = f;
        l.port = cand[best_pick[f]];
        if (locked_order) {
            double phi0 = cand[best_pick[first]];
            l.start = normalize_angle(phi0 + L.start_off[f] - L.port_off[first]);
            l.extent = L.ext[f];
        } else {
            l.extent = kTwoPi / n;
            l.start = normalize_angle(l.port - instance.ratio_of(f) * l.extent);
        }
        lab.labels.push_back(l);
    }
    lab.leaders = best_buf;
    lab.objective = best_obj;
    res.status = SolveStatus::Optimal;
    res.objective = best_obj;
    res.labeling = std::move(lab);
    return res;
}

}  // namespace orbital
