#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace orbital {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Map any angle to [0, 2*pi).
inline double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // fmod rounding can land exactly on 2*pi
    return r;
}

/// Counter-clockwise sweep from `from` to `to`, in [0, 2*pi).
inline double ccw_delta(double from, double to) {
    return normalize_angle(to - from);
}

/// Shortest angular distance between two angles, in [0, pi].
inline double circ_dist(double a, double b) {
    double d = normalize_angle(a - b);
    return std::min(d, kTwoPi - d);
}

inline bool angles_equal(double a, double b, double tol) {
    return circ_dist(a, b) <= tol;
}

/// Closed circular interval [start, start + extent] on the unit circle of
/// directions.  extent == 2*pi covers the whole circle; extent == 0 is a
/// single point.  Emptiness is represented one level up (an empty interval
/// list), never by a sentinel extent.
struct CircleInterval {
    double start = 0.0;   // normalized to [0, 2*pi)
    double extent = 0.0;  // in [0, 2*pi]

    double end() const { return normalize_angle(start + extent); }
    bool full() const { return extent >= kTwoPi; }

    bool contains(double angle, double tol = 0.0) const {
        if (full()) return true;
        double t = ccw_delta(start, angle);
        return t <= extent + tol || t >= kTwoPi - tol;
    }
};

/// A subset of the circle stored as sorted, pairwise-disjoint closed
/// intervals.  Used for admissible rotation ranges: normally a single
/// interval, but the representation does not assume that.
class CircularSet {
  public:
    static CircularSet full() {
        CircularSet s;
        s.arcs_.push_back({0.0, kTwoPi});
        return s;
    }
    static CircularSet empty_set() { return CircularSet{}; }

    bool empty() const { return arcs_.empty(); }
    bool is_full() const { return arcs_.size() == 1 && arcs_[0].full(); }
    const std::vector<CircleInterval>& arcs() const { return arcs_; }

    double measure() const {
        double m = 0.0;
        for (const auto& a : arcs_) m += a.extent;
        return std::min(m, kTwoPi);
    }

    bool contains(double angle, double tol = 0.0) const {
        for (const auto& a : arcs_)
            if (a.contains(angle, tol)) return true;
        return false;
    }

    /// Intersect an interval pair; the result has at most two pieces
    /// (the wrap-around case).
    static void intersect_pair(const CircleInterval& a, const CircleInterval& b,
                               std::vector<CircleInterval>& out) {
        if (a.full()) {
            out.push_back(b);
            return;
        }
        if (b.full()) {
            out.push_back(a);
            return;
        }
        // Work relative to a.start so a covers [0, a.extent].
        double s = ccw_delta(a.start, b.start);
        // b covers [s, s + b.extent], possibly wrapping past 2*pi.
        auto clip = [&](double lo, double hi) {
            lo = std::max(lo, 0.0);
            hi = std::min(hi, a.extent);
            if (hi >= lo)
                out.push_back({normalize_angle(a.start + lo), hi - lo});
        };
        clip(s, s + b.extent);
        if (s + b.extent > kTwoPi) clip(0.0, s + b.extent - kTwoPi);
    }

    /// Intersect this set with a union of intervals.
    void intersect_with(const std::vector<CircleInterval>& ranges) {
        std::vector<CircleInterval> next;
        for (const auto& a : arcs_)
            for (const auto& r : ranges) intersect_pair(a, r, next);
        arcs_ = std::move(next);
        normalize();
    }

    void intersect_with(const CircularSet& other) { intersect_with(other.arcs_); }

    /// Sort, weld intervals that abut (within `weld`), and drop duplicates.
    void normalize(double weld = 1e-12) {
        if (arcs_.empty()) return;
        std::sort(arcs_.begin(), arcs_.end(),
                  [](const CircleInterval& x, const CircleInterval& y) {
                      return x.start < y.start;
                  });
        std::vector<CircleInterval> merged;
        for (const auto& a : arcs_) {
            if (!merged.empty()) {
                CircleInterval& last = merged.back();
                double gap = ccw_delta(last.end(), a.start);
                double overlap = ccw_delta(last.start, a.start);
                if (overlap <= last.extent + weld || gap <= weld) {
                    double new_extent =
                        std::max(last.extent, ccw_delta(last.start, a.start) + a.extent);
                    last.extent = std::min(new_extent, kTwoPi);
                    continue;
                }
            }
            merged.push_back(a);
        }
        // The last interval may wrap around and swallow the first one(s).
        while (merged.size() > 1) {
            const CircleInterval& last = merged.back();
            const CircleInterval& first = merged.front();
            double reach = last.extent - ccw_delta(last.start, first.start);
            if (last.start + last.extent > kTwoPi && reach >= -1e-12) {
                double ext = std::min(
                    kTwoPi, std::max(last.extent, ccw_delta(last.start, first.start) +
                                                      first.extent));
                merged.back().extent = ext;
                merged.erase(merged.begin());
                continue;
            }
            break;
        }
        if (merged.size() == 1 && merged[0].extent >= kTwoPi - 1e-12 &&
            merged[0].extent < kTwoPi) {
            // Numerically full circle.
            merged[0] = {0.0, kTwoPi};
        }
        arcs_ = std::move(merged);
    }

    void add(const CircleInterval& iv) {
        arcs_.push_back(iv);
        normalize();
    }

  private:
    std::vector<CircleInterval> arcs_;
};

}  // namespace orbital
