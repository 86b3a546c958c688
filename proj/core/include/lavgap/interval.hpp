#pragma once

#include <vector>

#include "lavgap/errors.hpp"

namespace lavgap {

// Closed bounded interval [lo, hi] with lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) throw config_error("Interval: lower bound must be < upper bound");
    }

    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double s) const { return s >= lo && s <= hi; }
    double clamp(double s) const { return s < lo ? lo : (s > hi ? hi : s); }
};

// Finite union of pairwise-disjoint closed intervals, kept sorted by left
// endpoint. Construction normalizes: zero-length components are dropped and
// overlapping or touching components are merged.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> components);

    static IntervalSet empty() { return IntervalSet(); }
    static IntervalSet single(double lo, double hi);

    const std::vector<Interval>& components() const { return comps_; }
    bool is_empty() const { return comps_.empty(); }
    std::size_t size() const { return comps_.size(); }

    double measure() const;
    bool contains(double s) const;

    // Set algebra, all results normalized.
    IntervalSet intersect(const Interval& window) const;
    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet subtract(const IntervalSet& other) const;
    // Closure of window \ this.
    IntervalSet complement_within(const Interval& window) const;

    // Deterministic selection: sweep components left to right and keep
    // exactly `target` of measure, splitting the final component. Throws
    // infeasible_plan_error if the set is too small.
    IntervalSet take_leftmost(double target) const;

    // Image under a strictly increasing map (applied to component endpoints).
    template <typename F>
    IntervalSet map_monotone(F&& f) const {
        std::vector<Interval> out;
        out.reserve(comps_.size());
        for (const auto& c : comps_) {
            double a = f(c.lo), b = f(c.hi);
            if (a < b) out.push_back(Interval(a, b));
        }
        return IntervalSet(std::move(out));
    }

private:
    std::vector<Interval> comps_;
};

} // namespace lavgap
