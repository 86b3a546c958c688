#include "lavgap/interval.hpp"

#include <algorithm>
#include <cmath>

namespace lavgap {

IntervalSet::IntervalSet(std::vector<Interval> components) : comps_(std::move(components)) {
    std::sort(comps_.begin(), comps_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& c : comps_) {
        if (!(c.lo < c.hi)) continue; // drop degenerate
        if (!merged.empty() && c.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, c.hi);
        } else {
            merged.push_back(c);
        }
    }
    comps_ = std::move(merged);
}

IntervalSet IntervalSet::single(double lo, double hi) {
    return IntervalSet(std::vector<Interval>{Interval(lo, hi)});
}

double IntervalSet::measure() const {
    double m = 0.0;
    for (const auto& c : comps_) m += c.length();
    return m;
}

bool IntervalSet::contains(double s) const {
    for (const auto& c : comps_) {
        if (s < c.lo) return false;
        if (s <= c.hi) return true;
    }
    return false;
}

IntervalSet IntervalSet::intersect(const Interval& window) const {
    std::vector<Interval> out;
    for (const auto& c : comps_) {
        double lo = std::max(c.lo, window.lo);
        double hi = std::min(c.hi, window.hi);
        if (lo < hi) out.push_back(Interval(lo, hi));
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = comps_;
    all.insert(all.end(), other.comps_.begin(), other.comps_.end());
    return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const auto& c : comps_) {
        double cursor = c.lo;
        for (const auto& o : other.comps_) {
            if (o.hi <= cursor) continue;
            if (o.lo >= c.hi) break;
            if (o.lo > cursor) out.push_back(Interval(cursor, std::min(o.lo, c.hi)));
            cursor = std::max(cursor, o.hi);
            if (cursor >= c.hi) break;
        }
        if (cursor < c.hi) out.push_back(Interval(cursor, c.hi));
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement_within(const Interval& window) const {
    return IntervalSet::single(window.lo, window.hi).subtract(intersect(window));
}

IntervalSet IntervalSet::take_leftmost(double target) const {
    if (target <= 0.0) return IntervalSet();
    double have = measure();
    if (target > have * (1.0 + 1e-12) + 1e-300) {
        throw infeasible_plan_error("take_leftmost: set too small for requested measure",
                                    target, have);
    }
    std::vector<Interval> out;
    double acc = 0.0;
    for (const auto& c : comps_) {
        double rem = target - acc;
        if (rem <= 0.0) break;
        if (c.length() >= rem) {
            out.push_back(Interval(c.lo, c.lo + rem));
            acc = target;
            break;
        }
        out.push_back(c);
        acc += c.length();
    }
    return IntervalSet(std::move(out));
}

} // namespace lavgap
