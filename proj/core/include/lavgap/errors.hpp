#pragma once

#include <stdexcept>
#include <string>

namespace lavgap {

// Invalid or inconsistent caller input: bad interval bounds, p < 1,
// a point outside the set it must belong to, malformed run configs.
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// A slow-down plan cannot be realized: the admissible slow set is too
// small to absorb the time debt of the capped fast set.
class infeasible_plan_error : public std::runtime_error {
public:
    infeasible_plan_error(const std::string& what, double needed, double available)
        : std::runtime_error(what), needed_measure(needed), available_measure(available) {}
    double needed_measure;
    double available_measure;
};

// Numerical machinery failed in a way that invalidates the result
// (quadrature blow-up where a finite value was required, probe sets
// that cannot be evaluated, non-monotone time changes).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// A structural precondition on the integrand does not hold (e.g. a
// two-sided plan was requested for an integrand whose velocity domain
// is not star-shaped).
class structure_error : public std::runtime_error {
public:
    explicit structure_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lavgap
