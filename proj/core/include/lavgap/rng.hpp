#pragma once

#include <cstdint>
#include <random>

namespace lavgap {

// Deterministic probe generator. The engine (mt19937_64) is pinned by the
// standard, and uniforms are derived from raw bits rather than
// std::uniform_real_distribution so that identical seeds give identical
// probe streams on every platform.
class ProbeRng {
public:
    explicit ProbeRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double u01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * u01();
    }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace lavgap
