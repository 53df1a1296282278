#pragma once

#include <cstdint>
#include <random>

namespace cheeger2d {

// Seeded RNG with platform-independent uniform mappings. std::mt19937_64 is
// bit-reproducible by the standard; the distributions below avoid
// implementation-defined std::uniform_*_distribution so that frozen test
// values survive compiler changes.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // uniform integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(eng_() % span);
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

} // namespace cheeger2d
