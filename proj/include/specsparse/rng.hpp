#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace specsparse {

/// Counter-based pseudo-random generator (splitmix64 finalizer over a
/// key + counter stream). Output for a given (seed, stream, counter) is
/// platform-independent, so parallel consumers can partition the counter
/// space and still merge results deterministically.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed + golden) + stream * golden)) {}

    /// Independent generator derived from this one; same (key, id) always
    /// yields the same substream.
    CounterRng substream(std::uint64_t id) const {
        CounterRng r(0);
        r.key_ = mix(key_ + (id + 1) * golden);
        r.counter_ = 0;
        r.has_spare_ = false;
        return r;
    }

    std::uint64_t next_u64() {
        return mix(key_ + (++counter_) * golden);
    }

    /// Uniform in (0, 1].
    double next_unit() {
        return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    Eigen::VectorXd gaussian_vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = next_gaussian();
        return v;
    }

private:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    static constexpr double pi = 3.14159265358979323846;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace specsparse
