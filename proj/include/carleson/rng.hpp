#ifndef CARLESON_RNG_HPP
#define CARLESON_RNG_HPP

#include <cstdint>
#include <cmath>

namespace carleson {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ stream keyed by (root seed, stream id).
///
/// Streams are derived by a counter-based split: the state is expanded from
/// splitmix64 applied to the root seed xored with a mixed stream id, so
/// stratum s of a run always sees the same sequence no matter how strata are
/// scheduled across threads.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t init = seed ^ (0x6a09e667f3bcc909ULL * (stream + 1));
        for (auto& word : s_) word = splitmix64(init);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as an argument to log and pow.
    double next_double_open0() {
        return 1.0 - next_double();
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) {
        return a + (b - a) * next_double();
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace carleson

#endif
