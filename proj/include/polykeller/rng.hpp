#pragma once

#include <cstdint>

namespace polykeller {

// splitmix64. std::mt19937_64 itself is portable, but the standard
// distributions are not, so every sampling decision in the project goes
// through this class: identical seeds give identical streams everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform integer in [lo, hi], both inclusive
    long uniform(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = ~0ULL - ~0ULL % span;
        std::uint64_t v = next_u64();
        while (v >= limit)
            v = next_u64();
        return lo + static_cast<long>(v % span);
    }

    // true with probability num/den
    bool chance(long num, long den) { return uniform(1, den) <= num; }

private:
    std::uint64_t state_;
};

// Stable derivation of a sub-stream seed; does not depend on how much of the
// parent stream has been consumed, so parallel instance runs stay canonical.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (0x5851f42d4c957f2dULL * (salt + 1)));
    r.next_u64();
    return r.next_u64();
}

} // namespace polykeller
