#pragma once

#include <cstdint>
#include <random>

namespace bergman {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Decorrelated per-stream seed so parallel blocks can own independent
// generators while the whole run stays a pure function of the root seed.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    std::uint64_t s = root ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    splitmix64(s);
    return splitmix64(s);
}

// mt19937_64 with a portable uniform conversion.  The engine's output
// sequence is pinned by the standard; std::uniform_real_distribution is not,
// so the [0,1) mapping is done by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    std::uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace bergman
