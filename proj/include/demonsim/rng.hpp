#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace demonsim {

namespace detail {

// splitmix64 finalizer; used to decorrelate seed material before it reaches
// the main engine, so that nearby (seed, stream) pairs give unrelated states.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

// Addressable randomness: a (seed, stream) pair fully determines a generator
// state. Derived streams let independent tasks (one per unitary, one per
// round) draw without sharing or synchronizing a generator.
struct RandomSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RandomSeed substream(std::uint64_t index) const {
        return RandomSeed{seed, detail::mix64(stream ^ detail::mix64(index + 0x632be59bd9b4e019ULL))};
    }

    friend bool operator==(const RandomSeed&, const RandomSeed&) = default;
};

class RandomStream {
public:
    explicit RandomStream(RandomSeed key) {
        std::uint64_t material[8];
        std::uint64_t state = detail::mix64(key.seed) ^ detail::mix64(detail::mix64(key.stream) + 0x9e3779b97f4a7c15ULL);
        for (auto& word : material) {
            state = detail::mix64(state);
            word = state;
        }
        std::seed_seq seq{
            static_cast<std::uint32_t>(material[0]), static_cast<std::uint32_t>(material[0] >> 32),
            static_cast<std::uint32_t>(material[1]), static_cast<std::uint32_t>(material[1] >> 32),
            static_cast<std::uint32_t>(material[2]), static_cast<std::uint32_t>(material[2] >> 32),
            static_cast<std::uint32_t>(material[3]), static_cast<std::uint32_t>(material[3] >> 32),
            static_cast<std::uint32_t>(material[4]), static_cast<std::uint32_t>(material[4] >> 32),
            static_cast<std::uint32_t>(material[5]), static_cast<std::uint32_t>(material[5] >> 32),
            static_cast<std::uint32_t>(material[6]), static_cast<std::uint32_t>(material[6] >> 32),
            static_cast<std::uint32_t>(material[7]), static_cast<std::uint32_t>(material[7] >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on {0, ..., bound - 1} via rejection, bias-free.
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw >= limit);
        return draw % bound;
    }

    // Standard normal via Box-Muller; the second deviate of each pair is
    // cached so that consecutive calls consume a predictable word count.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace demonsim
