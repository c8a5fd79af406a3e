#pragma once

#include <cstdint>
#include <string_view>

namespace tanglefree {

// Deterministic named-stream randomness. Every consumer derives its stream
// from (root seed, stream name, counter), so parallel schedules cannot
// reorder each other's draws. splitmix64 is used directly because the
// <random> distributions are implementation-defined and results here must
// reproduce byte for byte.
class NamedRng {
public:
    explicit NamedRng(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t stream(std::uint64_t seed, std::string_view name,
                                std::uint64_t counter = 0) {
        std::uint64_t h = 1469598103934665603ULL;
        for (char c : name)
            h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
        h = mix(h ^ mix(seed));
        return mix(h ^ mix(counter + 0x517cc1b727220a95ULL));
    }

    static NamedRng of(std::uint64_t seed, std::string_view name,
                       std::uint64_t counter = 0) {
        return NamedRng(stream(seed, name, counter));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), Lemire rejection to stay unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0)
            return 0;
        for (;;) {
            std::uint64_t x = next();
            unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= n || lo >= (0ULL - n) % n)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace tanglefree
