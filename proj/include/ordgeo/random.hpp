/// @file  random.hpp
/// @brief Deterministic, counter-based random streams.
///
/// Every random draw in the library flows through RandomStream, a splitmix64
/// counter generator. Output depends only on 64-bit integer arithmetic plus
/// IEEE double conversions, so a (seed, label) pair reproduces the same
/// sequence on any platform. Streams are independent: they are keyed by a
/// hash of the master seed, a label string, and an optional index, so
/// consumers never share or advance each other's state.

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace ordgeo {

namespace detail {

/// splitmix64 output function (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a over a label; used only to derive stream keys.
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace detail

/// One independent pseudorandom stream.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0)
        : state_(detail::mix64(detail::mix64(seed ^ detail::fnv1a(label)) ^ index)),
          spare_(0.0), has_spare_(false) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1), 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_open_double() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform index in [0, bound); rejection sampling keeps it unbiased.
    std::size_t next_index(std::size_t bound) {
        const std::uint64_t b = bound;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return static_cast<std::size_t>(x % b);
    }

    /// Standard normal via the Marsaglia polar method (no trigonometry,
    /// which keeps the only libm dependency down to sqrt and log).
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    std::uint64_t state_;
    double spare_;
    bool has_spare_;
};

} // namespace ordgeo
