#pragma once

#include "csrrt/configuration.hpp"
#include "csrrt/geometry.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace csrrt {

/// Counter-based generator: output k of a stream is a pure function of
/// (stream key, k). Streams are keyed by (seed, name, index) so every
/// stochastic step draws from its own reproducible sequence.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

    std::uint64_t next_u64() noexcept;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept;
    /// Standard normal (Box-Muller, no caching).
    double normal() noexcept;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;
[[nodiscard]] std::uint64_t hash_name(std::string_view name) noexcept;

/// Uniform configuration inside the box.
[[nodiscard]] Configuration uniform_in(const StateBounds& bounds, Rng& rng);

/// Unit vector of the given dimension, uniform on the sphere.
[[nodiscard]] std::vector<double> random_direction(std::size_t dim, Rng& rng);

[[nodiscard]] double radical_inverse(std::uint64_t index, std::uint32_t base) noexcept;

/// Halton points scaled to a box. Index 0 is skipped (it maps to the corner).
class HaltonSequence {
public:
    HaltonSequence(StateBounds bounds, std::vector<std::uint32_t> bases);

    /// Default bases: the first d primes.
    static HaltonSequence for_bounds(const StateBounds& bounds);

    Configuration next();
    [[nodiscard]] std::uint64_t index() const noexcept { return index_; }

private:
    StateBounds bounds_;
    std::vector<std::uint32_t> bases_;
    std::uint64_t index_ = 1;
};

} // namespace csrrt
