#include "csrrt/sampling.hpp"

#include "csrrt/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace csrrt {

std::uint64_t mix64(std::uint64_t x) noexcept {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_name(std::string_view name) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

Rng::Rng(std::uint64_t seed, std::string_view stream, std::uint64_t index)
    : key_(mix64(mix64(seed) ^ hash_name(stream)) ^ mix64(index + 0x632be59bd9b4e019ULL)) {}

std::uint64_t Rng::next_u64() noexcept {
    const std::uint64_t c = counter_++;
    return mix64(key_ ^ mix64(c));
}

double Rng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) noexcept {
    if (n <= 1)
        return 0;
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
    std::uint64_t v = next_u64();
    while (v >= limit)
        v = next_u64();
    return v % n;
}

double Rng::normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Configuration uniform_in(const StateBounds& bounds, Rng& rng) {
    std::array<double, kMaxDim> c{};
    for (std::size_t i = 0; i < bounds.lo.dim(); ++i)
        c[i] = rng.uniform(bounds.lo[i], bounds.hi[i]);
    return Configuration(std::span<const double>(c.data(), bounds.lo.dim()));
}

std::vector<double> random_direction(std::size_t dim, Rng& rng) {
    std::vector<double> v(dim);
    double norm = 0.0;
    while (norm < 1e-12) {
        norm = 0.0;
        for (auto& x : v) {
            x = rng.normal();
            norm += x * x;
        }
        norm = std::sqrt(norm);
    }
    for (auto& x : v)
        x /= norm;
    return v;
}

double radical_inverse(std::uint64_t index, std::uint32_t base) noexcept {
    double result = 0.0;
    double f = 1.0 / static_cast<double>(base);
    double scale = f;
    while (index > 0) {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= f;
    }
    return result;
}

HaltonSequence::HaltonSequence(StateBounds bounds, std::vector<std::uint32_t> bases)
    : bounds_(std::move(bounds)), bases_(std::move(bases)) {
    if (bases_.size() != bounds_.lo.dim())
        throw DomainError("one Halton base per dimension is required");
    for (auto b : bases_) {
        if (b < 2)
            throw DomainError("Halton bases must be >= 2");
    }
}

HaltonSequence HaltonSequence::for_bounds(const StateBounds& bounds) {
    static constexpr std::array<std::uint32_t, kMaxDim> primes{2, 3, 5, 7, 11, 13, 17};
    return HaltonSequence(bounds, std::vector<std::uint32_t>(primes.begin(), primes.begin() + bounds.lo.dim()));
}

Configuration HaltonSequence::next() {
    std::array<double, kMaxDim> c{};
    for (std::size_t i = 0; i < bases_.size(); ++i)
        c[i] = bounds_.lo[i] + (bounds_.hi[i] - bounds_.lo[i]) * radical_inverse(index_, bases_[i]);
    ++index_;
    return Configuration(std::span<const double>(c.data(), bases_.size()));
}

} // namespace csrrt
