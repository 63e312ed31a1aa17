#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace csrrt {

inline constexpr std::size_t kMaxDim = 7;

/// A point in configuration space: a workspace point (d = 2) or joint angles (d = 7).
/// Stored inline; every component is finite.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::span<const double> coords);
    Configuration(std::initializer_list<double> coords);

    static Configuration zeros(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return coords_[i]; }
    [[nodiscard]] std::span<const double> coords() const noexcept { return {coords_.data(), dim_}; }

    /// Returns a copy with component `i` replaced.
    [[nodiscard]] Configuration with(std::size_t i, double value) const;

    friend bool operator==(const Configuration& a, const Configuration& b) noexcept;

private:
    std::array<double, kMaxDim> coords_{};
    std::size_t dim_ = 0;
};

/// Euclidean distance. Throws DomainError on dimension mismatch.
[[nodiscard]] double distance(const Configuration& a, const Configuration& b);
[[nodiscard]] double squared_distance(const Configuration& a, const Configuration& b);

/// Per-coordinate linear interpolation, t in [0, 1].
[[nodiscard]] Configuration lerp(const Configuration& a, const Configuration& b, double t);

} // namespace csrrt
