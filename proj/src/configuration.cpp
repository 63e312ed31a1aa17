#include "csrrt/configuration.hpp"

#include "csrrt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csrrt {

namespace {

void require_finite(std::span<const double> coords) {
    for (double c : coords) {
        if (!std::isfinite(c))
            throw DomainError("configuration component is not finite");
    }
}

void require_same_dim(const Configuration& a, const Configuration& b) {
    if (a.dim() != b.dim())
        throw DomainError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

} // namespace

Configuration::Configuration(std::span<const double> coords) : dim_(coords.size()) {
    if (coords.empty() || coords.size() > kMaxDim)
        throw DomainError("configuration dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    require_finite(coords);
    std::copy(coords.begin(), coords.end(), coords_.begin());
}

Configuration::Configuration(std::initializer_list<double> coords)
    : Configuration(std::span<const double>(coords.begin(), coords.size())) {}

Configuration Configuration::zeros(std::size_t dim) {
    std::array<double, kMaxDim> z{};
    return Configuration(std::span<const double>(z.data(), dim));
}

Configuration Configuration::with(std::size_t i, double value) const {
    if (i >= dim_)
        throw DomainError("component index out of range");
    if (!std::isfinite(value))
        throw DomainError("configuration component is not finite");
    Configuration out = *this;
    out.coords_[i] = value;
    return out;
}

bool operator==(const Configuration& a, const Configuration& b) noexcept {
    if (a.dim_ != b.dim_)
        return false;
    for (std::size_t i = 0; i < a.dim_; ++i) {
        if (a.coords_[i] != b.coords_[i])
            return false;
    }
    return true;
}

double squared_distance(const Configuration& a, const Configuration& b) {
    require_same_dim(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

double distance(const Configuration& a, const Configuration& b) { return std::sqrt(squared_distance(a, b)); }

Configuration lerp(const Configuration& a, const Configuration& b, double t) {
    require_same_dim(a, b);
    std::array<double, kMaxDim> out{};
    for (std::size_t i = 0; i < a.dim(); ++i)
        out[i] = a[i] + t * (b[i] - a[i]);
    return Configuration(std::span<const double>(out.data(), a.dim()));
}

} // namespace csrrt
