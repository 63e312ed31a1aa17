#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace csrrt {

/// Union by size. `find` does no path compression so concurrent readers are safe;
/// union by size keeps trees O(log n) deep.
class DisjointSet {
public:
    DisjointSet() = default;
    explicit DisjointSet(std::size_t n) { resize(n); }

    void resize(std::size_t n) {
        const std::size_t old = parent_.size();
        parent_.resize(n);
        size_.resize(n, 1);
        for (std::size_t i = old; i < n; ++i)
            parent_[i] = static_cast<std::uint32_t>(i);
        components_ += n - old;
    }

    [[nodiscard]] std::uint32_t find(std::uint32_t x) const {
        while (parent_[x] != x)
            x = parent_[x];
        return x;
    }

    /// Returns false if already joined.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        return true;
    }

    [[nodiscard]] bool same(std::uint32_t a, std::uint32_t b) const { return find(a) == find(b); }
    [[nodiscard]] std::size_t size() const noexcept { return parent_.size(); }
    [[nodiscard]] std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t components_ = 0;
};

} // namespace csrrt
