#pragma once

#include "csrrt/configuration.hpp"
#include "csrrt/geometry.hpp"
#include "csrrt/occupancy_grid.hpp"
#include "csrrt/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

// Brute-force reference implementations. None of them call into the library
// beyond reading plain data.
namespace oracle {

using csrrt::Rect;
using csrrt::Vec2;

/// Closed segment vs closed rectangle by separating axes: the two rectangle
/// normals plus the segment normal.
inline bool segment_hits_rect(Vec2 a, Vec2 b, const Rect& r) {
    if (std::max(a.x, b.x) < r.lo.x || std::min(a.x, b.x) > r.hi.x)
        return false;
    if (std::max(a.y, b.y) < r.lo.y || std::min(a.y, b.y) > r.hi.y)
        return false;
    const double nx = -(b.y - a.y);
    const double ny = b.x - a.x;
    const double s = nx * a.x + ny * a.y;
    const Vec2 corners[4] = {r.lo, {r.hi.x, r.lo.y}, r.hi, {r.lo.x, r.hi.y}};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec2& c : corners) {
        const double p = nx * c.x + ny * c.y;
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return lo <= s && s <= hi;
}

inline bool segment_free(const csrrt::Environment& env, Vec2 a, Vec2 b) {
    if (!env.bounds().contains(a) || !env.bounds().contains(b))
        return false;
    for (const Rect& o : env.obstacles()) {
        if (segment_hits_rect(a, b, o))
            return false;
    }
    return true;
}

inline double dist(const csrrt::Configuration& a, const csrrt::Configuration& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

/// Component label per vertex (smallest reachable index) over an edge list.
inline std::vector<std::size_t> bfs_components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<std::size_t> label(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != n)
            continue;
        std::queue<std::size_t> q;
        q.push(s);
        label[s] = s;
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t v : adj[u]) {
                if (label[v] == n) {
                    label[v] = s;
                    q.push(v);
                }
            }
        }
    }
    return label;
}

inline std::size_t count_components(const std::vector<std::size_t>& label) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < label.size(); ++i)
        c += label[i] == i;
    return c;
}

/// All-pairs shortest distances; infinity where unreachable.
inline std::vector<std::vector<double>> floyd_warshall(std::size_t n, const std::vector<std::vector<double>>& w) {
    std::vector<std::vector<double>> d = w;
    for (std::size_t i = 0; i < n; ++i)
        d[i][i] = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j])
                    d[i][j] = d[i][k] + d[k][j];
    return d;
}

/// Per-window maximum over a row-major 0/1 array.
inline std::vector<std::uint8_t> window_max(const std::vector<std::uint8_t>& cells, std::size_t w, std::size_t h,
                                            std::size_t k) {
    std::vector<std::uint8_t> out((w / k) * (h / k), 0);
    for (std::size_t r = 0; r < h / k; ++r)
        for (std::size_t c = 0; c < w / k; ++c) {
            std::uint8_t m = 0;
            for (std::size_t i = r * k; i < r * k + k; ++i)
                for (std::size_t j = c * k; j < c * k + k; ++j)
                    m = std::max(m, cells[i * w + j]);
            out[r * (w / k) + c] = m;
        }
    return out;
}

/// Free-edge ratio of a point sample against a roadmap, recomputed with the
/// separating-axis segment test.
struct Ratio {
    std::size_t free = 0;
    std::size_t total = 0;
};

inline Ratio point_ratio(const csrrt::Environment& env, const csrrt::Configuration& s, const csrrt::Roadmap& g,
                         double radius) {
    Ratio r;
    for (const auto& v : g.vertices()) {
        const double d = dist(s, v);
        if (d >= radius || d == 0.0)
            continue;
        ++r.total;
        r.free += segment_free(env, {s[0], s[1]}, {v[0], v[1]});
    }
    return r;
}

} // namespace oracle
