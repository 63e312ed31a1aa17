#pragma once

#include "csrrt/configuration.hpp"
#include "csrrt/disjoint_set.hpp"
#include "csrrt/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csrrt {

/// Handle into one Roadmap (or Tree) instance.
enum class VertexId : std::uint32_t {};

[[nodiscard]] constexpr std::uint32_t index_of(VertexId v) noexcept { return static_cast<std::uint32_t>(v); }
[[nodiscard]] constexpr VertexId vertex_id(std::size_t i) noexcept { return static_cast<VertexId>(i); }

struct RoadmapEdge {
    VertexId to;
    bool validated;
};

/// Undirected graph over configurations. Edges are either validated
/// (collision-free, counted for connectivity) or candidates awaiting a lazy
/// check. The component index tracks validated edges only.
class Roadmap {
public:
    explicit Roadmap(std::size_t dim);

    VertexId add_vertex(const Configuration& q);

    /// Adds (or promotes to) a validated edge. Duplicate edges are a no-op.
    void add_edge(VertexId u, VertexId v);
    /// Adds a candidate edge unless the pair is already linked.
    void add_unvalidated_edge(VertexId u, VertexId v);
    /// Drops a candidate edge; validated edges cannot be removed.
    void remove_unvalidated_edge(VertexId u, VertexId v);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
    [[nodiscard]] std::size_t unvalidated_edge_count() const noexcept { return unvalidated_count_; }
    [[nodiscard]] const Configuration& vertex(VertexId v) const;
    [[nodiscard]] const std::vector<Configuration>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::span<const RoadmapEdge> neighbors(VertexId v) const;
    [[nodiscard]] bool has_edge(VertexId u, VertexId v) const;
    [[nodiscard]] bool is_validated(VertexId u, VertexId v) const;

    [[nodiscard]] bool same_component(VertexId u, VertexId v) const;
    [[nodiscard]] VertexId component_root(VertexId v) const;
    [[nodiscard]] std::size_t component_count() const noexcept { return components_.components(); }

    /// Vertices reachable from v over validated edges, ascending.
    [[nodiscard]] std::vector<VertexId> connected_component(VertexId v) const;
    /// Vertices strictly closer than r to center, ascending.
    [[nodiscard]] std::vector<VertexId> vertices_within(const Configuration& center, double r) const;
    /// Closest vertex, lowest id on ties.
    [[nodiscard]] std::optional<VertexId> nearest(const Configuration& q) const;

    /// Each undirected edge once as (u, v) with u < v.
    [[nodiscard]] std::vector<std::pair<VertexId, VertexId>> edge_list() const;

    void check_id(VertexId v) const;

private:
    RoadmapEdge* find_edge(VertexId u, VertexId v);

    std::size_t dim_;
    std::vector<Configuration> vertices_;
    std::vector<std::vector<RoadmapEdge>> adjacency_;
    DisjointSet components_;
    std::size_t edge_count_ = 0;
    std::size_t unvalidated_count_ = 0;
};

/// Shortest path by configuration-space length over validated edges.
[[nodiscard]] std::optional<std::vector<VertexId>> find_vertex_path(const Roadmap& g, VertexId start, VertexId goal);

/// Lazy variant: searches over all edges, checks candidate edges on the best
/// path and removes the ones in collision, repeating until a fully validated
/// path is found or none exists.
[[nodiscard]] std::optional<std::vector<VertexId>> find_vertex_path_lazy(Roadmap& g, VertexId start, VertexId goal,
                                                                         CollisionChecker& checker);

/// Path of configurations along a vertex path. A single-vertex path is
/// returned as the zero-length two-waypoint path [v, v].
[[nodiscard]] Path to_path(const Roadmap& g, const std::vector<VertexId>& vertices);
[[nodiscard]] std::optional<Path> find_path(const Roadmap& g, VertexId start, VertexId goal);

enum class SequenceKind { halton, uniform };

struct SparseGraphOptions {
    std::size_t n = 150;
    double connect_radius = 1.0;
    SequenceKind sequence = SequenceKind::halton;
    std::uint64_t seed = 0;
    /// Candidate edges are recorded unchecked and validated during search.
    bool lazy_edges = false;
};

/// n collision-free vertices from the sequence, edges between every pair
/// closer than connect_radius. Throws ClutteredError if 100 n draws do not
/// yield n free vertices.
[[nodiscard]] Roadmap build_sparse_graph(const Environment& env, const Robot& robot, const SparseGraphOptions& options,
                                         CollisionChecker& checker);

/// Connect vertex v to every other vertex closer than radius (eagerly checked or as candidates).
void connect_within(Roadmap& g, VertexId v, double radius, bool lazy, CollisionChecker& checker);

/// Debug dump: {"vertices": [[...]], "edges": [[u, v]]}.
[[nodiscard]] std::string roadmap_to_json(const Roadmap& g);

} // namespace csrrt
