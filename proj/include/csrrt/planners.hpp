#pragma once

#include "csrrt/configuration.hpp"
#include "csrrt/critical_sources.hpp"
#include "csrrt/geometry.hpp"
#include "csrrt/roadmap.hpp"
#include "csrrt/sampling.hpp"

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace csrrt {

/// `wall` measures real time. `work` charges a fixed cost per collision
/// check and per distance evaluation, so budgets and reported times are
/// reproducible bit for bit.
enum class ClockMode { wall, work };

struct WorkCosts {
    double check_s = 2e-6;
    double distance_s = 2e-8;
};

struct PlannerParams {
    double step_size = 0.5;
    double r_init = 4.5;           ///< initial local-graph radius (LCS-RRT)
    double radius_growth = 1.5;    ///< factor applied to the radius after a failed search (> 1)
    std::size_t densify_iterations = 100;  ///< tree-growth budget per local graph per round (>= 1)
    double timeout_s = 5.0;
    std::uint64_t seed = 0;
    double edge_resolution = 0.05;
    double connect_radius = 1.0;   ///< r-disk radius for anytime LEGO densification
    std::size_t lego_batch = 50;   ///< uniform samples added per LEGO densification round
    ClockMode clock = ClockMode::wall;
    WorkCosts work_costs;

    void validate() const;
};

struct PlannerResult {
    std::optional<Path> path;
    bool solved = false;
    double elapsed_s = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t collision_checks = 0;
    std::uint64_t vertices_added = 0;
};

/// Timeout bookkeeping for one planner invocation. Checked at iteration
/// boundaries only.
class Budget {
public:
    Budget(double timeout_s, ClockMode mode, WorkCosts costs, const CollisionChecker& checker);

    [[nodiscard]] double elapsed() const;
    [[nodiscard]] bool expired() const { return elapsed() >= timeout_; }
    void count_distances(std::size_t n) noexcept { distances_ += n; }

private:
    double timeout_;
    ClockMode mode_;
    WorkCosts costs_;
    const CollisionChecker* checker_;
    std::uint64_t distances_ = 0;
    std::chrono::steady_clock::time_point start_;
};

/// Optional per-run event log, written as `iter,event,component,vertex_coords`.
struct TraceEvent {
    std::uint64_t iteration;
    std::string event;
    std::int64_t component;
    Configuration q;
};

class Trace {
public:
    void record(std::uint64_t iteration, std::string event, std::int64_t component, const Configuration& q) {
        events_.push_back({iteration, std::move(event), component, q});
    }
    [[nodiscard]] const std::vector<TraceEvent>& events() const noexcept { return events_; }
    void write(std::ostream& out) const;
    /// Parses the format produced by write(). Throws FormatError.
    [[nodiscard]] static Trace read(std::istream& in);

private:
    std::vector<TraceEvent> events_;
};

/// Rooted tree with parent links. Vertex ids are dense indices in insertion order.
class Tree {
public:
    Tree() = default;
    explicit Tree(const Configuration& root) { add_root(root); }

    VertexId add_root(const Configuration& q);
    VertexId add(const Configuration& q, VertexId parent);

    [[nodiscard]] bool empty() const noexcept { return vertices_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] VertexId root() const;
    [[nodiscard]] const Configuration& vertex(VertexId v) const;
    [[nodiscard]] std::optional<VertexId> parent(VertexId v) const;
    [[nodiscard]] const std::vector<Configuration>& vertices() const noexcept { return vertices_; }

    /// v, parent(v), ..., root.
    [[nodiscard]] std::vector<VertexId> path_to_root(VertexId v) const;
    /// Every vertex reaches the root through strictly older parents.
    [[nodiscard]] bool is_consistent() const;

private:
    std::vector<Configuration> vertices_;
    std::vector<std::uint32_t> parents_;
};

/// Closest tree vertex, lowest id on ties. Throws DomainError on an empty tree.
[[nodiscard]] VertexId nearest_vertex(const Tree& tree, const Configuration& q);

/// `toward` itself when within step_size of `from`, otherwise the point at
/// distance step_size along the segment.
[[nodiscard]] Configuration steer(const Configuration& from, const Configuration& toward, double step_size);

/// Uniform over the open ball of radius r intersected with the bounds
/// (rejection from the ball's bounding box).
[[nodiscard]] Configuration random_node_in_ball(const Configuration& center, double r, const StateBounds& bounds,
                                                Rng& rng);

/// Roadmap vertices with an optional link to a parent graph's ids.
class LocalGraph {
public:
    explicit LocalGraph(std::size_t dim) : graph_(dim) {}

    VertexId add(const Configuration& q, std::optional<VertexId> global = std::nullopt);
    [[nodiscard]] std::optional<VertexId> local_of(VertexId global) const;
    [[nodiscard]] std::optional<VertexId> global_of(VertexId local) const { return to_global_.at(index_of(local)); }
    void bind(VertexId local, VertexId global);

    [[nodiscard]] Roadmap& graph() noexcept { return graph_; }
    [[nodiscard]] const Roadmap& graph() const noexcept { return graph_; }
    [[nodiscard]] bool is_connected() const noexcept { return graph_.component_count() <= 1; }

private:
    Roadmap graph_;
    std::vector<std::optional<VertexId>> to_global_;
    std::unordered_map<std::uint32_t, VertexId> to_local_;
};

/// One critical source with its tree and local graph. Tree vertex k lives
/// at local id tree_local[k].
struct LocalRegion {
    Configuration source;
    LocalGraph graph;
    Tree tree;
    std::vector<VertexId> tree_local;
    /// Per local vertex: how many leading tree vertices are known not to
    /// connect to it. Obstacles are static, so those pairs are never retried.
    std::vector<std::size_t> tested;

    /// Region rooted at a vertex already present in the global graph.
    LocalRegion(const Configuration& source, VertexId global_id);

    /// Local ids outside the component of the tree root, ascending.
    [[nodiscard]] std::vector<VertexId> unconnected() const;
};

struct LocalSearchContext {
    CollisionChecker& checker;
    Budget& budget;
    const StateBounds& bounds;
    const PlannerParams& params;
    Trace* trace = nullptr;
    std::uint64_t round = 0;
    std::uint64_t iterations = 0;
};

/// Absorbs the subgraph of g within radius r of each source, then links
/// unconnected local components to the source tree where a free edge exists.
/// Returns false if the budget ran out.
bool expand_local_graphs(Roadmap& g, std::span<LocalRegion> regions, double r, LocalSearchContext& ctx);

/// Grows each disconnected region's tree inside the radius-r ball for up to
/// densify_iterations steps, linking new tree vertices to unconnected local
/// components. Returns false if the budget ran out.
bool densify_local_graphs(std::span<LocalRegion> regions, double r, LocalSearchContext& ctx);

/// Copies every local vertex and edge into g, binding new vertices to g ids.
/// Returns the number of vertices added to g.
std::size_t merge_local_graphs(Roadmap& g, std::span<LocalRegion> regions);

/// Critical Source RRT: round-robin RRT growth from start, goal and every source.
[[nodiscard]] PlannerResult csrrt_plan(const PlanningProblem& problem, const CriticalSourceSet& sources,
                                       const PlannerParams& params, Trace* trace = nullptr);

/// Local Critical Source RRT over the sparse graph, with a growing local radius.
[[nodiscard]] PlannerResult lcsrrt_plan(const PlanningProblem& problem, const Roadmap& sparse_graph,
                                        const CriticalSourceSet& sources, const PlannerParams& params,
                                        Trace* trace = nullptr);

[[nodiscard]] PlannerResult rrt_connect_plan(const PlanningProblem& problem, const PlannerParams& params,
                                             Trace* trace = nullptr);

/// Sparse graph plus proposals, then uniform batches until a path appears.
[[nodiscard]] PlannerResult lego_anytime_plan(const PlanningProblem& problem, const Roadmap& sparse_graph,
                                              const ProposalSet& proposals, const PlannerParams& params,
                                              Trace* trace = nullptr);

} // namespace csrrt
