#include "csrrt/roadmap.hpp"

#include "csrrt/errors.hpp"
#include "csrrt/sampling.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace csrrt {

Roadmap::Roadmap(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim > kMaxDim)
        throw DomainError("roadmap dimension out of range");
}

void Roadmap::check_id(VertexId v) const {
    if (index_of(v) >= vertices_.size())
        throw DomainError("invalid vertex id " + std::to_string(index_of(v)));
}

VertexId Roadmap::add_vertex(const Configuration& q) {
    if (q.dim() != dim_)
        throw DomainError("vertex dimension does not match roadmap");
    vertices_.push_back(q);
    adjacency_.emplace_back();
    components_.resize(vertices_.size());
    return vertex_id(vertices_.size() - 1);
}

const Configuration& Roadmap::vertex(VertexId v) const {
    check_id(v);
    return vertices_[index_of(v)];
}

std::span<const RoadmapEdge> Roadmap::neighbors(VertexId v) const {
    check_id(v);
    return adjacency_[index_of(v)];
}

RoadmapEdge* Roadmap::find_edge(VertexId u, VertexId v) {
    auto& adj = adjacency_[index_of(u)];
    auto it = std::find_if(adj.begin(), adj.end(), [v](const RoadmapEdge& e) { return e.to == v; });
    return it == adj.end() ? nullptr : &*it;
}

bool Roadmap::has_edge(VertexId u, VertexId v) const {
    check_id(u);
    check_id(v);
    const auto& adj = adjacency_[index_of(u)];
    return std::any_of(adj.begin(), adj.end(), [v](const RoadmapEdge& e) { return e.to == v; });
}

bool Roadmap::is_validated(VertexId u, VertexId v) const {
    check_id(u);
    check_id(v);
    for (const auto& e : adjacency_[index_of(u)]) {
        if (e.to == v)
            return e.validated;
    }
    return false;
}

void Roadmap::add_edge(VertexId u, VertexId v) {
    check_id(u);
    check_id(v);
    if (u == v)
        throw DomainError("self-loop edges are not allowed");
    if (auto* e = find_edge(u, v)) {
        if (!e->validated) {
            e->validated = true;
            find_edge(v, u)->validated = true;
            --unvalidated_count_;
            components_.unite(index_of(u), index_of(v));
        }
        return;
    }
    adjacency_[index_of(u)].push_back({v, true});
    adjacency_[index_of(v)].push_back({u, true});
    ++edge_count_;
    components_.unite(index_of(u), index_of(v));
}

void Roadmap::add_unvalidated_edge(VertexId u, VertexId v) {
    check_id(u);
    check_id(v);
    if (u == v)
        throw DomainError("self-loop edges are not allowed");
    if (find_edge(u, v) != nullptr)
        return;
    adjacency_[index_of(u)].push_back({v, false});
    adjacency_[index_of(v)].push_back({u, false});
    ++edge_count_;
    ++unvalidated_count_;
}

void Roadmap::remove_unvalidated_edge(VertexId u, VertexId v) {
    check_id(u);
    check_id(v);
    const auto* e = find_edge(u, v);
    if (e == nullptr)
        return;
    if (e->validated)
        throw DomainError("validated edges cannot be removed");
    auto drop = [](std::vector<RoadmapEdge>& adj, VertexId to) {
        adj.erase(std::find_if(adj.begin(), adj.end(), [to](const RoadmapEdge& x) { return x.to == to; }));
    };
    drop(adjacency_[index_of(u)], v);
    drop(adjacency_[index_of(v)], u);
    --edge_count_;
    --unvalidated_count_;
}

bool Roadmap::same_component(VertexId u, VertexId v) const {
    check_id(u);
    check_id(v);
    return components_.same(index_of(u), index_of(v));
}

VertexId Roadmap::component_root(VertexId v) const {
    check_id(v);
    return vertex_id(components_.find(index_of(v)));
}

std::vector<VertexId> Roadmap::connected_component(VertexId v) const {
    check_id(v);
    std::vector<bool> seen(vertices_.size(), false);
    std::vector<VertexId> out{v};
    seen[index_of(v)] = true;
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const auto& e : adjacency_[index_of(out[head])]) {
            if (e.validated && !seen[index_of(e.to)]) {
                seen[index_of(e.to)] = true;
                out.push_back(e.to);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> Roadmap::vertices_within(const Configuration& center, double r) const {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (distance(vertices_[i], center) < r)
            out.push_back(vertex_id(i));
    }
    return out;
}

std::optional<VertexId> Roadmap::nearest(const Configuration& q) const {
    std::optional<VertexId> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const double d = squared_distance(vertices_[i], q);
        if (d < best_d) {
            best_d = d;
            best = vertex_id(i);
        }
    }
    return best;
}

std::vector<std::pair<VertexId, VertexId>> Roadmap::edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
        for (const auto& e : adjacency_[u]) {
            if (index_of(e.to) > u)
                out.emplace_back(vertex_id(u), e.to);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::optional<std::vector<VertexId>> dijkstra(const Roadmap& g, VertexId start, VertexId goal, bool include_candidates) {
    const std::size_t n = g.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<std::uint32_t> parent(n, std::numeric_limits<std::uint32_t>::max());
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist[index_of(start)] = 0.0;
    open.emplace(0.0, index_of(start));
    while (!open.empty()) {
        const auto [d, u] = open.top();
        open.pop();
        if (d > dist[u])
            continue;
        if (u == index_of(goal))
            break;
        for (const auto& e : g.neighbors(vertex_id(u))) {
            if (!e.validated && !include_candidates)
                continue;
            const std::uint32_t v = index_of(e.to);
            const double nd = d + distance(g.vertices()[u], g.vertices()[v]);
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = u;
                open.emplace(nd, v);
            }
        }
    }
    if (!std::isfinite(dist[index_of(goal)]))
        return std::nullopt;
    std::vector<VertexId> path;
    for (std::uint32_t v = index_of(goal); v != index_of(start); v = parent[v])
        path.push_back(vertex_id(v));
    path.push_back(start);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::optional<std::vector<VertexId>> find_vertex_path(const Roadmap& g, VertexId start, VertexId goal) {
    g.check_id(start);
    g.check_id(goal);
    if (!g.same_component(start, goal))
        return std::nullopt;
    return dijkstra(g, start, goal, false);
}

std::optional<std::vector<VertexId>> find_vertex_path_lazy(Roadmap& g, VertexId start, VertexId goal,
                                                           CollisionChecker& checker) {
    g.check_id(start);
    g.check_id(goal);
    if (g.unvalidated_edge_count() == 0)
        return find_vertex_path(g, start, goal);
    while (true) {
        auto path = dijkstra(g, start, goal, true);
        if (!path)
            return std::nullopt;
        bool all_valid = true;
        for (std::size_t i = 1; i < path->size(); ++i) {
            const VertexId u = (*path)[i - 1];
            const VertexId v = (*path)[i];
            if (g.is_validated(u, v))
                continue;
            if (checker.edge_free(g.vertex(u), g.vertex(v))) {
                g.add_edge(u, v);
            } else {
                g.remove_unvalidated_edge(u, v);
                all_valid = false;
                break;
            }
        }
        if (all_valid)
            return path;
    }
}

Path to_path(const Roadmap& g, const std::vector<VertexId>& vertices) {
    std::vector<Configuration> waypoints;
    waypoints.reserve(std::max<std::size_t>(vertices.size(), 2));
    for (VertexId v : vertices)
        waypoints.push_back(g.vertex(v));
    if (waypoints.size() == 1)
        waypoints.push_back(waypoints.front());
    return Path(std::move(waypoints));
}

std::optional<Path> find_path(const Roadmap& g, VertexId start, VertexId goal) {
    auto vertices = find_vertex_path(g, start, goal);
    if (!vertices)
        return std::nullopt;
    return to_path(g, *vertices);
}

void connect_within(Roadmap& g, VertexId v, double radius, bool lazy, CollisionChecker& checker) {
    const Configuration q = g.vertex(v);
    for (VertexId u : g.vertices_within(q, radius)) {
        if (u == v || g.has_edge(u, v))
            continue;
        if (lazy)
            g.add_unvalidated_edge(u, v);
        else if (checker.edge_free(g.vertex(u), q))
            g.add_edge(u, v);
    }
}

Roadmap build_sparse_graph(const Environment& env, const Robot& robot, const SparseGraphOptions& options,
                           CollisionChecker& checker) {
    if (options.n < 2)
        throw DomainError("a sparse graph needs at least two vertices");
    if (!(options.connect_radius > 0.0))
        throw DomainError("connect radius must be positive");
    const StateBounds bounds = state_bounds(env, robot);
    Roadmap g(robot_dim(robot));
    HaltonSequence halton = HaltonSequence::for_bounds(bounds);
    Rng rng(options.seed, "sparse-graph");
    const std::size_t max_draws = 100 * options.n;
    std::size_t draws = 0;
    while (g.size() < options.n) {
        if (draws++ >= max_draws)
            throw ClutteredError("could not find " + std::to_string(options.n) + " free vertices in " +
                                 std::to_string(max_draws) + " draws");
        const Configuration q = options.sequence == SequenceKind::halton ? halton.next() : uniform_in(bounds, rng);
        if (checker.config_free(q))
            g.add_vertex(q);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const auto& a = g.vertices()[i];
            const auto& b = g.vertices()[j];
            if (distance(a, b) >= options.connect_radius)
                continue;
            if (options.lazy_edges)
                g.add_unvalidated_edge(vertex_id(i), vertex_id(j));
            else if (checker.edge_free(a, b))
                g.add_edge(vertex_id(i), vertex_id(j));
        }
    }
    return g;
}

std::string roadmap_to_json(const Roadmap& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const auto& q : g.vertices())
        j["vertices"].push_back(std::vector<double>(q.coords().begin(), q.coords().end()));
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : g.edge_list())
        j["edges"].push_back({index_of(u), index_of(v)});
    return j.dump();
}

} // namespace csrrt
