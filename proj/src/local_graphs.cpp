#include "csrrt/errors.hpp"
#include "csrrt/planners.hpp"

#include <algorithm>
#include <numeric>

namespace csrrt {

VertexId LocalGraph::add(const Configuration& q, std::optional<VertexId> global) {
    const VertexId local = graph_.add_vertex(q);
    to_global_.push_back(std::nullopt);
    if (global)
        bind(local, *global);
    return local;
}

std::optional<VertexId> LocalGraph::local_of(VertexId global) const {
    const auto it = to_local_.find(index_of(global));
    if (it == to_local_.end())
        return std::nullopt;
    return it->second;
}

void LocalGraph::bind(VertexId local, VertexId global) {
    auto& slot = to_global_.at(index_of(local));
    if (slot)
        throw DomainError("local vertex is already bound");
    if (to_local_.contains(index_of(global)))
        throw DomainError("global vertex is already bound in this local graph");
    slot = global;
    to_local_.emplace(index_of(global), local);
}

LocalRegion::LocalRegion(const Configuration& source_, VertexId global_id)
    : source(source_), graph(source_.dim()), tree(source_) {
    tree_local.push_back(graph.add(source_, global_id));
}

std::vector<VertexId> LocalRegion::unconnected() const {
    std::vector<VertexId> out;
    const Roadmap& g = graph.graph();
    const VertexId root = tree_local.front();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.same_component(vertex_id(i), root))
            out.push_back(vertex_id(i));
    }
    return out;
}

namespace {

/// Clears the pending flag of every local vertex sharing node's component.
std::size_t drop_component(const Roadmap& lg, VertexId node, std::vector<char>& pending) {
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < pending.size(); ++i) {
        if (pending[i] && lg.same_component(vertex_id(i), node)) {
            pending[i] = 0;
            ++dropped;
        }
    }
    return dropped;
}

} // namespace

bool expand_local_graphs(Roadmap& g, std::span<LocalRegion> regions, double r, LocalSearchContext& ctx) {
    for (std::size_t i = 0; i < regions.size(); ++i) {
        LocalRegion& region = regions[i];
        LocalGraph& lg = region.graph;

        const auto nearby = g.vertices_within(region.source, r);
        ctx.budget.count_distances(g.size());
        std::vector<char> in_ball(g.size(), 0);
        for (VertexId v : nearby) {
            in_ball[index_of(v)] = 1;
            if (!lg.local_of(v))
                lg.add(g.vertex(v), v);
        }
        // Induced subgraph. Candidate edges get their deferred check here.
        for (VertexId u : nearby) {
            const std::vector<RoadmapEdge> edges(g.neighbors(u).begin(), g.neighbors(u).end());
            for (const RoadmapEdge& e : edges) {
                if (index_of(e.to) <= index_of(u) || !in_ball[index_of(e.to)])
                    continue;
                bool free = e.validated;
                if (!free) {
                    free = ctx.checker.edge_free(g.vertex(u), g.vertex(e.to));
                    if (free)
                        g.add_edge(u, e.to);
                    else
                        g.remove_unvalidated_edge(u, e.to);
                }
                if (free)
                    lg.graph().add_edge(*lg.local_of(u), *lg.local_of(e.to));
            }
        }

        const auto unconnected = region.unconnected();
        std::vector<char> pending(lg.graph().size(), 0);
        for (VertexId v : unconnected)
            pending[index_of(v)] = 1;

        region.tested.resize(lg.graph().size(), 0);
        std::vector<std::size_t> order;
        std::vector<double> dist(region.tree.size());
        for (VertexId node : unconnected) {
            if (!pending[index_of(node)])
                continue;
            if (ctx.budget.expired())
                return false;
            ++ctx.iterations;
            const Configuration& q = lg.graph().vertex(node);
            const std::size_t first = region.tested[index_of(node)];
            order.resize(region.tree.size() - first);
            dist.resize(region.tree.size());
            std::iota(order.begin(), order.end(), first);
            for (std::size_t k : order)
                dist[k] = squared_distance(region.tree.vertices()[k], q);
            ctx.budget.count_distances(order.size());
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
            region.tested[index_of(node)] = region.tree.size();
            for (std::size_t k : order) {
                if (ctx.checker.edge_free(q, region.tree.vertices()[k])) {
                    drop_component(lg.graph(), node, pending);
                    lg.graph().add_edge(node, region.tree_local[k]);
                    if (ctx.trace)
                        ctx.trace->record(ctx.round, "link", static_cast<std::int64_t>(i), q);
                    break;
                }
            }
        }
    }
    return true;
}

bool densify_local_graphs(std::span<LocalRegion> regions, double r, LocalSearchContext& ctx) {
    Rng rng(ctx.params.seed, "lcsrrt-densify", ctx.round);
    for (std::size_t i = 0; i < regions.size(); ++i) {
        LocalRegion& region = regions[i];
        if (region.graph.is_connected())
            continue;
        Roadmap& lg = region.graph.graph();
        const auto unconnected = region.unconnected();
        std::vector<char> pending(lg.size(), 0);
        for (VertexId v : unconnected)
            pending[index_of(v)] = 1;
        std::size_t remaining = unconnected.size();

        for (std::size_t step = 0; step < ctx.params.densify_iterations && remaining > 0; ++step) {
            VertexId nn{};
            Configuration q;
            while (true) {
                if (ctx.budget.expired())
                    return false;
                ++ctx.iterations;
                const Configuration rn = random_node_in_ball(region.source, r, ctx.bounds, rng);
                nn = nearest_vertex(region.tree, rn);
                ctx.budget.count_distances(region.tree.size());
                q = steer(region.tree.vertex(nn), rn, ctx.params.step_size);
                if (ctx.checker.config_free(q) && ctx.checker.edge_free(region.tree.vertex(nn), q))
                    break;
            }
            const std::size_t t = index_of(region.tree.add(q, nn));
            const VertexId local = region.graph.add(q);
            region.tested.resize(lg.size(), 0);
            lg.add_edge(region.tree_local[index_of(nn)], local);
            region.tree_local.push_back(local);
            pending.push_back(0);
            if (ctx.trace)
                ctx.trace->record(ctx.round, "grow", static_cast<std::int64_t>(i), q);

            for (VertexId n : unconnected) {
                if (!pending[index_of(n)])
                    continue;
                const bool linked = ctx.checker.edge_free(q, lg.vertex(n));
                if (region.tested[index_of(n)] == t)
                    region.tested[index_of(n)] = t + 1;
                if (linked) {
                    remaining -= drop_component(lg, n, pending);
                    lg.add_edge(local, n);
                    if (ctx.trace)
                        ctx.trace->record(ctx.round, "link", static_cast<std::int64_t>(i), lg.vertex(n));
                }
            }
        }
    }
    return true;
}

std::size_t merge_local_graphs(Roadmap& g, std::span<LocalRegion> regions) {
    std::size_t added = 0;
    for (LocalRegion& region : regions) {
        LocalGraph& lg = region.graph;
        for (std::size_t i = 0; i < lg.graph().size(); ++i) {
            if (!lg.global_of(vertex_id(i))) {
                lg.bind(vertex_id(i), g.add_vertex(lg.graph().vertex(vertex_id(i))));
                ++added;
            }
        }
        for (const auto& [u, v] : lg.graph().edge_list())
            g.add_edge(*lg.global_of(u), *lg.global_of(v));
    }
    return added;
}

} // namespace csrrt
