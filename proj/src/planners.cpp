#include "csrrt/errors.hpp"
#include "csrrt/planners.hpp"

#include <algorithm>
#include <limits>

namespace csrrt {

namespace {

struct Run {
    CollisionChecker checker;
    Budget budget;
    StateBounds bounds;
    PlannerResult result;

    Run(const PlanningProblem& problem, const PlannerParams& params)
        : checker(problem.environment(), problem.robot(), params.edge_resolution),
          budget(params.timeout_s, params.clock, params.work_costs, checker), bounds(problem.bounds()) {
        params.validate();
    }

    PlannerResult finish(std::optional<Path> path) {
        result.solved = path.has_value();
        result.path = std::move(path);
        result.elapsed_s = budget.elapsed();
        result.collision_checks = checker.checks();
        return std::move(result);
    }
};

/// Component bookkeeping for CS-RRT: each component is labelled by its
/// lowest vertex id, so merged components collapse to the lower index.
class Components {
public:
    void add(VertexId v, std::uint32_t label) {
        if (label_.size() <= index_of(v))
            label_.resize(index_of(v) + 1);
        label_[index_of(v)] = label;
        if (members_.size() <= label)
            members_.resize(label + 1);
        members_[label].push_back(v);
    }

    [[nodiscard]] std::uint32_t label(VertexId v) const { return label_[index_of(v)]; }
    [[nodiscard]] const std::vector<VertexId>& members(std::uint32_t label) const { return members_[label]; }

    [[nodiscard]] std::vector<std::uint32_t> live() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t l = 0; l < members_.size(); ++l) {
            if (!members_[l].empty())
                out.push_back(l);
        }
        return out;
    }

    std::uint32_t merge(std::uint32_t a, std::uint32_t b) {
        const std::uint32_t keep = std::min(a, b);
        const std::uint32_t gone = std::max(a, b);
        for (VertexId v : members_[gone])
            label_[index_of(v)] = keep;
        auto& dst = members_[keep];
        dst.insert(dst.end(), members_[gone].begin(), members_[gone].end());
        members_[gone].clear();
        return keep;
    }

private:
    std::vector<std::uint32_t> label_;
    std::vector<std::vector<VertexId>> members_;
};

VertexId nearest_among(const Roadmap& g, const std::vector<VertexId>& candidates, const Configuration& q,
                       Budget& budget) {
    VertexId best = candidates.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (VertexId v : candidates) {
        const double d = squared_distance(g.vertex(v), q);
        if (d < best_d || (d == best_d && v < best)) {
            best_d = d;
            best = v;
        }
    }
    budget.count_distances(candidates.size());
    return best;
}

} // namespace

PlannerResult csrrt_plan(const PlanningProblem& problem, const CriticalSourceSet& sources, const PlannerParams& params,
                         Trace* trace) {
    Run run(problem, params);
    Roadmap g(problem.dim());
    Components comps;
    auto add_root = [&](const Configuration& q) {
        const VertexId v = g.add_vertex(q);
        comps.add(v, index_of(v));
        return v;
    };
    const VertexId start = add_root(problem.start());
    const VertexId goal = add_root(problem.goal());
    for (const Configuration& s : sources.sources)
        add_root(s);

    // Roots already within a step of each other merge before any growth.
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const VertexId u = vertex_id(i), v = vertex_id(j);
            run.budget.count_distances(1);
            if (comps.label(u) == comps.label(v) || distance(g.vertex(u), g.vertex(v)) >= params.step_size ||
                !run.checker.edge_free(g.vertex(u), g.vertex(v)))
                continue;
            g.add_edge(u, v);
            comps.merge(comps.label(u), comps.label(v));
        }
    }
    if (g.same_component(start, goal))
        return run.finish(find_path(g, start, goal));

    for (std::uint64_t round = 0;; ++round) {
        Rng rng(params.seed, "csrrt", round);
        const auto order = comps.live();
        if (trace)
            trace->record(round, "round", static_cast<std::int64_t>(order.size()), problem.start());
        for (std::uint32_t label : order) {
            if (comps.members(label).empty())
                continue;
            VertexId nn{};
            Configuration q;
            while (true) {
                if (run.budget.expired())
                    return run.finish(std::nullopt);
                ++run.result.iterations;
                const Configuration rn = uniform_in(run.bounds, rng);
                nn = nearest_among(g, comps.members(label), rn, run.budget);
                q = steer(g.vertex(nn), rn, params.step_size);
                if (run.checker.config_free(q) && run.checker.edge_free(g.vertex(nn), q))
                    break;
            }
            const VertexId added = g.add_vertex(q);
            g.add_edge(nn, added);
            comps.add(added, label);
            ++run.result.vertices_added;
            if (trace)
                trace->record(round, "extend", label, q);

            std::uint32_t current = label;
            for (std::uint32_t other : comps.live()) {
                if (other == current)
                    continue;
                const VertexId onn = nearest_among(g, comps.members(other), q, run.budget);
                if (distance(g.vertex(onn), q) < params.step_size && run.checker.edge_free(g.vertex(onn), q)) {
                    g.add_edge(added, onn);
                    current = comps.merge(current, other);
                    if (trace)
                        trace->record(round, "merge", current, g.vertex(onn));
                    if (g.same_component(start, goal))
                        return run.finish(find_path(g, start, goal));
                }
            }
        }
    }
}

PlannerResult lcsrrt_plan(const PlanningProblem& problem, const Roadmap& sparse_graph, const CriticalSourceSet& sources,
                          const PlannerParams& params, Trace* trace) {
    Run run(problem, params);
    if (sparse_graph.dim() != problem.dim())
        throw DomainError("sparse graph dimension does not match the problem");
    Roadmap g = sparse_graph;
    std::vector<LocalRegion> regions;
    regions.reserve(sources.sources.size() + 2);
    for (const Configuration& s : sources.sources)
        regions.emplace_back(s, g.add_vertex(s));
    const VertexId start = g.add_vertex(problem.start());
    regions.emplace_back(problem.start(), start);
    const VertexId goal = g.add_vertex(problem.goal());
    regions.emplace_back(problem.goal(), goal);
    run.result.vertices_added = regions.size();

    LocalSearchContext ctx{run.checker, run.budget, run.bounds, params, trace};
    double r = params.r_init;
    for (std::uint64_t round = 0;; ++round) {
        if (run.budget.expired())
            break;
        ctx.round = round;
        if (trace)
            trace->record(round, "radius", -1, Configuration{r});
        const bool in_time = expand_local_graphs(g, regions, r, ctx) && densify_local_graphs(regions, r, ctx);
        run.result.iterations = ctx.iterations;
        if (!in_time)
            break;
        run.result.vertices_added += merge_local_graphs(g, regions);
        if (auto path = find_vertex_path_lazy(g, start, goal, run.checker))
            return run.finish(to_path(g, *path));
        r *= params.radius_growth;
    }
    return run.finish(std::nullopt);
}

PlannerResult rrt_connect_plan(const PlanningProblem& problem, const PlannerParams& params, Trace* trace) {
    Run run(problem, params);
    Tree trees[2] = {Tree(problem.start()), Tree(problem.goal())};
    int grow = 0;  // index of the tree extended this iteration

    auto join = [&](VertexId a_vertex, VertexId b_vertex) {
        const Tree& a = trees[grow];
        const Tree& b = trees[1 - grow];
        std::vector<Configuration> first;
        for (VertexId v : a.path_to_root(a_vertex))
            first.push_back(a.vertex(v));
        std::reverse(first.begin(), first.end());
        // b_vertex duplicates a_vertex's configuration.
        const auto tail = b.path_to_root(b_vertex);
        for (std::size_t i = 1; i < tail.size(); ++i)
            first.push_back(b.vertex(tail[i]));
        if (grow == 1)
            std::reverse(first.begin(), first.end());
        return Path(std::move(first));
    };

    if (problem.start() == problem.goal())
        return run.finish(Path({problem.start(), problem.goal()}));
    run.budget.count_distances(1);
    if (distance(problem.start(), problem.goal()) <= params.step_size &&
        run.checker.edge_free(problem.start(), problem.goal()))
        return run.finish(Path({problem.start(), problem.goal()}));

    for (std::uint64_t iter = 0;; ++iter) {
        if (run.budget.expired())
            return run.finish(std::nullopt);
        ++run.result.iterations;
        Rng rng(params.seed, "rrtconnect", iter);
        const Configuration rn = uniform_in(run.bounds, rng);

        Tree& a = trees[grow];
        const VertexId nn = nearest_vertex(a, rn);
        run.budget.count_distances(a.size());
        const Configuration q = steer(a.vertex(nn), rn, params.step_size);
        if (run.checker.config_free(q) && run.checker.edge_free(a.vertex(nn), q)) {
            const VertexId qa = a.add(q, nn);
            ++run.result.vertices_added;
            if (trace)
                trace->record(iter, "extend", grow, q);

            Tree& b = trees[1 - grow];
            VertexId last = nearest_vertex(b, q);
            run.budget.count_distances(b.size());
            while (true) {
                const Configuration next = steer(b.vertex(last), q, params.step_size);
                if (!run.checker.config_free(next) || !run.checker.edge_free(b.vertex(last), next))
                    break;
                last = b.add(next, last);
                ++run.result.vertices_added;
                if (trace)
                    trace->record(iter, "connect", 1 - grow, next);
                if (next == q)
                    return run.finish(join(qa, last));
                if (run.budget.expired())
                    return run.finish(std::nullopt);
            }
        }
        grow = 1 - grow;
    }
}

PlannerResult lego_anytime_plan(const PlanningProblem& problem, const Roadmap& sparse_graph,
                                const ProposalSet& proposals, const PlannerParams& params, Trace* trace) {
    Run run(problem, params);
    if (sparse_graph.dim() != problem.dim() || proposals.dim != problem.dim())
        throw DomainError("sparse graph or proposal dimension does not match the problem");
    Roadmap g = sparse_graph;
    auto insert = [&](const Configuration& q) {
        const VertexId v = g.add_vertex(q);
        connect_within(g, v, params.connect_radius, false, run.checker);
        run.budget.count_distances(g.size());
        ++run.result.vertices_added;
        return v;
    };
    const VertexId start = insert(problem.start());
    const VertexId goal = insert(problem.goal());
    for (const Configuration& q : proposals.samples) {
        if (run.budget.expired())
            return run.finish(std::nullopt);
        if (run.checker.config_free(q))
            insert(q);
    }

    for (std::uint64_t batch = 0;; ++batch) {
        ++run.result.iterations;
        if (auto path = find_vertex_path_lazy(g, start, goal, run.checker))
            return run.finish(to_path(g, *path));
        Rng rng(params.seed, "lego", batch);
        std::size_t added = 0;
        for (std::size_t draws = 0; added < params.lego_batch && draws < 100 * params.lego_batch; ++draws) {
            if (run.budget.expired())
                return run.finish(std::nullopt);
            const Configuration q = uniform_in(run.bounds, rng);
            if (!run.checker.config_free(q))
                continue;
            insert(q);
            ++added;
            if (trace)
                trace->record(batch, "sample", -1, q);
        }
    }
}

} // namespace csrrt
