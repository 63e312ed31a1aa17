#include "support.hpp"

#include "csrrt/critical_sources.hpp"
#include "csrrt/errors.hpp"
#include "csrrt/planners.hpp"
#include "csrrt/sampling.hpp"

#include <doctest.h>

#include <map>
#include <sstream>

using namespace csrrt;

namespace {

const Rect kBounds{{0, 0}, {10, 10}};
const Robot kPoint = PointRobot{};

// Vertical wall at x in [4.5, 5.5] with one gap of width 2h centred on y = 5.
Environment gap_env(double h) {
    return Environment(kBounds, {{{4.5, 0}, {5.5, 5 - h}}, {{4.5, 5 + h}, {5.5, 10}}});
}

PlannerParams work_params(double timeout, std::uint64_t seed = 0) {
    PlannerParams p;
    p.step_size = 0.5;
    p.r_init = 1.5;
    p.timeout_s = timeout;
    p.seed = seed;
    p.clock = ClockMode::work;
    p.work_costs = {1e-6, 1e-8};
    return p;
}

void check_result(const PlannerResult& r, const PlanningProblem& pp, double resolution) {
    CHECK(r.solved == r.path.has_value());
    if (r.path)
        CHECK(is_valid_path(pp, *r.path, resolution));
}

void check_steps(const Path& path, double step) {
    for (std::size_t i = 1; i < path.size(); ++i)
        CHECK(oracle::dist(path.waypoints()[i - 1], path.waypoints()[i]) <= step + 1e-9);
}

} // namespace

TEST_CASE("steer") {
    CHECK(steer({0, 0}, {0.3, 0}, 1.0) == Configuration{0.3, 0});
    const Configuration c = steer({0, 0}, {2, 0}, 1.0);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(0.0));
    Rng rng(1, "steer");
    for (int i = 0; i < 1000; ++i) {
        const Configuration a{rng.uniform(0, 10), rng.uniform(0, 10)};
        const Configuration b{rng.uniform(0, 10), rng.uniform(0, 10)};
        const double step = rng.uniform(0.01, 3);
        const Configuration s = steer(a, b, step);
        CHECK(oracle::dist(a, s) <= step + 1e-9);
        if (oracle::dist(a, b) > step)
            CHECK(oracle::dist(a, s) == doctest::Approx(step));
        else
            CHECK(s == b);
    }
}

TEST_CASE("nearest_vertex matches a linear scan") {
    CHECK_THROWS_AS((void)nearest_vertex(Tree{}, {0, 0}), DomainError);
    const Tree single(Configuration{1, 1});
    CHECK(nearest_vertex(single, {5, 5}) == single.root());
    Rng rng(2, "nearest");
    for (int trial = 0; trial < 500; ++trial) {
        Tree t(Configuration{rng.uniform(), rng.uniform()});
        const std::size_t n = rng.below(20);
        for (std::size_t i = 0; i < n; ++i)
            t.add({rng.uniform(), rng.uniform()}, vertex_id(rng.below(t.size())));
        const Configuration q{rng.uniform(), rng.uniform()};
        std::size_t best = 0;
        for (std::size_t i = 1; i < t.size(); ++i)
            if (oracle::dist(t.vertices()[i], q) < oracle::dist(t.vertices()[best], q))
                best = i;
        CHECK(index_of(nearest_vertex(t, q)) == best);
        const std::size_t pick = rng.below(t.size());
        CHECK(oracle::dist(t.vertex(nearest_vertex(t, t.vertices()[pick])), t.vertices()[pick]) == 0.0);
    }
}

TEST_CASE("random_node_in_ball") {
    const StateBounds bounds{{0, 0}, {10, 10}};
    Rng rng(3, "ball");
    double sx = 0, sy = 0;
    const int n = 10000;
    const double r = 2.0;
    for (int i = 0; i < n; ++i) {
        const Configuration q = random_node_in_ball({5, 5}, r, bounds, rng);
        CHECK(oracle::dist(q, {5, 5}) < r);
        sx += q[0];
        sy += q[1];
    }
    const double sigma = r / 2.0 / std::sqrt(double(n));
    CHECK(std::abs(sx / n - 5) < 3 * sigma);
    CHECK(std::abs(sy / n - 5) < 3 * sigma);
    for (int i = 0; i < 1000; ++i) {
        const Configuration q = random_node_in_ball({0.2, 9.9}, 1.0, bounds, rng);
        CHECK(bounds.contains(q));
        CHECK(oracle::dist(q, {0.2, 9.9}) < 1.0);
    }
}

TEST_CASE("tree stays rooted and acyclic") {
    Rng rng(4, "tree");
    Tree t(Configuration{0, 0});
    for (int i = 0; i < 1000; ++i) {
        const VertexId v = t.add({rng.uniform(), rng.uniform()}, vertex_id(rng.below(t.size())));
        const auto up = t.path_to_root(v);
        CHECK(up.front() == v);
        CHECK(up.back() == t.root());
        for (std::size_t k = 1; k < up.size(); ++k)
            CHECK(index_of(up[k]) < index_of(up[k - 1]));
    }
    CHECK(t.is_consistent());
    CHECK_FALSE(t.parent(t.root()));
    CHECK_THROWS_AS((void)t.add({0, 0}, vertex_id(5000)), DomainError);
}

TEST_CASE("trace round-trips") {
    Trace t;
    t.record(0, "extend", 2, {1.5, 2});
    t.record(3, "radius", -1, Configuration{2.25});
    std::ostringstream out;
    t.write(out);
    std::istringstream in(out.str());
    const Trace back = Trace::read(in);
    REQUIRE(back.events().size() == 2);
    CHECK(back.events()[1].event == "radius");
    CHECK(back.events()[1].component == -1);
    CHECK(back.events()[0].q == Configuration{1.5, 2});
    std::istringstream bad("iter,event,component,coords\n1,extend\n");
    CHECK_THROWS_AS((void)Trace::read(bad), FormatError);
}

TEST_CASE("planner parameter validation") {
    PlannerParams p = work_params(1.0);
    p.densify_iterations = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = work_params(1.0);
    p.radius_growth = 1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = work_params(1.0);
    p.step_size = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("trivial queries in open space") {
    const Environment env(kBounds, {});
    const PlanningProblem near({5, 5}, {5.3, 5}, env, kPoint);
    const PlanningProblem far({1, 1}, {9, 9}, env, kPoint);
    const PlannerParams params = work_params(5.0);
    CollisionChecker checker(env, kPoint, 0.05);
    const Roadmap sg = build_sparse_graph(env, kPoint, {.n = 150, .connect_radius = 1.0}, checker);

    const PlannerResult cs = csrrt_plan(near, {}, params);
    REQUIRE(cs.solved);
    CHECK(cs.path->size() == 2);
    CHECK(cs.iterations <= 3);

    const PlannerResult rc = rrt_connect_plan(near, params);
    REQUIRE(rc.solved);
    CHECK(rc.path->length() == doctest::Approx(0.3));

    for (const PlanningProblem* pp : {&near, &far}) {
        check_result(csrrt_plan(*pp, {}, params), *pp, 0.05);
        check_result(lcsrrt_plan(*pp, sg, {}, params), *pp, 0.05);
        check_result(lego_anytime_plan(*pp, sg, ProposalSet{}, params), *pp, 0.05);
        CHECK(csrrt_plan(*pp, {}, params).solved);
        CHECK(lcsrrt_plan(*pp, sg, {}, params).solved);
        CHECK(lego_anytime_plan(*pp, sg, ProposalSet{}, params).solved);
    }
}

TEST_CASE("rrt-connect solves open space for 100 seeds") {
    const Environment env(kBounds, {{{3, 3}, {7, 7}}});
    const PlanningProblem pp({1, 1}, {9, 9}, env, kPoint);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const PlannerResult r = rrt_connect_plan(pp, work_params(5.0, seed));
        CHECK(r.solved);
        check_result(r, pp, 0.05);
        if (r.path)
            check_steps(*r.path, 0.5);
    }
}

TEST_CASE("disconnected problems time out") {
    const Environment env(kBounds, {{{4.5, 0}, {5.5, 10}}});
    const PlanningProblem pp({1, 5}, {9, 5}, env, kPoint);
    CollisionChecker checker(env, kPoint, 0.05);
    const Roadmap sg = build_sparse_graph(env, kPoint, {.n = 100, .connect_radius = 1.0}, checker);
    const PlannerParams params = work_params(0.2);
    for (const PlannerResult& r : {rrt_connect_plan(pp, params), csrrt_plan(pp, {}, params),
                                   lcsrrt_plan(pp, sg, {}, params), lego_anytime_plan(pp, sg, ProposalSet{}, params)}) {
        CHECK_FALSE(r.solved);
        CHECK_FALSE(r.path);
        CHECK(r.elapsed_s >= 0.2);
        CHECK(r.elapsed_s < 0.25);
    }
}

TEST_CASE("cs-rrt through a gap with a source inside it") {
    const Environment env = gap_env(0.15);
    const PlanningProblem pp({1, 5}, {9, 5}, env, kPoint);
    const CriticalSourceSet cs{{{5, 5}}};
    Trace trace;
    const PlannerResult r = csrrt_plan(pp, cs, work_params(60.0, 7), &trace);
    REQUIRE(r.solved);
    check_result(r, pp, 0.05);
    check_steps(*r.path, 0.5);
    bool near_gap = false;
    for (const auto& q : r.path->waypoints())
        near_gap |= oracle::dist(q, {5, 5}) < 0.75;
    CHECK(near_gap);

    // Every live component gets one extension per round.
    std::map<std::uint64_t, std::int64_t> live;
    std::map<std::uint64_t, std::int64_t> extends;
    std::map<std::uint64_t, bool> merged;
    for (const auto& e : trace.events()) {
        if (e.event == "round")
            live[e.iteration] = e.component;
        else if (e.event == "extend")
            ++extends[e.iteration];
        else if (e.event == "merge")
            merged[e.iteration] = true;
    }
    CHECK(live[0] == 3);
    for (auto [round, n] : live)
        if (!merged[round] && round + 1 < live.size())
            CHECK(extends[round] == n);
}

TEST_CASE("planners are deterministic per seed") {
    const Environment env = gap_env(0.2);
    const PlanningProblem pp({1, 5}, {9, 5}, env, kPoint);
    CollisionChecker checker(env, kPoint, 0.05);
    const Roadmap sg = build_sparse_graph(env, kPoint, {.n = 150, .connect_radius = 1.0}, checker);
    const CriticalSourceSet cs{{{5, 5}}};
    const PlannerParams params = work_params(5.0, 3);
    auto same = [](const PlannerResult& a, const PlannerResult& b) {
        CHECK(a.solved == b.solved);
        CHECK(a.collision_checks == b.collision_checks);
        CHECK(a.elapsed_s == b.elapsed_s);
        if (a.path && b.path)
            CHECK(a.path->waypoints() == b.path->waypoints());
    };
    same(csrrt_plan(pp, cs, params), csrrt_plan(pp, cs, params));
    same(lcsrrt_plan(pp, sg, cs, params), lcsrrt_plan(pp, sg, cs, params));
    same(rrt_connect_plan(pp, params), rrt_connect_plan(pp, params));
    same(lego_anytime_plan(pp, sg, ProposalSet{}, params), lego_anytime_plan(pp, sg, ProposalSet{}, params));
}

TEST_CASE("lcs-rrt") {
    const Environment env = gap_env(0.15);
    const PlanningProblem pp({1, 5}, {9, 5}, env, kPoint);
    CollisionChecker checker(env, kPoint, 0.05);
    const Roadmap sg = build_sparse_graph(env, kPoint, {.n = 150, .connect_radius = 1.0}, checker);

    SUBCASE("radius grows geometrically") {
        Trace trace;
        const PlannerParams params = work_params(60.0, 1);
        const PlannerResult r = lcsrrt_plan(pp, sg, {}, params, &trace);
        CHECK(r.solved);
        check_result(r, pp, 0.05);
        std::uint64_t k = 0;
        for (const auto& e : trace.events()) {
            if (e.event != "radius")
                continue;
            CHECK(e.iteration == k);
            CHECK(e.q[0] == params.r_init * std::pow(params.radius_growth, double(k)));
            ++k;
        }
        CHECK(k >= 1);
    }
    SUBCASE("a source in the gap beats no sources") {
        std::size_t faster = 0;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const PlannerResult with = lcsrrt_plan(pp, sg, {{{5, 5}}}, work_params(60.0, seed));
            const PlannerResult without = lcsrrt_plan(pp, sg, {}, work_params(60.0, seed));
            REQUIRE(with.solved);
            REQUIRE(without.solved);
            faster += with.elapsed_s < without.elapsed_s;
        }
        CHECK(faster >= 4);
    }
    SUBCASE("sparse graph alone suffices in open space") {
        const Environment open(kBounds, {});
        const PlanningProblem easy({1, 1}, {9, 9}, open, kPoint);
        CollisionChecker c(open, kPoint, 0.05);
        const Roadmap g = build_sparse_graph(open, kPoint, {.n = 150, .connect_radius = 1.0}, c);
        Trace trace;
        const PlannerResult r = lcsrrt_plan(easy, g, {}, work_params(5.0), &trace);
        REQUIRE(r.solved);
        std::size_t rounds = 0;
        for (const auto& e : trace.events())
            rounds += e.event == "radius";
        CHECK(rounds == 1);
    }
}

TEST_CASE("anytime lego") {
    SUBCASE("proposals bridging the gap solve on the first search") {
        const Environment env = gap_env(0.15);
        const PlanningProblem pp({1, 5}, {9, 5}, env, kPoint);
        CollisionChecker checker(env, kPoint, 0.05);
        const Roadmap sg = build_sparse_graph(env, kPoint, {.n = 300, .connect_radius = 1.0}, checker);
        ProposalSet proposals{2, "p", "test", {}};
        for (double x = 4.2; x <= 5.81; x += 0.4)
            proposals.samples.push_back({x, 5});
        Trace trace;
        const PlannerResult r = lego_anytime_plan(pp, sg, proposals, work_params(5.0), &trace);
        REQUIRE(r.solved);
        check_result(r, pp, 0.05);
        for (const auto& e : trace.events())
            CHECK(e.event != "sample");
    }
}

TEST_CASE("local graph expansion") {
    const PlannerParams params = work_params(100.0);
    const StateBounds bounds{{0, 0}, {10, 10}};

    auto run_expand = [&](const Environment& env, Roadmap& g, std::vector<LocalRegion>& regions, double r) {
        CollisionChecker checker(env, kPoint, 0.05);
        Budget budget(100.0, ClockMode::work, {}, checker);
        LocalSearchContext ctx{checker, budget, bounds, params};
        CHECK(expand_local_graphs(g, regions, r, ctx));
    };

    SUBCASE("radius below the nearest vertex") {
        const Environment env(kBounds, {});
        Roadmap g(2);
        const VertexId s = g.add_vertex({5, 5});
        g.add_vertex({7, 5});
        std::vector<LocalRegion> regions;
        regions.emplace_back(Configuration{5, 5}, s);
        run_expand(env, g, regions, 1.0);
        CHECK(regions[0].graph.graph().size() == 1);
    }
    SUBCASE("open space links every absorbed vertex") {
        const Environment env(kBounds, {});
        Roadmap g(2);
        const VertexId s = g.add_vertex({5, 5});
        for (auto [x, y] : std::vector<std::pair<double, double>>{{6, 5}, {4, 5}, {5, 6}, {5, 4}, {5.7, 5.7}})
            g.add_vertex({x, y});
        g.add_vertex({9, 9});
        std::vector<LocalRegion> regions;
        regions.emplace_back(Configuration{5, 5}, s);
        run_expand(env, g, regions, 1.5);
        const Roadmap& lg = regions[0].graph.graph();
        CHECK(lg.size() == 6);
        CHECK(regions[0].graph.is_connected());
        CHECK(regions[0].unconnected().empty());
    }
    SUBCASE("a wall keeps the far side unconnected") {
        const Environment env(kBounds, {{{5.4, 0}, {5.6, 10}}});
        Roadmap g(2);
        const VertexId s = g.add_vertex({5, 5});
        const VertexId a = g.add_vertex({4.2, 5});
        const VertexId b = g.add_vertex({6, 4.8});
        const VertexId c = g.add_vertex({6, 5.4});
        g.add_edge(b, c);
        g.add_unvalidated_edge(s, b);
        std::vector<LocalRegion> regions;
        regions.emplace_back(Configuration{5, 5}, s);
        run_expand(env, g, regions, 1.5);
        const LocalGraph& lg = regions[0].graph;
        CHECK(lg.graph().size() == 4);
        std::vector<VertexId> far;
        for (VertexId v : regions[0].unconnected())
            far.push_back(*lg.global_of(v));
        CHECK(far == std::vector<VertexId>{b, c});
        CHECK(lg.graph().same_component(*lg.local_of(s), *lg.local_of(a)));
        CHECK_FALSE(g.has_edge(s, b));
    }
}

TEST_CASE("local graph densification") {
    const StateBounds bounds{{0, 0}, {10, 10}};
    auto setup = [](Roadmap& g, std::vector<LocalRegion>& regions, const Configuration& src,
                    std::vector<Configuration> others) {
        const VertexId s = g.add_vertex(src);
        for (const auto& q : others)
            g.add_vertex(q);
        regions.emplace_back(src, s);
    };

    SUBCASE("connected region is untouched") {
        const Environment env(kBounds, {});
        CollisionChecker checker(env, kPoint, 0.05);
        Budget budget(100.0, ClockMode::work, {}, checker);
        PlannerParams params = work_params(100.0);
        LocalSearchContext ctx{checker, budget, bounds, params};
        Roadmap g(2);
        std::vector<LocalRegion> regions;
        setup(g, regions, {5, 5}, {{6, 5}});
        CHECK(expand_local_graphs(g, regions, 1.5, ctx));
        CHECK(densify_local_graphs(regions, 1.5, ctx));
        CHECK(regions[0].tree.size() == 1);
    }
    SUBCASE("one iteration adds at most one tree vertex") {
        const Environment env(kBounds, {{{5.4, 0}, {5.6, 9}}});
        CollisionChecker checker(env, kPoint, 0.05);
        Budget budget(100.0, ClockMode::work, {}, checker);
        PlannerParams params = work_params(100.0);
        params.densify_iterations = 1;
        LocalSearchContext ctx{checker, budget, bounds, params};
        Roadmap g(2);
        std::vector<LocalRegion> regions;
        setup(g, regions, {5, 5}, {{6, 5}});
        CHECK(expand_local_graphs(g, regions, 1.5, ctx));
        for (int call = 0; call < 5; ++call) {
            const std::size_t before = regions[0].tree.size();
            CHECK(densify_local_graphs(regions, 1.5, ctx));
            CHECK(regions[0].tree.size() <= before + 1);
        }
    }
    SUBCASE("a tree threads a short corridor") {
        const Environment env(kBounds, {{{4, 0}, {6, 4.85}}, {{4, 5.15}, {6, 10}}});
        CollisionChecker checker(env, kPoint, 0.05);
        Budget budget(100.0, ClockMode::work, {}, checker);
        PlannerParams params = work_params(100.0, 2);
        params.densify_iterations = 200;
        params.step_size = 0.3;
        LocalSearchContext ctx{checker, budget, bounds, params};
        Roadmap g(2);
        std::vector<LocalRegion> regions;
        setup(g, regions, {5, 5}, {{3.6, 6}, {6.4, 4}});
        CHECK(expand_local_graphs(g, regions, 2.0, ctx));
        CHECK(regions[0].unconnected().size() == 2);
        CHECK(densify_local_graphs(regions, 2.0, ctx));
        CHECK(regions[0].unconnected().empty());
        CHECK(regions[0].graph.is_connected());
        CHECK(regions[0].tree.is_consistent());
        for (std::size_t k = 1; k < regions[0].tree.size(); ++k) {
            const VertexId v = vertex_id(k);
            CHECK(oracle::dist(regions[0].tree.vertex(v), {5, 5}) < 2.0);
            CHECK(oracle::dist(regions[0].tree.vertex(v), regions[0].tree.vertex(*regions[0].tree.parent(v))) <=
                  0.3 + 1e-9);
        }
        const std::size_t added = merge_local_graphs(g, regions);
        CHECK(added == regions[0].tree.size() - 1);
        CHECK(g.same_component(vertex_id(1), vertex_id(2)));
    }
}
