#include "support.hpp"

#include "csrrt/errors.hpp"
#include "csrrt/generators.hpp"
#include "csrrt/io.hpp"

#include <doctest.h>

using namespace csrrt;

namespace {

struct Interval {
    double lo, hi;
};

std::vector<Interval> merge(std::vector<Interval> xs) {
    std::sort(xs.begin(), xs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const Interval& x : xs) {
        if (!out.empty() && x.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, x.hi);
        else
            out.push_back(x);
    }
    return out;
}

// Free intervals along a scan line crossing the wall just inside its face.
std::vector<Interval> free_intervals(const std::vector<Rect>& obstacles, bool vertical, double u, double v_lo,
                                     double v_hi) {
    std::vector<Interval> blocked;
    for (const Rect& o : obstacles) {
        const double u0 = vertical ? o.lo.x : o.lo.y, u1 = vertical ? o.hi.x : o.hi.y;
        if (u0 <= u && u <= u1)
            blocked.push_back(vertical ? Interval{o.lo.y, o.hi.y} : Interval{o.lo.x, o.hi.x});
    }
    std::vector<Interval> gaps;
    double at = v_lo;
    for (const Interval& b : merge(blocked)) {
        if (b.lo > at)
            gaps.push_back({at, b.lo});
        at = std::max(at, b.hi);
    }
    if (at < v_hi)
        gaps.push_back({at, v_hi});
    return gaps;
}

} // namespace

TEST_CASE("generate_environment without walls is empty") {
    GenParams p;
    p.n_walls = 0;
    CHECK(generate_environment(3, Domain::r2_point, p).obstacles().empty());
}

TEST_CASE("generate_environment is deterministic per seed") {
    GenParams p;
    CHECK(generate_environment(5, Domain::r2_point, p) == generate_environment(5, Domain::r2_point, p));
    CHECK_FALSE(generate_environment(5, Domain::r2_point, p) == generate_environment(6, Domain::r2_point, p));
    p.workspace = {{-7.5, 0}, {7.5, 7.5}};
    p.n_walls = 1;
    CHECK(generate_environment(5, Domain::r7_arm, p) == generate_environment(5, Domain::r7_arm, p));
}

TEST_CASE("every generated wall has a passage of the requested width") {
    GenParams p;
    p.n_walls = 2;
    p.passage_width_min = 0.15;
    p.passage_width_max = 0.3;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Environment env = generate_environment(seed, Domain::r2_point, p);
        std::vector<Interval> xs, ys;
        for (const Rect& o : env.obstacles()) {
            xs.push_back({o.lo.x, o.hi.x});
            ys.push_back({o.lo.y, o.hi.y});
        }
        const auto mx = merge(xs), my = merge(ys);
        const bool vertical = mx.size() > 1 || mx.front().hi - mx.front().lo < 10.0;
        const auto& walls = vertical ? mx : my;
        REQUIRE(walls.size() == 2);
        for (const Interval& w : walls) {
            CHECK(w.hi - w.lo == doctest::Approx(p.wall_thickness));
            for (double u : {w.lo + 1e-9, w.hi - 1e-9}) {
                const auto gaps = free_intervals(env.obstacles(), vertical, u, 0.0, 10.0);
                REQUIRE(gaps.size() == 1);
                const double width = gaps[0].hi - gaps[0].lo;
                CHECK(width >= p.passage_width_min - 1e-9);
                CHECK(width <= p.passage_width_max + 1e-9);
            }
        }
    }
}

TEST_CASE("generate_environment rejects infeasible parameters") {
    GenParams p;
    p.passage_width_min = 9.0;
    p.passage_width_max = 9.5;
    CHECK_THROWS_AS((void)generate_environment(1, Domain::r2_point, p), DomainError);
    p = GenParams{};
    p.passage_width_min = 0.08;
    CHECK_THROWS_AS((void)generate_environment(1, Domain::r2_point, p), DomainError);
    p = GenParams{};
    p.n_walls = 20;
    CHECK_THROWS_AS((void)generate_environment(1, Domain::r2_point, p), DomainError);
}

TEST_CASE("generate_problem") {
    const Rect bounds{{0, 0}, {10, 10}};
    const Robot robot = PointRobot{};
    CHECK_THROWS_AS((void)generate_problem(Environment(bounds, {}), robot, 1, 0.05), GenerationError);

    const Environment wall(bounds, {{{4.5, 0}, {5.5, 10}}});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PlanningProblem pp = generate_problem(wall, robot, seed, 0.05);
        CHECK((pp.start()[0] - 5) * (pp.goal()[0] - 5) < 0);
        CHECK(is_config_free(wall, robot, pp.start()));
        CHECK(is_config_free(wall, robot, pp.goal()));
    }
    const PlanningProblem a = generate_problem(wall, robot, 9, 0.05);
    const PlanningProblem b = generate_problem(wall, robot, 9, 0.05);
    CHECK(a.start() == b.start());
    CHECK(a.goal() == b.goal());
}

TEST_CASE("slot problems straddle the arm wall") {
    GenParams p;
    p.workspace = {{-7.5, 0}, {7.5, 7.5}};
    p.n_walls = 1;
    p.wall_thickness = 0.8;
    p.passage_width_min = 0.25;
    p.passage_width_max = 0.4;
    p.arm_clutter = 3;
    const Environment env = generate_environment(2, Domain::r7_arm, p);
    const ArmModel arm = default_arm(p);
    const PlanningProblem pp = generate_slot_problem(env, arm, 3.0, 3.8, 4);
    CHECK(forward_kinematics(arm, pp.start())[7].y < 3.0);
    CHECK(forward_kinematics(arm, pp.goal())[7].y > 3.8);
    CHECK(is_config_free(env, arm, pp.start()));
    CHECK(is_config_free(env, arm, pp.goal()));
}

TEST_CASE("subtract_rects covers exactly the remainder") {
    const Rect outer{{0, 0}, {4, 2}};
    const auto parts = subtract_rects(outer, {{{1, -1}, {2, 1}}});
    double area = 0;
    for (const Rect& r : parts) {
        area += r.width() * r.height();
        CHECK(outer.contains(r));
    }
    CHECK(area == doctest::Approx(8.0 - 1.0));
}

TEST_CASE("scene and problem documents round-trip") {
    GenParams p;
    p.workspace = {{-7.5, 0}, {7.5, 7.5}};
    p.n_walls = 1;
    const Environment env = generate_environment(1, Domain::r7_arm, p);
    const Robot arm = robot_for(Domain::r7_arm, p);
    const Scene back = scene_from_json(scene_to_json(env, arm));
    CHECK(back.environment == env);
    CHECK(std::get<ArmModel>(back.robot) == std::get<ArmModel>(arm));

    const Environment wall({{0, 0}, {10, 10}}, {{{4.5, 0}, {5.5, 10}}});
    std::vector<ProblemRecord> problems;
    problems.push_back({"p000", 42, generate_problem(wall, PointRobot{}, 3, 0.05)});
    const auto parsed = problems_from_json(nlohmann::json::parse(problems_to_json(problems).dump()));
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].id == "p000");
    CHECK(parsed[0].seed == 42);
    CHECK(parsed[0].problem.start() == problems[0].problem.start());
    CHECK(parsed[0].problem.environment() == wall);

    const Path path({{1, 1}, {2, 3}});
    CHECK(path_from_json(path_to_json(path)).waypoints() == path.waypoints());

    using nlohmann::json;
    CHECK_THROWS_AS((void)scene_from_json(json::parse(R"({"bounds": [0, 0, 1]})")), FormatError);
    CHECK_THROWS_AS((void)scene_from_json(json::parse(R"({"bounds": [0, 0, 1, 1], "obstacles": [],
        "robot": {"type": "hexapod"}})")), FormatError);
    CHECK_THROWS_AS((void)scene_from_json(json::parse(R"({"bounds": [0, 0, 1, 1], "obstacles": [[0, 0, 2, 2]],
        "robot": {"type": "point"}})")), FormatError);
}
