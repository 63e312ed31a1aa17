#include "csrrt/generators.hpp"

#include "csrrt/errors.hpp"
#include "csrrt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace csrrt {

std::string to_string(Domain d) { return d == Domain::r2_point ? "r2-point" : "r7-arm"; }

Domain parse_domain(const std::string& s) {
    if (s == "r2-point")
        return Domain::r2_point;
    if (s == "r7-arm")
        return Domain::r7_arm;
    throw ConfigError("unknown domain '" + s + "' (expected r2-point or r7-arm)");
}

std::vector<Rect> subtract_rects(const Rect& outer, const std::vector<Rect>& holes) {
    std::vector<double> xs{outer.lo.x, outer.hi.x};
    std::vector<double> ys{outer.lo.y, outer.hi.y};
    for (const Rect& h : holes) {
        for (double x : {h.lo.x, h.hi.x})
            xs.push_back(std::clamp(x, outer.lo.x, outer.hi.x));
        for (double y : {h.lo.y, h.hi.y})
            ys.push_back(std::clamp(y, outer.lo.y, outer.hi.y));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    // Column strips merged vertically, then equal strips merged horizontally.
    std::vector<Rect> strips;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        bool open = false;
        double run_lo = 0.0;
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
            const Vec2 c{0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])};
            const bool carved = std::any_of(holes.begin(), holes.end(), [&](const Rect& h) {
                return h.lo.x < c.x && c.x < h.hi.x && h.lo.y < c.y && c.y < h.hi.y;
            });
            if (!carved && !open) {
                run_lo = ys[j];
                open = true;
            }
            if (carved && open) {
                strips.push_back({{xs[i], run_lo}, {xs[i + 1], ys[j]}});
                open = false;
            }
        }
        if (open)
            strips.push_back({{xs[i], run_lo}, {xs[i + 1], ys.back()}});
    }
    std::vector<Rect> merged;
    for (const Rect& s : strips) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Rect& m) {
            return m.hi.x == s.lo.x && m.lo.y == s.lo.y && m.hi.y == s.hi.y;
        });
        if (it != merged.end())
            it->hi.x = s.hi.x;
        else
            merged.push_back(s);
    }
    return merged;
}

namespace {

/// Obstacles for one wall whose thickness runs along `along` (0 = x) over
/// [t0, t0 + thickness] and whose span covers the workspace on the other axis.
std::vector<Rect> carve_wall(const Rect& ws, bool vertical, double t0, double thickness, double width, bool zigzag,
                             Rng& rng) {
    // Work in (u, v): u across the wall, v along it.
    const double v_lo = vertical ? ws.lo.y : ws.lo.x;
    const double v_hi = vertical ? ws.hi.y : ws.hi.x;
    const double margin = std::min(1.0, 0.1 * (v_hi - v_lo));
    auto draw_v = [&] { return rng.uniform(v_lo + margin, v_hi - margin - width); };
    struct UV {
        double u0, v0, u1, v1;
    };
    std::vector<UV> holes;
    const double v1 = draw_v();
    if (zigzag) {
        const double mid = t0 + 0.5 * thickness;
        double shift = rng.uniform(1.5 * width, 4.0 * width) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        double v2 = v1 + shift;
        if (v2 < v_lo + margin || v2 > v_hi - margin - width)
            v2 = v1 - shift;
        holes.push_back({t0, v1, mid + 0.5 * width, v1 + width});
        holes.push_back({mid - 0.5 * width, std::min(v1, v2), mid + 0.5 * width, std::max(v1, v2) + width});
        holes.push_back({mid - 0.5 * width, v2, t0 + thickness, v2 + width});
    } else {
        holes.push_back({t0, v1, t0 + thickness, v1 + width});
    }
    auto to_rect = [&](const UV& h) -> Rect {
        return vertical ? Rect{{h.u0, h.v0}, {h.u1, h.v1}} : Rect{{h.v0, h.u0}, {h.v1, h.u1}};
    };
    const Rect wall = vertical ? Rect{{t0, ws.lo.y}, {t0 + thickness, ws.hi.y}}
                               : Rect{{ws.lo.x, t0}, {ws.hi.x, t0 + thickness}};
    std::vector<Rect> rects;
    for (const UV& h : holes)
        rects.push_back(to_rect(h));
    // Holes reaching the wall faces must extend past them so the faces open.
    for (Rect& r : rects) {
        if (vertical) {
            if (r.lo.x <= wall.lo.x)
                r.lo.x = wall.lo.x - 1.0;
            if (r.hi.x >= wall.hi.x)
                r.hi.x = wall.hi.x + 1.0;
        } else {
            if (r.lo.y <= wall.lo.y)
                r.lo.y = wall.lo.y - 1.0;
            if (r.hi.y >= wall.hi.y)
                r.hi.y = wall.hi.y + 1.0;
        }
    }
    return subtract_rects(wall, rects);
}

Environment generate_r2(std::uint64_t seed, const GenParams& p) {
    const Rect& ws = p.workspace;
    if (p.n_walls == 0)
        return Environment(ws, {});
    const bool vertical = Rng(seed, "env-orientation").uniform() < 0.5;
    const double across_lo = vertical ? ws.lo.x : ws.lo.y;
    const double across = vertical ? ws.width() : ws.height();
    const double along = vertical ? ws.height() : ws.width();
    const double spacing = across / static_cast<double>(p.n_walls + 1);
    if (p.wall_thickness >= spacing)
        throw DomainError("walls do not fit: wall_thickness must be below workspace extent / (n_walls + 1)");
    if (p.passage_width_max >= 0.8 * along)
        throw DomainError("passage wider than the workspace");

    Rng rng(seed, "env-walls");
    std::vector<Rect> obstacles;
    for (std::size_t i = 0; i < p.n_walls; ++i) {
        const double slack = 0.5 * (spacing - p.wall_thickness);
        const double centre = across_lo + spacing * static_cast<double>(i + 1) + rng.uniform(-0.4, 0.4) * slack;
        const double width = rng.uniform(p.passage_width_min, p.passage_width_max);
        const bool zigzag = p.wall_thickness >= 3.0 * width && rng.uniform() < p.zigzag_probability;
        auto rects = carve_wall(ws, vertical, centre - 0.5 * p.wall_thickness, p.wall_thickness, width, zigzag, rng);
        obstacles.insert(obstacles.end(), rects.begin(), rects.end());
    }
    return Environment(ws, std::move(obstacles));
}

Environment generate_r7(std::uint64_t seed, const GenParams& p) {
    const Rect& ws = p.workspace;
    Rng rng(seed, "env-arm");
    const ArmModel arm = default_arm(p);
    std::vector<Rect> obstacles;
    if (p.n_walls > 0) {
        const double width = rng.uniform(p.passage_width_min, p.passage_width_max);
        const double y0 = p.arm_wall_y;
        const double slot = rng.uniform(arm.base().x - 2.0, arm.base().x + 2.0 - width);
        const Rect wall{{ws.lo.x, y0}, {ws.hi.x, y0 + p.wall_thickness}};
        if (!ws.contains(wall))
            throw DomainError("slot wall does not fit inside the workspace");
        auto rects = subtract_rects(wall, {Rect{{slot, y0 - 1.0}, {slot + width, y0 + p.wall_thickness + 1.0}}});
        obstacles.insert(obstacles.end(), rects.begin(), rects.end());
    }
    // Clutter boxes below the wall, away from the base.
    for (std::size_t k = 0; k < p.arm_clutter; ++k) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            const double w = rng.uniform(0.4, 1.0);
            const double h = rng.uniform(0.4, 1.0);
            const double x = rng.uniform(ws.lo.x + 0.5, ws.hi.x - 0.5 - w);
            const double y = rng.uniform(ws.lo.y + 0.5, p.arm_wall_y - 0.5 - h);
            const Rect box{{x, y}, {x + w, y + h}};
            const Rect keep_out{{arm.base().x - 1.5, arm.base().y - 1.5}, {arm.base().x + 1.5, arm.base().y + 1.5}};
            if (box.intersects(keep_out) || !ws.contains(box))
                continue;
            obstacles.push_back(box);
            break;
        }
    }
    return Environment(ws, std::move(obstacles));
}

} // namespace

Environment generate_environment(std::uint64_t seed, Domain domain, const GenParams& params) {
    if (!(params.passage_width_min > 0.0) || params.passage_width_min > params.passage_width_max)
        throw DomainError("passage width range must be positive and ordered");
    if (!(params.passage_width_min > 2.0 * params.edge_resolution))
        throw DomainError("minimum passage width must exceed twice the edge resolution");
    return domain == Domain::r2_point ? generate_r2(seed, params) : generate_r7(seed, params);
}

ArmModel default_arm(const GenParams& params) {
    const Rect& ws = params.workspace;
    std::array<double, ArmModel::kJoints> links{};
    links.fill(1.0);
    std::array<JointLimit, ArmModel::kJoints> limits{};
    limits[0] = {0.0, std::numbers::pi};
    for (std::size_t k = 1; k < ArmModel::kJoints; ++k)
        limits[k] = {-0.75 * std::numbers::pi, 0.75 * std::numbers::pi};
    return ArmModel({0.5 * (ws.lo.x + ws.hi.x), ws.lo.y + 0.25}, links, limits);
}

Robot robot_for(Domain domain, const GenParams& params) {
    if (domain == Domain::r7_arm)
        return default_arm(params);
    return PointRobot{};
}

PlanningProblem generate_problem(const Environment& env, const Robot& robot, std::uint64_t seed,
                                 double edge_resolution) {
    const StateBounds bounds = state_bounds(env, robot);
    Rng rng(seed, "problem");
    auto draw_free = [&](std::size_t& draws) -> std::optional<Configuration> {
        while (draws < 10000) {
            ++draws;
            Configuration q = uniform_in(bounds, rng);
            if (is_config_free(env, robot, q))
                return q;
        }
        return std::nullopt;
    };
    std::size_t draws = 0;
    while (draws < 10000) {
        auto start = draw_free(draws);
        auto goal = draw_free(draws);
        if (!start || !goal)
            break;
        if (!is_edge_free(env, robot, *start, *goal, edge_resolution))
            return PlanningProblem(*start, *goal, env, robot);
    }
    throw GenerationError("no free start/goal pair with a colliding straight edge in 10000 draws");
}

PlanningProblem generate_slot_problem(const Environment& env, const ArmModel& arm, double wall_lo, double wall_hi,
                                      std::uint64_t seed) {
    const Robot robot = arm;
    const StateBounds bounds = state_bounds(env, robot);
    Rng rng(seed, "slot-problem");
    std::optional<Configuration> start;
    std::optional<Configuration> goal;
    for (std::size_t draws = 0; draws < 10000 && !(start && goal); ++draws) {
        Configuration q = uniform_in(bounds, rng);
        if (!is_config_free(env, robot, q))
            continue;
        const double tip = forward_kinematics(arm, q).back().y;
        if (!start && tip < wall_lo)
            start = q;
        else if (!goal && tip > wall_hi)
            goal = q;
    }
    if (!start || !goal)
        throw GenerationError("no start below and goal above the slot wall in 10000 draws");
    return PlanningProblem(*start, *goal, env, robot);
}

} // namespace csrrt
