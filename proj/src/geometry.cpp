#include "csrrt/geometry.hpp"

#include "csrrt/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace csrrt {

Environment::Environment(Rect bounds, std::vector<Rect> obstacles) : bounds_(bounds), obstacles_(std::move(obstacles)) {
    if (!(bounds_.width() > 0.0 && bounds_.height() > 0.0))
        throw DomainError("environment bounds must have positive extent");
    for (std::size_t i = 0; i < obstacles_.size(); ++i) {
        const Rect& o = obstacles_[i];
        if (!(o.width() > 0.0 && o.height() > 0.0))
            throw DomainError("obstacle " + std::to_string(i) + " has non-positive width or height");
        if (!bounds_.contains(o))
            throw DomainError("obstacle " + std::to_string(i) + " lies outside the environment bounds");
    }
}

ArmModel::ArmModel(Vec2 base, std::array<double, kJoints> link_lengths, std::array<JointLimit, kJoints> limits)
    : base_(base), links_(link_lengths), limits_(limits) {
    for (std::size_t k = 0; k < kJoints; ++k) {
        if (!(links_[k] > 0.0))
            throw DomainError("link " + std::to_string(k) + " must have positive length");
        if (!(limits_[k].lo < limits_[k].hi))
            throw DomainError("joint " + std::to_string(k) + " limits must satisfy lo < hi");
    }
}

bool ArmModel::within_limits(const Configuration& q) const noexcept {
    if (q.dim() != kJoints)
        return false;
    for (std::size_t k = 0; k < kJoints; ++k) {
        if (q[k] < limits_[k].lo || q[k] > limits_[k].hi)
            return false;
    }
    return true;
}

std::size_t robot_dim(const Robot& robot) noexcept {
    return std::holds_alternative<PointRobot>(robot) ? 2 : ArmModel::kJoints;
}

bool StateBounds::contains(const Configuration& q) const noexcept {
    if (q.dim() != lo.dim())
        return false;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        if (q[i] < lo[i] || q[i] > hi[i])
            return false;
    }
    return true;
}

StateBounds state_bounds(const Environment& env, const Robot& robot) {
    if (const auto* arm = std::get_if<ArmModel>(&robot)) {
        std::array<double, ArmModel::kJoints> lo{};
        std::array<double, ArmModel::kJoints> hi{};
        for (std::size_t k = 0; k < ArmModel::kJoints; ++k) {
            lo[k] = arm->limits()[k].lo;
            hi[k] = arm->limits()[k].hi;
        }
        return {Configuration(lo), Configuration(hi)};
    }
    const Rect& b = env.bounds();
    return {Configuration{b.lo.x, b.lo.y}, Configuration{b.hi.x, b.hi.y}};
}

bool is_point_free(const Environment& env, Vec2 p) {
    if (!env.bounds().contains(p))
        return false;
    return std::none_of(env.obstacles().begin(), env.obstacles().end(), [p](const Rect& o) { return o.contains(p); });
}

std::array<Vec2, 8> forward_kinematics(const ArmModel& arm, const Configuration& q) {
    if (q.dim() != ArmModel::kJoints)
        throw DomainError("arm configuration must have 7 joint angles");
    if (!arm.within_limits(q))
        throw DomainError("configuration violates joint limits");
    std::array<Vec2, 8> pts{};
    pts[0] = arm.base();
    double angle = 0.0;
    for (std::size_t k = 0; k < ArmModel::kJoints; ++k) {
        angle += q[k];
        pts[k + 1] = {pts[k].x + arm.link_lengths()[k] * std::cos(angle),
                      pts[k].y + arm.link_lengths()[k] * std::sin(angle)};
    }
    return pts;
}

// Liang-Barsky clipping against closed slabs.
bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect& r) noexcept {
    double t0 = 0.0;
    double t1 = 1.0;
    const double d[2] = {b.x - a.x, b.y - a.y};
    const double p0[2] = {a.x, a.y};
    const double lo[2] = {r.lo.x, r.lo.y};
    const double hi[2] = {r.hi.x, r.hi.y};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (p0[axis] < lo[axis] || p0[axis] > hi[axis])
                return false;
            continue;
        }
        double ta = (lo[axis] - p0[axis]) / d[axis];
        double tb = (hi[axis] - p0[axis]) / d[axis];
        if (ta > tb)
            std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1)
            return false;
    }
    return true;
}

namespace {

void require_dim(const Robot& robot, const Configuration& q) {
    if (q.dim() != robot_dim(robot))
        throw DomainError("configuration dimension " + std::to_string(q.dim()) + " does not match robot dimension " +
                          std::to_string(robot_dim(robot)));
}

bool arm_free(const Environment& env, const ArmModel& arm, const Configuration& q) {
    if (!arm.within_limits(q))
        return false;
    const auto pts = forward_kinematics(arm, q);
    for (const Vec2& p : pts) {
        if (!env.bounds().contains(p))
            return false;
    }
    for (const Rect& o : env.obstacles()) {
        for (std::size_t k = 0; k < ArmModel::kJoints; ++k) {
            if (segment_intersects_rect(pts[k], pts[k + 1], o))
                return false;
        }
    }
    return true;
}

bool point_edge_free(const Environment& env, const Configuration& a, const Configuration& b) {
    const Vec2 pa{a[0], a[1]};
    const Vec2 pb{b[0], b[1]};
    if (!env.bounds().contains(pa) || !env.bounds().contains(pb))
        return false;
    return std::none_of(env.obstacles().begin(), env.obstacles().end(),
                        [&](const Rect& o) { return segment_intersects_rect(pa, pb, o); });
}

} // namespace

bool is_config_free(const Environment& env, const Robot& robot, const Configuration& q) {
    require_dim(robot, q);
    if (const auto* arm = std::get_if<ArmModel>(&robot))
        return arm_free(env, *arm, q);
    return is_point_free(env, {q[0], q[1]});
}

std::size_t edge_steps(double length, double resolution) noexcept {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / resolution)));
}

bool is_edge_free(const Environment& env, const Robot& robot, const Configuration& a, const Configuration& b,
                  double resolution) {
    require_dim(robot, a);
    require_dim(robot, b);
    if (!(resolution > 0.0))
        throw DomainError("edge resolution must be positive");
    if (std::holds_alternative<PointRobot>(robot))
        return point_edge_free(env, a, b);
    if (!is_config_free(env, robot, a) || !is_config_free(env, robot, b))
        return false;
    const std::size_t n = edge_steps(distance(a, b), resolution);
    for (std::size_t i = 1; i < n; ++i) {
        if (!is_config_free(env, robot, lerp(a, b, static_cast<double>(i) / static_cast<double>(n))))
            return false;
    }
    return true;
}

PlanningProblem::PlanningProblem(Configuration start, Configuration goal, Environment env, Robot robot)
    : start_(start), goal_(goal), env_(std::move(env)), robot_(std::move(robot)) {
    if (start_.dim() != goal_.dim())
        throw DomainError("start and goal dimensions differ");
    if (!is_config_free(env_, robot_, start_))
        throw DomainError("start configuration is in collision");
    if (!is_config_free(env_, robot_, goal_))
        throw DomainError("goal configuration is in collision");
}

Path::Path(std::vector<Configuration> waypoints) : waypoints_(std::move(waypoints)) {
    if (waypoints_.size() < 2)
        throw DomainError("a path needs at least two waypoints");
    for (const auto& w : waypoints_) {
        if (w.dim() != waypoints_.front().dim())
            throw DomainError("path waypoints have mixed dimensions");
    }
}

double Path::length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < waypoints_.size(); ++i)
        total += distance(waypoints_[i - 1], waypoints_[i]);
    return total;
}

bool is_valid_path(const PlanningProblem& problem, const Path& path, double resolution) {
    const auto& w = path.waypoints();
    if (w.front() != problem.start() || w.back() != problem.goal())
        return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (!is_edge_free(problem.environment(), problem.robot(), w[i - 1], w[i], resolution))
            return false;
    }
    return true;
}

CollisionChecker::CollisionChecker(const Environment& env, const Robot& robot, double resolution)
    : env_(&env), robot_(&robot), resolution_(resolution) {
    if (!(resolution > 0.0))
        throw DomainError("edge resolution must be positive");
}

bool CollisionChecker::config_free(const Configuration& q) {
    ++checks_;
    return is_config_free(*env_, *robot_, q);
}

bool CollisionChecker::edge_free(const Configuration& a, const Configuration& b) {
    if (std::holds_alternative<PointRobot>(*robot_)) {
        ++checks_;
        return point_edge_free(*env_, a, b);
    }
    if (!config_free(b) || !config_free(a))
        return false;
    const std::size_t n = edge_steps(distance(a, b), resolution_);
    // Bisection order finds mid-edge collisions early.
    for (std::size_t stride = std::bit_floor(n); stride >= 1; stride /= 2) {
        for (std::size_t i = stride; i < n; i += 2 * stride) {
            if (!config_free(lerp(a, b, static_cast<double>(i) / static_cast<double>(n))))
                return false;
        }
        if (stride == 1)
            break;
    }
    return true;
}

} // namespace csrrt
