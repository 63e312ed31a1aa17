#pragma once

#include "csrrt/configuration.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace csrrt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Closed axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y].
struct Rect {
    Vec2 lo;
    Vec2 hi;

    [[nodiscard]] double width() const noexcept { return hi.x - lo.x; }
    [[nodiscard]] double height() const noexcept { return hi.y - lo.y; }
    [[nodiscard]] bool contains(Vec2 p) const noexcept {
        return lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y;
    }
    [[nodiscard]] bool contains(const Rect& r) const noexcept { return contains(r.lo) && contains(r.hi); }
    /// Closed-set intersection: shared boundary counts.
    [[nodiscard]] bool intersects(const Rect& r) const noexcept {
        return lo.x <= r.hi.x && r.lo.x <= hi.x && lo.y <= r.hi.y && r.lo.y <= hi.y;
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Bounded planar workspace with closed rectangular obstacles.
class Environment {
public:
    /// Throws DomainError if an obstacle is degenerate or leaves the bounds.
    Environment(Rect bounds, std::vector<Rect> obstacles);

    [[nodiscard]] const Rect& bounds() const noexcept { return bounds_; }
    [[nodiscard]] const std::vector<Rect>& obstacles() const noexcept { return obstacles_; }

    friend bool operator==(const Environment&, const Environment&) = default;

private:
    Rect bounds_;
    std::vector<Rect> obstacles_;
};

struct JointLimit {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const JointLimit&, const JointLimit&) = default;
};

/// Planar serial chain of seven zero-width links. Joint angles are relative;
/// link k points along the cumulative angle of joints 0..k.
class ArmModel {
public:
    static constexpr std::size_t kJoints = 7;

    ArmModel(Vec2 base, std::array<double, kJoints> link_lengths, std::array<JointLimit, kJoints> limits);

    [[nodiscard]] Vec2 base() const noexcept { return base_; }
    [[nodiscard]] const std::array<double, kJoints>& link_lengths() const noexcept { return links_; }
    [[nodiscard]] const std::array<JointLimit, kJoints>& limits() const noexcept { return limits_; }
    [[nodiscard]] bool within_limits(const Configuration& q) const noexcept;

    friend bool operator==(const ArmModel&, const ArmModel&) = default;

private:
    Vec2 base_;
    std::array<double, kJoints> links_;
    std::array<JointLimit, kJoints> limits_;
};

struct PointRobot {
    friend bool operator==(const PointRobot&, const PointRobot&) = default;
};

using Robot = std::variant<PointRobot, ArmModel>;

[[nodiscard]] std::size_t robot_dim(const Robot& robot) noexcept;

/// Axis-aligned box of the configuration space: workspace bounds for the
/// point robot, joint limits for the arm.
struct StateBounds {
    Configuration lo;
    Configuration hi;

    [[nodiscard]] bool contains(const Configuration& q) const noexcept;
};

[[nodiscard]] StateBounds state_bounds(const Environment& env, const Robot& robot);

[[nodiscard]] bool is_point_free(const Environment& env, Vec2 p);

/// Joint positions base..tip (8 points). Throws DomainError outside joint limits.
[[nodiscard]] std::array<Vec2, 8> forward_kinematics(const ArmModel& arm, const Configuration& q);

/// Exact closed segment/rectangle intersection (touching counts).
[[nodiscard]] bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect& r) noexcept;

/// Throws DomainError when q's dimension does not match the robot.
/// Arm configurations outside the joint limits are reported as not free.
[[nodiscard]] bool is_config_free(const Environment& env, const Robot& robot, const Configuration& q);

/// Point robot: exact swept-segment test. Arm: configurations interpolated
/// linearly in joint space, spaced at most `resolution` apart.
[[nodiscard]] bool is_edge_free(const Environment& env, const Robot& robot, const Configuration& a,
                                const Configuration& b, double resolution);

/// Number of interpolation intervals used for an arm edge of the given length.
[[nodiscard]] std::size_t edge_steps(double length, double resolution) noexcept;

/// Start, goal and free space of one planning query. Endpoints are verified
/// collision-free on construction.
class PlanningProblem {
public:
    PlanningProblem(Configuration start, Configuration goal, Environment env, Robot robot);

    [[nodiscard]] const Configuration& start() const noexcept { return start_; }
    [[nodiscard]] const Configuration& goal() const noexcept { return goal_; }
    [[nodiscard]] const Environment& environment() const noexcept { return env_; }
    [[nodiscard]] const Robot& robot() const noexcept { return robot_; }
    [[nodiscard]] std::size_t dim() const noexcept { return start_.dim(); }
    [[nodiscard]] StateBounds bounds() const { return state_bounds(env_, robot_); }

private:
    Configuration start_;
    Configuration goal_;
    Environment env_;
    Robot robot_;
};

class Path {
public:
    /// Requires at least two waypoints of equal dimension.
    explicit Path(std::vector<Configuration> waypoints);

    [[nodiscard]] const std::vector<Configuration>& waypoints() const noexcept { return waypoints_; }
    [[nodiscard]] std::size_t size() const noexcept { return waypoints_.size(); }
    [[nodiscard]] double length() const;

private:
    std::vector<Configuration> waypoints_;
};

/// Endpoints match the problem and every segment passes is_edge_free.
[[nodiscard]] bool is_valid_path(const PlanningProblem& problem, const Path& path, double resolution);

/// Counting front-end to the collision predicates, one per planner invocation.
class CollisionChecker {
public:
    CollisionChecker(const Environment& env, const Robot& robot, double resolution);

    [[nodiscard]] bool config_free(const Configuration& q);
    [[nodiscard]] bool edge_free(const Configuration& a, const Configuration& b);

    [[nodiscard]] std::uint64_t checks() const noexcept { return checks_; }
    [[nodiscard]] double resolution() const noexcept { return resolution_; }
    [[nodiscard]] const Environment& environment() const noexcept { return *env_; }
    [[nodiscard]] const Robot& robot() const noexcept { return *robot_; }

private:
    const Environment* env_;
    const Robot* robot_;
    double resolution_;
    std::uint64_t checks_ = 0;
};

} // namespace csrrt
