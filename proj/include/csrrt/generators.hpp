#pragma once

#include "csrrt/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace csrrt {

enum class Domain { r2_point, r7_arm };

[[nodiscard]] std::string to_string(Domain d);
/// Accepts "r2-point" and "r7-arm".
[[nodiscard]] Domain parse_domain(const std::string& s);

struct GenParams {
    Rect workspace{{0.0, 0.0}, {10.0, 10.0}};
    std::size_t n_walls = 3;
    double passage_width_min = 0.15;
    double passage_width_max = 0.3;
    double wall_thickness = 1.0;
    double zigzag_probability = 0.5;
    /// Arm domain: slot wall height (workspace y of the wall's lower face)
    /// and number of clutter boxes below it.
    double arm_wall_y = 3.0;
    std::size_t arm_clutter = 2;
    /// Minimum passage width must exceed twice this value.
    double edge_resolution = 0.05;
};

/// Point domain: n_walls parallel full-span walls of the given thickness,
/// each pierced by one passage (straight, or a zig-zag inside the wall).
/// Arm domain: a horizontal slot wall above the base plus clutter boxes.
/// Deterministic per seed. Throws DomainError on infeasible parameters.
[[nodiscard]] Environment generate_environment(std::uint64_t seed, Domain domain, const GenParams& params);

/// The planar 7-link arm used by the arm domain: base at the bottom centre
/// of the workspace, unit links.
[[nodiscard]] ArmModel default_arm(const GenParams& params);

[[nodiscard]] Robot robot_for(Domain domain, const GenParams& params);

/// Start and goal in free space whose straight connecting edge is in
/// collision. Throws GenerationError after 10 000 draws.
[[nodiscard]] PlanningProblem generate_problem(const Environment& env, const Robot& robot, std::uint64_t seed,
                                               double edge_resolution);

/// Arm domain: start with the tip below `wall_lo` and goal with the tip above
/// `wall_hi`, so every solution threads the slot. Throws GenerationError
/// after 10 000 draws.
[[nodiscard]] PlanningProblem generate_slot_problem(const Environment& env, const ArmModel& arm, double wall_lo,
                                                    double wall_hi, std::uint64_t seed);

/// Rectangles covering `outer` minus the union of `holes` (holes are open).
[[nodiscard]] std::vector<Rect> subtract_rects(const Rect& outer, const std::vector<Rect>& holes);

} // namespace csrrt
