#pragma once

#include "csrrt/geometry.hpp"
#include "csrrt/planners.hpp"
#include "csrrt/roadmap.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace csrrt {

/// Optional layers drawn over the environment. Configurations are drawn as
/// workspace points for the point robot and as arm poses for the arm (where
/// the roadmap and tree layers are skipped).
struct SvgOverlays {
    const Roadmap* roadmap = nullptr;
    std::vector<const Tree*> trees;
    std::vector<Configuration> samples;
    std::vector<Configuration> sources;
    /// Vertices from a planner trace, drawn as small dots.
    std::vector<Configuration> trace;
    std::optional<Path> path;
};

void render_svg(std::ostream& out, const Environment& env, const Robot& robot, const SvgOverlays& overlays = {});
/// Throws std::runtime_error when the file cannot be written.
void render_svg(const std::filesystem::path& file, const Environment& env, const Robot& robot,
                const SvgOverlays& overlays = {});

} // namespace csrrt
