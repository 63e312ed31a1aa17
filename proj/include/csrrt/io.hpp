#pragma once

#include "csrrt/geometry.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace csrrt {

/// Environment document:
///   {"bounds": [xmin, ymin, xmax, ymax],
///    "obstacles": [[xmin, ymin, xmax, ymax], ...],
///    "robot": {"type": "point"} | {"type": "arm7", "base": [x, y], "links": [...7], "limits": [[lo, hi], ...7]}}
struct Scene {
    Environment environment;
    Robot robot;
};

[[nodiscard]] nlohmann::json scene_to_json(const Environment& env, const Robot& robot);
/// Throws FormatError on malformed documents.
[[nodiscard]] Scene scene_from_json(const nlohmann::json& j);

struct ProblemRecord {
    std::string id;
    std::uint64_t seed = 0;
    PlanningProblem problem;
};

/// {"problems": [{"id", "seed", "environment": <scene>, "start": [...], "goal": [...]}]}
[[nodiscard]] nlohmann::json problems_to_json(const std::vector<ProblemRecord>& problems);
[[nodiscard]] std::vector<ProblemRecord> problems_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json path_to_json(const Path& path);
[[nodiscard]] Path path_from_json(const nlohmann::json& j);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);

} // namespace csrrt
