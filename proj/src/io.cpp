#include "csrrt/io.hpp"

#include "csrrt/errors.hpp"

#include <fstream>
#include <sstream>

namespace csrrt {

namespace {

using nlohmann::json;

Rect rect_from(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw FormatError("rectangle must be [xmin, ymin, xmax, ymax]");
    return {{j[0].get<double>(), j[1].get<double>()}, {j[2].get<double>(), j[3].get<double>()}};
}

json rect_to(const Rect& r) { return json::array({r.lo.x, r.lo.y, r.hi.x, r.hi.y}); }

Configuration config_from(const json& j) {
    if (!j.is_array())
        throw FormatError("configuration must be an array of numbers");
    return Configuration(j.get<std::vector<double>>());
}

json config_to(const Configuration& q) { return std::vector<double>(q.coords().begin(), q.coords().end()); }

template <typename F>
auto wrap(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed document: ") + e.what());
    } catch (const DomainError& e) {
        throw FormatError(std::string("invalid document: ") + e.what());
    }
}

} // namespace

nlohmann::json scene_to_json(const Environment& env, const Robot& robot) {
    json j;
    j["bounds"] = rect_to(env.bounds());
    j["obstacles"] = json::array();
    for (const auto& o : env.obstacles())
        j["obstacles"].push_back(rect_to(o));
    if (const auto* arm = std::get_if<ArmModel>(&robot)) {
        json r;
        r["type"] = "arm7";
        r["base"] = {arm->base().x, arm->base().y};
        r["links"] = arm->link_lengths();
        r["limits"] = json::array();
        for (const auto& l : arm->limits())
            r["limits"].push_back({l.lo, l.hi});
        j["robot"] = r;
    } else {
        j["robot"] = {{"type", "point"}};
    }
    return j;
}

Scene scene_from_json(const nlohmann::json& j) {
    return wrap([&] {
        const Rect bounds = rect_from(j.at("bounds"));
        std::vector<Rect> obstacles;
        for (const auto& o : j.at("obstacles"))
            obstacles.push_back(rect_from(o));
        Robot robot = PointRobot{};
        if (j.contains("robot")) {
            const auto& r = j.at("robot");
            const auto type = r.at("type").get<std::string>();
            if (type == "arm7") {
                const auto links = r.at("links").get<std::vector<double>>();
                const auto& limits = r.at("limits");
                if (links.size() != ArmModel::kJoints || limits.size() != ArmModel::kJoints)
                    throw FormatError("arm7 robot needs 7 links and 7 joint limits");
                std::array<double, ArmModel::kJoints> l{};
                std::array<JointLimit, ArmModel::kJoints> lim{};
                for (std::size_t k = 0; k < ArmModel::kJoints; ++k) {
                    l[k] = links[k];
                    lim[k] = {limits[k].at(0).get<double>(), limits[k].at(1).get<double>()};
                }
                robot = ArmModel({r.at("base").at(0).get<double>(), r.at("base").at(1).get<double>()}, l, lim);
            } else if (type != "point") {
                throw FormatError("unknown robot type '" + type + "'");
            }
        }
        return Scene{Environment(bounds, std::move(obstacles)), std::move(robot)};
    });
}

nlohmann::json problems_to_json(const std::vector<ProblemRecord>& problems) {
    json j;
    j["problems"] = json::array();
    for (const auto& p : problems) {
        json e;
        e["id"] = p.id;
        e["seed"] = p.seed;
        e["environment"] = scene_to_json(p.problem.environment(), p.problem.robot());
        e["start"] = config_to(p.problem.start());
        e["goal"] = config_to(p.problem.goal());
        j["problems"].push_back(std::move(e));
    }
    return j;
}

std::vector<ProblemRecord> problems_from_json(const nlohmann::json& j) {
    return wrap([&] {
        std::vector<ProblemRecord> out;
        for (const auto& e : j.at("problems")) {
            Scene scene = scene_from_json(e.at("environment"));
            out.push_back({e.at("id").get<std::string>(), e.value("seed", std::uint64_t{0}),
                           PlanningProblem(config_from(e.at("start")), config_from(e.at("goal")),
                                           std::move(scene.environment), std::move(scene.robot))});
        }
        return out;
    });
}

nlohmann::json path_to_json(const Path& path) {
    json j;
    j["waypoints"] = json::array();
    for (const auto& q : path.waypoints())
        j["waypoints"].push_back(config_to(q));
    return j;
}

Path path_from_json(const nlohmann::json& j) {
    return wrap([&] {
        std::vector<Configuration> w;
        for (const auto& q : j.at("waypoints"))
            w.push_back(config_from(q));
        return Path(std::move(w));
    });
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NotFoundError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace csrrt
