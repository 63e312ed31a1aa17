#include "csrrt/svg.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace csrrt {
namespace {

constexpr double kCanvas = 600.0;

class Canvas {
public:
    Canvas(std::ostream& out, const Rect& bounds)
        : out_(out), bounds_(bounds), scale_(kCanvas / std::max(bounds.width(), bounds.height())) {}

    [[nodiscard]] double px(double x) const { return (x - bounds_.lo.x) * scale_; }
    [[nodiscard]] double py(double y) const { return (bounds_.hi.y - y) * scale_; }

    void raw(const std::string& s) { out_ << s; }

    void header() {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(bounds_.width() * scale_) << "\" height=\""
             << num(bounds_.height() * scale_) << "\" viewBox=\"0 0 " << num(bounds_.width() * scale_) << ' '
             << num(bounds_.height() * scale_) << "\">\n";
    }

    void rect(const Rect& r, const char* style) {
        out_ << "<rect x=\"" << num(px(r.lo.x)) << "\" y=\"" << num(py(r.hi.y)) << "\" width=\""
             << num(r.width() * scale_) << "\" height=\"" << num(r.height() * scale_) << "\" " << style << "/>\n";
    }

    void line(Vec2 a, Vec2 b, const char* style) {
        out_ << "<line x1=\"" << num(px(a.x)) << "\" y1=\"" << num(py(a.y)) << "\" x2=\"" << num(px(b.x))
             << "\" y2=\"" << num(py(b.y)) << "\" " << style << "/>\n";
    }

    void circle(Vec2 c, double radius_px, const char* style) {
        out_ << "<circle cx=\"" << num(px(c.x)) << "\" cy=\"" << num(py(c.y)) << "\" r=\"" << num(radius_px) << "\" "
             << style << "/>\n";
    }

    template <typename Points>
    void polyline(const Points& pts, const char* style) {
        out_ << "<polyline points=\"";
        bool first = true;
        for (const Vec2& p : pts) {
            out_ << (first ? "" : " ") << num(px(p.x)) << ',' << num(py(p.y));
            first = false;
        }
        out_ << "\" " << style << "/>\n";
    }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        std::string s = buf;
        if (s == "-0.00")
            s = "0.00";
        return s;
    }

private:
    std::ostream& out_;
    Rect bounds_;
    double scale_;
};

Vec2 point_of(const Configuration& q) { return {q[0], q[1]}; }

} // namespace

void render_svg(std::ostream& out, const Environment& env, const Robot& robot, const SvgOverlays& overlays) {
    Canvas c(out, env.bounds());
    c.header();
    c.rect(env.bounds(), "fill=\"white\" stroke=\"black\" stroke-width=\"2\"");
    for (const Rect& r : env.obstacles())
        c.rect(r, "fill=\"#404040\"");

    const ArmModel* arm = std::get_if<ArmModel>(&robot);
    if (arm) {
        auto pose = [&](const Configuration& q, const char* style) {
            const auto pts = forward_kinematics(*arm, q);
            c.polyline(pts, style);
        };
        for (const auto& q : overlays.samples)
            pose(q, "fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1\" stroke-opacity=\"0.5\"");
        for (const auto& q : overlays.sources)
            pose(q, "fill=\"none\" stroke=\"#e377c2\" stroke-width=\"2\"");
        if (overlays.path) {
            for (const auto& q : overlays.path->waypoints())
                pose(q, "fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-opacity=\"0.6\"");
        }
        c.circle(arm->base(), 5.0, "fill=\"black\"");
        c.raw("</svg>\n");
        return;
    }

    if (overlays.roadmap) {
        const Roadmap& g = *overlays.roadmap;
        for (const auto& [u, v] : g.edge_list()) {
            c.line(point_of(g.vertex(u)), point_of(g.vertex(v)),
                   g.is_validated(u, v) ? "stroke=\"#9ecae1\" stroke-width=\"1\""
                                        : "stroke=\"#9ecae1\" stroke-width=\"1\" stroke-dasharray=\"3,3\"");
        }
        for (const auto& q : g.vertices())
            c.circle(point_of(q), 2.0, "fill=\"#3182bd\"");
    }
    for (const Tree* t : overlays.trees) {
        for (std::size_t i = 0; i < t->size(); ++i) {
            if (auto p = t->parent(vertex_id(i)))
                c.line(point_of(t->vertex(*p)), point_of(t->vertex(vertex_id(i))),
                       "stroke=\"#ff7f0e\" stroke-width=\"1\"");
        }
    }
    for (const auto& q : overlays.trace)
        c.circle(point_of(q), 1.5, "fill=\"#ff7f0e\"");
    for (const auto& q : overlays.samples)
        c.circle(point_of(q), 3.0, "fill=\"#2ca02c\"");
    for (const auto& q : overlays.sources)
        c.circle(point_of(q), 6.0, "fill=\"#e377c2\" stroke=\"black\" stroke-width=\"1\"");
    if (overlays.path) {
        std::vector<Vec2> pts;
        for (const auto& q : overlays.path->waypoints())
            pts.push_back(point_of(q));
        c.polyline(pts, "fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"");
        for (const Vec2& p : pts)
            c.circle(p, 2.5, "fill=\"#d62728\" class=\"waypoint\"");
    }
    c.raw("</svg>\n");
}

void render_svg(const std::filesystem::path& file, const Environment& env, const Robot& robot,
                const SvgOverlays& overlays) {
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    render_svg(out, env, robot, overlays);
    if (!out)
        throw std::runtime_error("failed writing " + file.string());
}

} // namespace csrrt
