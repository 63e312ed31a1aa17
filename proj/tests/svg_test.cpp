#include "csrrt/generators.hpp"
#include "csrrt/io.hpp"
#include "csrrt/svg.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace csrrt;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1))
        ++n;
    return n;
}

std::string fixture_svg() {
    const Environment env({{0, 0}, {10, 5}}, {{{4, 0}, {5, 2}}, {{4, 2.4}, {5, 5}}});
    Roadmap g(2);
    const VertexId a = g.add_vertex({1, 1});
    const VertexId b = g.add_vertex({2, 3});
    const VertexId c = g.add_vertex({8, 3});
    g.add_edge(a, b);
    g.add_unvalidated_edge(b, c);
    Tree t(Configuration{4.5, 2.2});
    t.add({3.8, 2.2}, t.root());
    SvgOverlays overlays;
    overlays.roadmap = &g;
    overlays.trees = {&t};
    overlays.samples = {{6, 4}};
    overlays.sources = {{4.5, 2.2}};
    overlays.trace = {{7, 1}};
    overlays.path = Path({{1, 1}, {3.8, 2.2}, {5.2, 2.2}, {9, 4}});
    std::ostringstream out;
    render_svg(out, env, PointRobot{}, overlays);
    return out.str();
}

} // namespace

TEST_CASE("empty environment renders only the bounds") {
    std::ostringstream out;
    render_svg(out, Environment({{0, 0}, {10, 10}}, {}), PointRobot{});
    const std::string svg = out.str();
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "<rect") == 1);
    CHECK(count(svg, "<circle") == 0);
    CHECK(count(svg, "<polyline") == 0);
    CHECK(count(svg, "<line") == 0);
}

TEST_CASE("path overlay draws one marker per waypoint") {
    SvgOverlays overlays;
    overlays.path = Path({{1, 1}, {2, 2}, {3, 1}, {4, 4}, {9, 9}});
    std::ostringstream out;
    render_svg(out, Environment({{0, 0}, {10, 10}}, {{{5, 5}, {6, 6}}}), PointRobot{}, overlays);
    CHECK(count(out.str(), "class=\"waypoint\"") == 5);
    CHECK(count(out.str(), "<polyline") == 1);
}

TEST_CASE("arm poses render as polylines") {
    GenParams p;
    p.workspace = {{-7.5, 0}, {7.5, 7.5}};
    p.n_walls = 1;
    const Environment env = generate_environment(1, Domain::r7_arm, p);
    SvgOverlays overlays;
    overlays.path = Path({Configuration{1.5, 0, 0, 0, 0, 0, 0}, Configuration{1.2, 0.1, 0, 0, 0, 0, 0}});
    std::ostringstream out;
    render_svg(out, env, robot_for(Domain::r7_arm, p), overlays);
    CHECK(count(out.str(), "<polyline") >= 2);
}

TEST_CASE("svg matches the golden file") {
    const std::filesystem::path golden = std::filesystem::path(CSRRT_GOLDEN_DIR) / "fixture.svg";
    const std::string svg = fixture_svg();
    if (std::getenv("CSRRT_UPDATE_GOLDEN"))
        write_text_file(golden, svg);
    CHECK(read_text_file(golden) == svg);
}

TEST_CASE("unwritable svg target") {
    CHECK_THROWS_AS(render_svg(std::filesystem::path("/nonexistent/dir/out.svg"), Environment({{0, 0}, {1, 1}}, {}),
                               PointRobot{}),
                    std::runtime_error);
}
