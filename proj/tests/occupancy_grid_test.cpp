#include "support.hpp"

#include "csrrt/errors.hpp"
#include "csrrt/sampling.hpp"

#include <doctest.h>

using namespace csrrt;

namespace {

OccupancyGrid random_grid(Rng& rng, std::size_t w, std::size_t h, double density) {
    std::vector<std::uint8_t> cells(w * h);
    for (auto& c : cells)
        c = rng.uniform() < density;
    return OccupancyGrid(w, h, {0, 0}, 1.0, cells);
}

} // namespace

TEST_CASE("rasterize trivial environments") {
    const Rect unit{{0, 0}, {1, 1}};
    const OccupancyGrid empty = rasterize(Environment(unit, {}), 8, 8);
    CHECK(empty.occupied_count() == 0);
    const OccupancyGrid full = rasterize(Environment(unit, {unit}), 8, 8);
    CHECK(full.occupied_count() == 64);
}

TEST_CASE("rasterize marks every closed cell touching the obstacle") {
    const Rect unit{{0, 0}, {1, 1}};
    const Rect quarter{{0, 0.5}, {0.5, 1}};
    const OccupancyGrid g = rasterize(Environment(unit, {quarter}), 4, 4);
    REQUIRE(g.width() == 4);
    REQUIRE(g.height() == 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const Rect cell{{c * 0.25, r * 0.25}, {(c + 1) * 0.25, (r + 1) * 0.25}};
            CHECK(g.at(r, c) == cell.intersects(quarter));
            CHECK(g.at(r, c) == (r >= 1 && c <= 2));
        }
}

TEST_CASE("preprocess_grid examples") {
    const OccupancyGrid zero(50, 50, {0, 0}, 0.2, std::vector<std::uint8_t>(2500, 0));
    const OccupancyGrid out = preprocess_grid(zero, 5, 5);
    CHECK(out.width() == 10);
    CHECK(out.height() == 10);
    CHECK(out.occupied_count() == 0);
    CHECK(out.cell_size() == doctest::Approx(1.0));

    std::vector<std::uint8_t> cells(2500, 0);
    cells[7 * 50 + 3] = 1;
    const OccupancyGrid one = preprocess_grid(OccupancyGrid(50, 50, {0, 0}, 0.2, cells), 5, 5);
    CHECK(one.occupied_count() == 1);
    CHECK(one.at(1, 0));
}

TEST_CASE("preprocess_grid rejects bad kernels") {
    const OccupancyGrid g(12, 10, {0, 0}, 1.0, std::vector<std::uint8_t>(120, 0));
    CHECK_THROWS_AS((void)preprocess_grid(g, 5, 5), DomainError);
    CHECK_THROWS_AS((void)preprocess_grid(g, 2, 1), DomainError);
    CHECK_THROWS_AS((void)preprocess_grid(g, 0, 0), DomainError);
}

TEST_CASE("preprocess_grid properties") {
    Rng rng(21, "grid-props");
    for (int trial = 0; trial < 50; ++trial) {
        const OccupancyGrid g = random_grid(rng, 20, 30, 0.05);
        CHECK(preprocess_grid(g, 1, 1) == g);
        for (std::size_t k : {1u, 2u, 5u, 10u}) {
            const OccupancyGrid p = preprocess_grid(g, k, k);
            CHECK(p.occupied_count() <= g.occupied_count());
            CHECK(p.cells() == oracle::window_max(g.cells(), 20, 30, k));
        }
        std::vector<std::uint8_t> more = g.cells();
        more[rng.below(more.size())] = 1;
        const OccupancyGrid denser(20, 30, {0, 0}, 1.0, more);
        const auto before = preprocess_grid(g, 5, 5).cells();
        const auto after = preprocess_grid(denser, 5, 5).cells();
        for (std::size_t i = 0; i < before.size(); ++i)
            CHECK(after[i] >= before[i]);
    }
}

TEST_CASE("rasterize then preprocess equals the window max of a per-cell oracle") {
    Rng rng(4, "raster");
    const Rect bounds{{0, 0}, {10, 10}};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rect> obstacles;
        const std::size_t n = rng.below(6);
        for (std::size_t k = 0; k < n; ++k) {
            const double x0 = rng.uniform(0, 9), y0 = rng.uniform(0, 9);
            obstacles.push_back({{x0, y0}, {std::min(10.0, x0 + rng.uniform(0.05, 3)), std::min(10.0, y0 + rng.uniform(0.05, 3))}});
        }
        const Environment env(bounds, obstacles);
        std::vector<std::uint8_t> expect(2500, 0);
        for (std::size_t r = 0; r < 50; ++r)
            for (std::size_t c = 0; c < 50; ++c) {
                const Rect cell{{c * 0.2, r * 0.2}, {(c + 1) * 0.2, (r + 1) * 0.2}};
                for (const Rect& o : obstacles)
                    expect[r * 50 + c] |= cell.intersects(o);
            }
        const OccupancyGrid g = rasterize(env, 50, 50);
        CHECK(g.cells() == expect);
        CHECK(preprocess_grid(g, 5, 5).cells() == oracle::window_max(expect, 50, 50, 5));
    }
}

TEST_CASE("grid document round-trips bit-exactly") {
    Rng rng(8, "grid-json");
    const OccupancyGrid g = random_grid(rng, 10, 6, 0.3);
    const std::string text = grid_to_json(g);
    CHECK(grid_from_json(text) == g);
    CHECK(grid_to_json(grid_from_json(text)) == text);
    CHECK_THROWS_AS((void)grid_from_json(R"({"width": 2, "height": 2, "cells": [0, 1, 1]})"), FormatError);
    CHECK_THROWS_AS((void)grid_from_json(R"({"width": 1, "height": 1, "cells": [2]})"), FormatError);
    CHECK_THROWS_AS((void)grid_from_json("not json"), FormatError);
}
