#include "csrrt/occupancy_grid.hpp"

#include "csrrt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace csrrt {

OccupancyGrid::OccupancyGrid(std::size_t width, std::size_t height, Vec2 origin, double cell_size,
                             std::vector<std::uint8_t> cells)
    : width_(width), height_(height), origin_(origin), cell_size_(cell_size), cells_(std::move(cells)) {
    if (width_ == 0 || height_ == 0)
        throw DomainError("grid dimensions must be positive");
    if (!(cell_size_ > 0.0))
        throw DomainError("grid cell size must be positive");
    if (cells_.size() != width_ * height_)
        throw DomainError("grid cell count does not match width * height");
    for (auto& c : cells_) {
        if (c > 1)
            throw DomainError("grid cells must be 0 or 1");
    }
}

std::size_t OccupancyGrid::occupied_count() const noexcept {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

OccupancyGrid rasterize(const Environment& env, std::size_t width, std::size_t height) {
    if (width == 0 || height == 0)
        throw DomainError("grid dimensions must be positive");
    const Rect& b = env.bounds();
    const double cell_w = b.width() / static_cast<double>(width);
    const double cell_h = b.height() / static_cast<double>(height);
    std::vector<std::uint8_t> cells(width * height, 0);
    for (std::size_t row = 0; row < height; ++row) {
        for (std::size_t col = 0; col < width; ++col) {
            const Rect cell{{b.lo.x + cell_w * static_cast<double>(col), b.lo.y + cell_h * static_cast<double>(row)},
                            {b.lo.x + cell_w * static_cast<double>(col + 1),
                             b.lo.y + cell_h * static_cast<double>(row + 1)}};
            const bool hit = std::any_of(env.obstacles().begin(), env.obstacles().end(),
                                         [&](const Rect& o) { return cell.intersects(o); });
            cells[row * width + col] = hit ? 1 : 0;
        }
    }
    return OccupancyGrid(width, height, b.lo, cell_w, std::move(cells));
}

OccupancyGrid preprocess_grid(const OccupancyGrid& grid, std::size_t kernel, std::size_t stride) {
    if (stride == 0 || kernel == 0)
        throw DomainError("kernel and stride must be positive");
    if (kernel != stride)
        throw DomainError("only non-overlapping windows are supported (kernel must equal stride)");
    if (grid.width() % stride != 0 || grid.height() % stride != 0)
        throw DomainError("grid dimensions must be divisible by the stride");
    const std::size_t out_w = grid.width() / stride;
    const std::size_t out_h = grid.height() / stride;
    std::vector<std::uint8_t> out(out_w * out_h, 0);
    const auto& in = grid.cells();
    for (std::size_t row = 0; row < grid.height(); ++row) {
        for (std::size_t col = 0; col < grid.width(); ++col) {
            if (in[row * grid.width() + col] != 0)
                out[(row / stride) * out_w + col / stride] = 1;
        }
    }
    return OccupancyGrid(out_w, out_h, grid.origin(), grid.cell_size() * static_cast<double>(stride), std::move(out));
}

std::string grid_to_json(const OccupancyGrid& grid) {
    nlohmann::json j;
    j["width"] = grid.width();
    j["height"] = grid.height();
    j["origin"] = {grid.origin().x, grid.origin().y};
    j["cell_size"] = grid.cell_size();
    std::vector<int> cells(grid.cells().begin(), grid.cells().end());
    j["cells"] = cells;
    return j.dump();
}

OccupancyGrid grid_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        const auto width = j.at("width").get<std::size_t>();
        const auto height = j.at("height").get<std::size_t>();
        Vec2 origin{0.0, 0.0};
        double cell_size = 1.0;
        if (j.contains("origin"))
            origin = {j["origin"].at(0).get<double>(), j["origin"].at(1).get<double>()};
        if (j.contains("cell_size"))
            cell_size = j["cell_size"].get<double>();
        std::vector<std::uint8_t> cells;
        cells.reserve(j.at("cells").size());
        for (const auto& c : j.at("cells")) {
            const int v = c.get<int>();
            if (v != 0 && v != 1)
                throw FormatError("grid cells must be 0 or 1");
            cells.push_back(static_cast<std::uint8_t>(v));
        }
        return OccupancyGrid(width, height, origin, cell_size, std::move(cells));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid grid document: ") + e.what());
    } catch (const DomainError& e) {
        throw FormatError(std::string("invalid grid document: ") + e.what());
    }
}

} // namespace csrrt
