#pragma once

#include "csrrt/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace csrrt {

/// Row-major binary raster of a workspace. Row 0 is the minimum-y row.
class OccupancyGrid {
public:
    OccupancyGrid(std::size_t width, std::size_t height, Vec2 origin, double cell_size,
                  std::vector<std::uint8_t> cells);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t height() const noexcept { return height_; }
    [[nodiscard]] Vec2 origin() const noexcept { return origin_; }
    [[nodiscard]] double cell_size() const noexcept { return cell_size_; }
    [[nodiscard]] const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

    [[nodiscard]] bool at(std::size_t row, std::size_t col) const { return cells_.at(row * width_ + col) != 0; }
    [[nodiscard]] std::size_t occupied_count() const noexcept;

    friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    Vec2 origin_;
    double cell_size_;
    std::vector<std::uint8_t> cells_;
};

/// A cell is occupied iff its closed rectangle touches any obstacle.
/// Cells are square; cell_size = bounds width / width, so non-square
/// bounds need matching width/height ratios.
[[nodiscard]] OccupancyGrid rasterize(const Environment& env, std::size_t width, std::size_t height);

/// Max-pool over non-overlapping kernel x kernel windows (kernel == stride).
/// Dimensions must be divisible by the stride.
[[nodiscard]] OccupancyGrid preprocess_grid(const OccupancyGrid& grid, std::size_t kernel, std::size_t stride);

/// JSON grid document: width, height, cells (flat 0/1, row-major), plus origin and cell_size.
[[nodiscard]] std::string grid_to_json(const OccupancyGrid& grid);
[[nodiscard]] OccupancyGrid grid_from_json(const std::string& text);

} // namespace csrrt
