#pragma once

#include <filesystem>
#include <string>

#include "rifs/geometry.hpp"

namespace rifs {

/// Binary PPM (P6): "P6\n<w> <h>\n255\n" then one RGB triple per cell,
/// rows from the top of the window down. Occupied cells are black, empty
/// cells white. Throws PreconditionError for an empty grid.
std::string ppm_bytes(const GridSet& grid);
/// Throws IoError on write failure.
void write_ppm(const GridSet& grid, const std::filesystem::path& path);

/// "x,y" header, then one line per point with 17 significant digits.
std::string csv_text(const PointCloud& cloud);
void write_csv(const PointCloud& cloud, const std::filesystem::path& path);

/// Exact (round-trip) text for a double: 17 significant digits, %g style.
std::string format_double(double v);

}  // namespace rifs
