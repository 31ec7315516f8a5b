#include "rifs/export.hpp"

#include <charconv>
#include <fstream>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string ppm_bytes(const GridSet& grid) {
  if (grid.empty()) throw PreconditionError("refusing to export an empty grid");
  const int n = grid.resolution();
  std::string out = "P6\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * 3, static_cast<char>(255));
  std::size_t pos = header;
  for (int row = 0; row < n; ++row) {
    const int iy = n - 1 - row;
    for (int ix = 0; ix < n; ++ix, pos += 3)
      if (grid.occupied(CellIndex{ix, iy})) out[pos] = out[pos + 1] = out[pos + 2] = 0;
  }
  return out;
}

void write_ppm(const GridSet& grid, const std::filesystem::path& path) { write_file(path, ppm_bytes(grid)); }

std::string csv_text(const PointCloud& cloud) {
  std::string out = "x,y\n";
  out.reserve(out.size() + cloud.size() * 48);
  for (const auto& p : cloud.points()) {
    out += format_double(p.x);
    out += ',';
    out += format_double(p.y);
    out += '\n';
  }
  return out;
}

void write_csv(const PointCloud& cloud, const std::filesystem::path& path) { write_file(path, csv_text(cloud)); }

}  // namespace rifs
