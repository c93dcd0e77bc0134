#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "glasso/error.hpp"
#include "glasso/experiments.hpp"

namespace glasso {
namespace {

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::io_failure, "cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  require(static_cast<bool>(out), ErrorCode::io_failure, "write failed: " + path.string());
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string phase_csv(const PhaseGrid& grid) {
  std::string out = "s,alpha,trials,successes,rate,mean_precision,mean_recall\n";
  for (Index si = 0; si < grid.config.s_values.size(); ++si) {
    for (Index ai = 0; ai < grid.config.alpha_values.size(); ++ai) {
      const PhaseCell& c = grid.cell(si, ai);
      out += std::to_string(grid.config.s_values[si]) + ',' +
             format_double(grid.config.alpha_values[ai]) + ',' + std::to_string(c.trials) + ',' +
             std::to_string(c.successes) + ',' + format_double(c.rate()) + ',' +
             format_double(c.mean_precision) + ',' + format_double(c.mean_recall) + '\n';
    }
  }
  return out;
}

std::string phase_pgm(const PhaseGrid& grid) {
  const Index w = grid.config.s_values.size(), h = grid.config.alpha_values.size();
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  for (Index row = 0; row < h; ++row) {
    const Index ai = h - 1 - row;
    for (Index si = 0; si < w; ++si) {
      const long v = std::lround(255.0 * grid.cell(si, ai).rate());
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(v, 0L, 255L))));
    }
  }
  return out;
}

void render(const PhaseGrid& grid, const std::filesystem::path& csv_path,
            const std::filesystem::path& pgm_path) {
  write_file(csv_path, phase_csv(grid));
  write_file(pgm_path, phase_pgm(grid));
}

}  // namespace glasso
