#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "gridsearch/io/csv.hpp"
#include "gridsearch/trace.hpp"

namespace gridsearch::io {

struct Rgb {
  std::uint8_t r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Amplitude histogram colouring: 0.15-wide bins over [-0.5, 1.0], values
/// below the floor clamped into bin 0, the top edge capped into bin 9.
/// Colours run from dark navy (bin 0) through light blue and lime green to
/// white (bin 9), with strictly increasing luminance.
struct HeatmapStyle {
  static constexpr std::size_t bin_count = 10;
  double bin_width = 0.15;
  double floor = -0.5;
  double ceiling = 1.0;
  std::array<Rgb, bin_count> colors{{
      {10, 10, 30},
      {30, 30, 100},
      {40, 60, 170},
      {50, 100, 210},
      {100, 170, 240},  // light blue
      {90, 200, 150},
      {150, 230, 60},  // lime green
      {230, 230, 80},
      {255, 240, 170},
      {255, 255, 255},
  }};

  std::size_t bin_index(double amplitude) const noexcept {
    const double a = std::clamp(amplitude, floor, ceiling);
    const auto idx = static_cast<std::size_t>(std::floor((a - floor) / bin_width));
    return std::min(idx, bin_count - 1);
  }

  Rgb color(double amplitude) const noexcept { return colors[bin_index(amplitude)]; }
};

/// Binary portable pixmap (P6); each cell becomes a scale x scale block.
inline void emit_heatmap(const AmplitudeGrid& grid, const HeatmapStyle& style,
                         const std::filesystem::path& path, std::size_t scale = 1) {
  if (scale == 0) throw std::invalid_argument("heatmap scale must be positive");
  const std::size_t w = grid.side * scale;
  std::string pixels;
  pixels.reserve(w * w * 3);
  for (std::size_t y = 0; y < w; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto c = style.color(grid.at(y / scale, x / scale));
      pixels.push_back(static_cast<char>(c.r));
      pixels.push_back(static_cast<char>(c.g));
      pixels.push_back(static_cast<char>(c.b));
    }
  }
  auto out = open_output(path, std::ios::out | std::ios::binary);
  out << "P6\n" << w << ' ' << w << "\n255\n";
  out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  finish(out, path);
}

}  // namespace gridsearch::io
