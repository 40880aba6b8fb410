#pragma once

// Snapshot rendering: one pixel per cell, binary PPM (P6). Initially occupied
// cells are black, unoccupied cells white; a cell born at time t > 0 gets the
// grey level 64 + 160*((t-1) mod k)/(k-1), cycling with period k.

#include <cstdint>
#include <string>
#include <vector>

#include "ydgrow/grid.hpp"

namespace ydgrow {

struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;  // 3 bytes per pixel, row 0 at top
};

// Renders the configuration with row h-1 at the top of the image.
Image render_snapshot(const Configuration& cfg, int shade_period = 8);

std::string encode_ppm(const Image& img);

void write_ppm(const Image& img, const std::string& path);

}  // namespace ydgrow
