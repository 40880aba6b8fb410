#include "ydgrow/render.hpp"

#include <fstream>

#include "ydgrow/error.hpp"

namespace ydgrow {

Image render_snapshot(const Configuration& cfg, int shade_period) {
  if (shade_period < 2) fail(Errc::BadConfig, "shade period must be >= 2");
  Image img;
  img.width = cfg.width();
  img.height = cfg.height();
  img.rgb.resize(size_t(img.width) * img.height * 3);
  size_t at = 0;
  for (int y = img.height - 1; y >= 0; --y) {
    for (int x = 0; x < img.width; ++x) {
      uint8_t level = 255;
      if (cfg.get(x, y)) {
        int32_t t = cfg.birth_time(x, y);
        level = t == 0 ? 0
                       : uint8_t(64 + 160 * ((t - 1) % shade_period) / (shade_period - 1));
      }
      img.rgb[at++] = level;
      img.rgb[at++] = level;
      img.rgb[at++] = level;
    }
  }
  return img;
}

std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

void write_ppm(const Image& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Errc::BadConfig, "cannot open " + path + " for writing");
  std::string bytes = encode_ppm(img);
  f.write(bytes.data(), std::streamsize(bytes.size()));
  if (!f) fail(Errc::BadConfig, "write failed: " + path);
}

}  // namespace ydgrow
