// Copyright 2026 The GTD Evaluation Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

#include "gtd/random.hpp"
#include "gtd/worldmodel.hpp"

namespace gtd {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kBackground{0, 0, 0};

inline constexpr std::array<Rgb, 7> kColorTable = {{
    {230, 50, 50},    // red
    {50, 200, 50},    // green
    {50, 90, 230},    // blue
    {230, 220, 50},   // yellow
    {220, 50, 220},   // magenta
    {50, 210, 220},   // cyan
    {150, 150, 150},  // gray
}};

inline constexpr Rgb table_color(Color c) { return kColorTable[static_cast<std::size_t>(c)]; }

inline constexpr int kDefaultCanvas = 64;

inline std::uint64_t color_table_hash() {
  std::string bytes;
  for (const Rgb& c : kColorTable) {
    bytes.push_back(static_cast<char>(c.r));
    bytes.push_back(static_cast<char>(c.g));
    bytes.push_back(static_cast<char>(c.b));
  }
  return fnv1a64(bytes);
}

// Row-major 8-bit RGB.
struct Bitmap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Bitmap() = default;
  Bitmap(int w, int h, Rgb fill = kBackground)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
      pixels[i] = fill.r;
      pixels[i + 1] = fill.g;
      pixels[i + 2] = fill.b;
    }
  }

  Rgb at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }

  void set(int x, int y, Rgb c) {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    pixels[i] = c.r;
    pixels[i + 1] = c.g;
    pixels[i + 2] = c.b;
  }

  bool operator==(const Bitmap&) const = default;
};

namespace detail {

// Even-odd rule; handles the non-convex cross.
inline bool point_in_polygon(const std::vector<Point>& poly, double x, double y) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > y) != (b.y > y)) {
      const double xi = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x < xi) inside = !inside;
    }
  }
  return inside;
}

inline Rgb jittered(Rgb c, Rng& rng) {
  // Scaling all channels by one factor scales the HSV value only.
  const double f = 1.0 + rng.uniform(-0.1, 0.1);
  auto ch = [f](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v * f), 0L, 255L));
  };
  return {ch(c.r), ch(c.g), ch(c.b)};
}

}  // namespace detail

// Fills every pixel whose center lies inside an entity outline. Entities are
// painted in list order, so later ones cover earlier ones.
inline Bitmap render(const WorldModel& world, int canvas_size = kDefaultCanvas,
                     Rng* jitter = nullptr) {
  if (canvas_size < 32) throw std::invalid_argument("render: canvas size must be >= 32");
  Bitmap bmp(canvas_size, canvas_size);
  const double scale = canvas_size;
  for (const Entity& e : world.entities) {
    auto poly = outline(e);
    for (Point& p : poly) {
      p.x *= scale;
      p.y *= scale;
    }
    const Box box = detail::extent_of(poly);
    const Rgb color = jitter ? detail::jittered(table_color(e.color), *jitter)
                             : table_color(e.color);
    const int x0 = std::max(0, static_cast<int>(std::floor(box.x0)));
    const int y0 = std::max(0, static_cast<int>(std::floor(box.y0)));
    const int x1 = std::min(canvas_size - 1, static_cast<int>(std::ceil(box.x1)));
    const int y1 = std::min(canvas_size - 1, static_cast<int>(std::ceil(box.y1)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        if (detail::point_in_polygon(poly, x + 0.5, y + 0.5)) bmp.set(x, y, color);
  }
  return bmp;
}

class PngError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_png(const std::filesystem::path& path, const Bitmap& bmp) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(bmp.width);
  image.height = static_cast<png_uint_32>(bmp.height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, bmp.pixels.data(),
                               bmp.width * 3, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw PngError("write_png " + path.string() + ": " + msg);
  }
}

inline std::vector<std::uint8_t> encode_png(const Bitmap& bmp) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(bmp.width);
  image.height = static_cast<png_uint_32>(bmp.height);
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, bmp.pixels.data(),
                                 bmp.width * 3, nullptr))
    throw PngError(std::string("encode_png: ") + image.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, bmp.pixels.data(),
                                 bmp.width * 3, nullptr))
    throw PngError(std::string("encode_png: ") + image.message);
  out.resize(size);
  return out;
}

inline Bitmap decode_png_image(png_image& image, const std::string& what) {
  image.format = PNG_FORMAT_RGB;
  Bitmap bmp(static_cast<int>(image.width), static_cast<int>(image.height));
  if (!png_image_finish_read(&image, nullptr, bmp.pixels.data(), bmp.width * 3, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw PngError(what + ": " + msg);
  }
  return bmp;
}

inline Bitmap read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw PngError("read_png " + path.string() + ": " + image.message);
  return decode_png_image(image, "read_png " + path.string());
}

inline Bitmap decode_png(std::span<const std::uint8_t> bytes) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw PngError(std::string("decode_png: ") + image.message);
  return decode_png_image(image, "decode_png");
}

}  // namespace gtd
