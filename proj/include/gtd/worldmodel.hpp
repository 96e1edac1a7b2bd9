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

// Microworld data model: entities with shape, color, position, size and
// rotation, plus the constrained random sampler that builds worlds for each
// dataset variant.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gtd/json_util.hpp"
#include "gtd/random.hpp"

namespace gtd {

enum class Shape : std::uint8_t {
  square,
  rectangle,
  triangle,
  pentagon,
  cross,
  circle,
  semicircle,
  ellipse
};

enum class Color : std::uint8_t { red, green, blue, yellow, magenta, cyan, gray };

inline constexpr std::array<Shape, 8> kShapes = {
    Shape::square, Shape::rectangle, Shape::triangle,   Shape::pentagon,
    Shape::cross,  Shape::circle,    Shape::semicircle, Shape::ellipse};

inline constexpr std::array<Color, 7> kColors = {
    Color::red,     Color::green, Color::blue, Color::yellow,
    Color::magenta, Color::cyan,  Color::gray};

inline constexpr std::string_view name(Shape s) {
  constexpr std::array<std::string_view, 8> names = {
      "square", "rectangle", "triangle",   "pentagon",
      "cross",  "circle",    "semicircle", "ellipse"};
  return names[static_cast<std::size_t>(s)];
}

inline constexpr std::string_view name(Color c) {
  constexpr std::array<std::string_view, 7> names = {
      "red", "green", "blue", "yellow", "magenta", "cyan", "gray"};
  return names[static_cast<std::size_t>(c)];
}

inline std::optional<Shape> shape_from_name(std::string_view word) {
  for (Shape s : kShapes)
    if (name(s) == word) return s;
  return std::nullopt;
}

inline std::optional<Color> color_from_name(std::string_view word) {
  for (Color c : kColors)
    if (name(c) == word) return c;
  return std::nullopt;
}

// The six dataset variants.
enum class Task : std::uint8_t {
  existential_oneshape,
  existential_multishapes,
  spatial_twoshapes,
  spatial_multishapes,
  quant_count,
  quant_ratio
};

inline constexpr std::array<Task, 6> kTasks = {
    Task::existential_oneshape, Task::existential_multishapes,
    Task::spatial_twoshapes,    Task::spatial_multishapes,
    Task::quant_count,          Task::quant_ratio};

inline constexpr std::string_view name(Task t) {
  constexpr std::array<std::string_view, 6> names = {
      "existential-oneshape", "existential-multishapes", "spatial-twoshapes",
      "spatial-multishapes",  "quant-count",             "quant-ratio"};
  return names[static_cast<std::size_t>(t)];
}

inline std::optional<Task> task_from_name(std::string_view word) {
  for (Task t : kTasks)
    if (name(t) == word) return t;
  return std::nullopt;
}

inline bool is_spatial(Task t) {
  return t == Task::spatial_twoshapes || t == Task::spatial_multishapes;
}

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

struct Extent {
  double w = 0;
  double h = 0;
  bool operator==(const Extent&) const = default;
};

// Axis-aligned box in unit canvas coordinates, y growing downward.
struct Box {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return std::max(0.0, width()) * std::max(0.0, height()); }
  bool operator==(const Box&) const = default;
};

struct Entity {
  Shape shape = Shape::square;
  Color color = Color::red;
  Point center;
  Extent size;
  double rotation = 0;  // radians

  bool operator==(const Entity&) const = default;
};

struct WorldModel {
  std::string id;
  std::vector<Entity> entities;

  bool operator==(const WorldModel&) const = default;
};

inline constexpr double kMinEntitySize = 0.08;
inline constexpr double kMaxEntitySize = 0.25;
inline constexpr double kDefaultOverlapThreshold = 0.25;
inline constexpr int kMaxPlacementAttempts = 1000;

struct WorldSpec {
  int min_entities = 1;
  int max_entities = 1;
  double overlap_threshold = kDefaultOverlapThreshold;
  Task task = Task::existential_oneshape;

  void validate() const {
    if (min_entities < 1 || max_entities < min_entities)
      throw std::invalid_argument("WorldSpec: invalid entity count range");
    if (!(overlap_threshold >= 0.0 && overlap_threshold < 1.0))
      throw std::invalid_argument("WorldSpec: overlap threshold must be in [0,1)");
  }

  static WorldSpec for_task(Task task) {
    switch (task) {
      case Task::existential_oneshape:
        return {1, 1, kDefaultOverlapThreshold, task};
      case Task::spatial_twoshapes:
        return {2, 2, kDefaultOverlapThreshold, task};
      default:
        return {4, 8, kDefaultOverlapThreshold, task};
    }
  }
};

// Raised when a sampler exhausts its attempt budget.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<Point> regular_polygon(int sides, double radius,
                                          double start_angle, Point offset = {}) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double a = start_angle + 2.0 * std::numbers::pi * k / sides;
    pts.push_back({offset.x + radius * std::cos(a), offset.y + radius * std::sin(a)});
  }
  return pts;
}

inline constexpr int kConicVertices = 96;

}  // namespace detail

// Outline of a shape inside the local box [-0.5,0.5]^2, before scaling by the
// entity size. Conics are approximated by fine polygons; the same outline is
// used for bounding boxes and rasterization so both always agree.
inline const std::vector<Point>& local_outline(Shape shape) {
  static const std::array<std::vector<Point>, 8> outlines = [] {
    std::array<std::vector<Point>, 8> o;
    const double h = 0.5, t = 1.0 / 6.0;
    o[static_cast<int>(Shape::square)] = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
    o[static_cast<int>(Shape::rectangle)] = o[static_cast<int>(Shape::square)];
    o[static_cast<int>(Shape::triangle)] = {{0, -h}, {h, h}, {-h, h}};
    o[static_cast<int>(Shape::pentagon)] =
        detail::regular_polygon(5, h, -std::numbers::pi / 2);
    o[static_cast<int>(Shape::cross)] = {{-t, -h}, {t, -h}, {t, -t}, {h, -t},
                                         {h, t},   {t, t},  {t, h},  {-t, h},
                                         {-t, t},  {-h, t}, {-h, -t}, {-t, -t}};
    o[static_cast<int>(Shape::circle)] =
        detail::regular_polygon(detail::kConicVertices, h, 0.0);
    o[static_cast<int>(Shape::ellipse)] = o[static_cast<int>(Shape::circle)];
    // Half-disc, flat edge down at rotation 0, centred vertically in the box.
    std::vector<Point> half;
    const int arc = detail::kConicVertices / 2;
    for (int k = 0; k <= arc; ++k) {
      const double a = std::numbers::pi + std::numbers::pi * k / arc;
      half.push_back({h * std::cos(a), 0.25 + h * std::sin(a)});
    }
    o[static_cast<int>(Shape::semicircle)] = std::move(half);
    return o;
  }();
  return outlines[static_cast<std::size_t>(shape)];
}

// Outline vertices relative to the entity center (scaled then rotated).
inline std::vector<Point> relative_outline(Shape shape, Extent size, double rotation) {
  const double c = std::cos(rotation), s = std::sin(rotation);
  std::vector<Point> pts;
  const auto& local = local_outline(shape);
  pts.reserve(local.size());
  for (const Point& p : local) {
    const double u = p.x * size.w, v = p.y * size.h;
    pts.push_back({c * u - s * v, s * u + c * v});
  }
  return pts;
}

inline std::vector<Point> outline(const Entity& e) {
  auto pts = relative_outline(e.shape, e.size, e.rotation);
  for (Point& p : pts) {
    p.x += e.center.x;
    p.y += e.center.y;
  }
  return pts;
}

namespace detail {

inline Box extent_of(const std::vector<Point>& pts) {
  Box b{pts.front().x, pts.front().y, pts.front().x, pts.front().y};
  for (const Point& p : pts) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

}  // namespace detail

inline Box bounding_box(const Entity& e) { return detail::extent_of(outline(e)); }

// Intersection area of the two bounding boxes over the smaller box's area.
inline double overlap_ratio(const Entity& a, const Entity& b) {
  const Box ba = bounding_box(a), bb = bounding_box(b);
  const Box inter{std::max(ba.x0, bb.x0), std::max(ba.y0, bb.y0),
                  std::min(ba.x1, bb.x1), std::min(ba.y1, bb.y1)};
  if (inter.width() <= 0 || inter.height() <= 0) return 0.0;
  const double smaller = std::min(ba.area(), bb.area());
  if (smaller <= 0) return 0.0;
  return std::clamp(inter.area() / smaller, 0.0, 1.0);
}

inline bool inside_unit_square(const Box& b) {
  return b.x0 >= 0.0 && b.y0 >= 0.0 && b.x1 <= 1.0 && b.y1 <= 1.0;
}

namespace detail {

inline bool is_elongated(Shape s) { return s == Shape::rectangle || s == Shape::ellipse; }

inline Entity sample_entity(Rng& rng) {
  using json::quantize6;
  Entity e;
  e.shape = rng.pick<Shape>(kShapes);
  e.color = rng.pick<Color>(kColors);
  if (is_elongated(e.shape)) {
    // Keep rectangles and ellipses visibly distinct from squares and circles.
    const double longer = rng.uniform(0.12, kMaxEntitySize);
    const double shorter = std::max(kMinEntitySize, longer * rng.uniform(0.5, 0.75));
    e.size = {quantize6(longer), quantize6(shorter)};
  } else {
    const double side = quantize6(rng.uniform(kMinEntitySize, kMaxEntitySize));
    e.size = {side, side};
  }
  e.rotation = quantize6(rng.uniform(0.0, 2.0 * std::numbers::pi));
  if (e.rotation >= 2.0 * std::numbers::pi) e.rotation = 0.0;

  const Box rel = extent_of(relative_outline(e.shape, e.size, e.rotation));
  // Margin of one quantum keeps the rounded center inside the canvas.
  constexpr double q = 2e-6;
  e.center.x = quantize6(rng.uniform(-rel.x0 + q, 1.0 - rel.x1 - q));
  e.center.y = quantize6(rng.uniform(-rel.y0 + q, 1.0 - rel.y1 - q));
  return e;
}

}  // namespace detail

// Samples a world under the spec's count and overlap constraints. Every float
// is quantized to 1e-6 so the JSON-lines form reproduces the world exactly.
inline WorldModel sample_world(const WorldSpec& spec, Rng& rng, std::string id = {}) {
  spec.validate();
  WorldModel world;
  world.id = std::move(id);
  const int count = rng.integer(spec.min_entities, spec.max_entities);
  world.entities.reserve(static_cast<std::size_t>(count));
  int attempts = 0;
  while (static_cast<int>(world.entities.size()) < count) {
    if (++attempts > kMaxPlacementAttempts)
      throw InfeasibleError("sample_world: overlap constraint not satisfiable after " +
                            std::to_string(kMaxPlacementAttempts) + " attempts");
    Entity candidate = detail::sample_entity(rng);
    const bool fits = std::all_of(
        world.entities.begin(), world.entities.end(), [&](const Entity& other) {
          return overlap_ratio(candidate, other) <= spec.overlap_threshold;
        });
    if (fits) world.entities.push_back(candidate);
  }
  return world;
}

// One JSON object on a single line, floats at 6 decimals.
inline std::string to_json_line(const WorldModel& world) {
  using json::fixed6;
  std::string out = "{\"id\":" + json::quote(world.id) + ",\"entities\":[";
  for (std::size_t i = 0; i < world.entities.size(); ++i) {
    const Entity& e = world.entities[i];
    if (i) out += ',';
    out += "{\"shape\":\"" + std::string(name(e.shape)) + "\",\"color\":\"" +
           std::string(name(e.color)) + "\",\"center\":{\"x\":" + fixed6(e.center.x) +
           ",\"y\":" + fixed6(e.center.y) + "},\"size\":{\"w\":" + fixed6(e.size.w) +
           ",\"h\":" + fixed6(e.size.h) + "},\"rotation\":" + fixed6(e.rotation) + "}";
  }
  out += "]}";
  return out;
}

inline WorldModel world_from_json(const nlohmann::json& j) {
  WorldModel world;
  world.id = j.at("id").get<std::string>();
  for (const auto& je : j.at("entities")) {
    Entity e;
    const auto shape = shape_from_name(je.at("shape").get<std::string>());
    const auto color = color_from_name(je.at("color").get<std::string>());
    if (!shape || !color) throw std::invalid_argument("world record: unknown shape or color");
    e.shape = *shape;
    e.color = *color;
    e.center = {je.at("center").at("x").get<double>(), je.at("center").at("y").get<double>()};
    e.size = {je.at("size").at("w").get<double>(), je.at("size").at("h").get<double>()};
    e.rotation = je.at("rotation").get<double>();
    world.entities.push_back(e);
  }
  if (world.entities.empty()) throw std::invalid_argument("world record: no entities");
  return world;
}

inline WorldModel world_from_json_line(std::string_view line) {
  return world_from_json(nlohmann::json::parse(line));
}

}  // namespace gtd
