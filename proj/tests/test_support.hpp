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

// Shared fixtures for the unit and acceptance suites.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <openssl/evp.h>

#include "gtd/gtd.hpp"

namespace gtd::testing {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "gtd") {
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

// Relative path -> SHA-256 of every regular file under root.
inline std::map<std::string, std::string> digest_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file())
      out[fs::relative(entry.path(), root).string()] = sha256_hex(read_file(entry.path()));
  return out;
}

inline Entity make_entity(Shape s, Color c, double x, double y, double size = 0.1) {
  return Entity{s, c, {x, y}, {size, size}, 0.0};
}

// --- hand-built worlds for the labeled sample captions ------------------------

struct LabeledCaption {
  std::string text;
  bool truthful;
};

struct CaptionedWorld {
  std::string label;
  WorldModel world;
  std::vector<LabeledCaption> captions;
};

// Eight shapes laid out so every multi-shape sample caption gets its labeled
// truth value: triangles left of the semicircle, which is right of the only
// circle and below the gray triangle; two of eight shapes are green
// rectangles; one yellow circle; one ellipse; no squares.
inline WorldModel multishape_world() {
  return {"multishapes",
          {make_entity(Shape::triangle, Color::gray, 0.20, 0.20),
           make_entity(Shape::triangle, Color::blue, 0.30, 0.60),
           make_entity(Shape::semicircle, Color::cyan, 0.80, 0.50),
           make_entity(Shape::circle, Color::yellow, 0.60, 0.30),
           make_entity(Shape::rectangle, Color::green, 0.50, 0.80),
           make_entity(Shape::rectangle, Color::green, 0.15, 0.85),
           make_entity(Shape::ellipse, Color::red, 0.45, 0.50),
           make_entity(Shape::pentagon, Color::magenta, 0.85, 0.15)}};
}

inline std::vector<CaptionedWorld> sample_caption_worlds() {
  std::vector<CaptionedWorld> out;
  out.push_back({"Existential-OneShape",
                 {"oneshape", {make_entity(Shape::cross, Color::green, 0.5, 0.5, 0.2)}},
                 {{"There is a green cross.", true},
                  {"A rectangle is green.", false},
                  {"There is a cyan shape.", false}}});
  out.push_back({"Existential-MultiShapes",
                 multishape_world(),
                 {{"A shape is a gray triangle.", true},
                  {"There is a square.", false},
                  {"There is a yellow shape.", true}}});
  out.push_back({"Spatial-TwoShapes",
                 {"twoshapes",
                  {make_entity(Shape::square, Color::yellow, 0.50, 0.30),
                   make_entity(Shape::pentagon, Color::red, 0.40, 0.70)}},
                 {{"A square is above a red pentagon.", true},
                  {"A yellow square is above a yellow pentagon.", false},
                  {"A square is to the left of a pentagon.", false}}});
  out.push_back({"Spatial-MultiShapes",
                 multishape_world(),
                 {{"A blue triangle is to the left of a semicircle.", true},
                  {"A circle is above a green rectangle.", true},
                  {"A semicircle is to the left of a circle.", false}}});
  out.push_back({"Quant-Count",
                 multishape_world(),
                 {{"Exactly two rectangles are green.", true},
                  {"Exactly one shape is a yellow circle.", true},
                  {"Exactly zero shapes are ellipses.", false}}});
  out.push_back({"Quant-Ratio",
                 multishape_world(),
                 {{"A quarter of the shapes are rectangles.", true},
                  {"A third of the rectangles are magenta.", false},
                  {"Half the shapes are green.", false}}});
  out.push_back({"Multi-shape overview",
                 multishape_world(),
                 {{"A circle is above a green rectangle.", true},
                  {"A blue triangle is to the left of a semicircle.", true},
                  {"A semicircle is below a gray triangle.", true},
                  {"A semicircle is to the left of a triangle.", false}}});
  return out;
}

// --- random worlds and propositions over a reduced palette -------------------

// Small palettes and a coarse center grid make matches, ties and non-trivial
// counts frequent.
inline WorldModel random_grid_world(Rng& rng, int max_entities = 8, int grid = 5,
                                    int n_shapes = 3, int n_colors = 3) {
  WorldModel w;
  w.id = "grid";
  const int n = rng.integer(1, max_entities);
  for (int i = 0; i < n; ++i) {
    const Shape s = kShapes[rng.index(static_cast<std::size_t>(n_shapes))];
    const Color c = kColors[rng.index(static_cast<std::size_t>(n_colors))];
    const double x = (rng.integer(0, grid - 1) + 0.5) / grid;
    const double y = (rng.integer(0, grid - 1) + 0.5) / grid;
    w.entities.push_back(make_entity(s, c, x, y, 0.08));
  }
  return w;
}

inline Descriptor random_palette_descriptor(Rng& rng, int n_shapes = 3, int n_colors = 3) {
  Descriptor d;
  if (rng.bernoulli(0.6)) d.shape = kShapes[rng.index(static_cast<std::size_t>(n_shapes))];
  if (rng.bernoulli(0.6)) d.color = kColors[rng.index(static_cast<std::size_t>(n_colors))];
  return d;
}

inline Proposition random_proposition(Rng& rng, int kind) {
  switch (kind) {
    case 0: return Exists{random_palette_descriptor(rng), !rng.bernoulli(0.1)};
    case 1:
      return ExistsPair{kRelations[rng.index(4)], random_palette_descriptor(rng),
                        random_palette_descriptor(rng)};
    case 2:
      return CountEq{rng.integer(0, 5), random_palette_descriptor(rng),
                     random_palette_descriptor(rng)};
    default: {
      const Fraction f = kFractions[rng.index(kFractions.size())];
      return RatioEq{numerator(f), denominator(f), random_palette_descriptor(rng),
                     random_palette_descriptor(rng)};
    }
  }
}

// --- independent enumeration of the caption language -------------------------

// Every sentence of the grammar, lowercase, tokens joined by spaces, without
// the period. Built from literal word lists, not from the lexicon module.
inline std::set<std::string> enumerate_language() {
  const std::vector<std::string> colors = {"red", "green", "blue", "yellow",
                                           "magenta", "cyan", "gray"};
  const std::vector<std::pair<std::string, std::string>> nouns = {
      {"square", "squares"},       {"rectangle", "rectangles"},   {"triangle", "triangles"},
      {"pentagon", "pentagons"},   {"cross", "crosses"},          {"circle", "circles"},
      {"semicircle", "semicircles"}, {"ellipse", "ellipses"},     {"shape", "shapes"}};
  struct Nom {
    std::string sg, pl;
    bool has_shape, has_color;
  };
  std::vector<Nom> noms;
  for (const auto& [sg, pl] : nouns) {
    const bool shape = sg != "shape";
    noms.push_back({sg, pl, shape, false});
    for (const auto& c : colors) noms.push_back({c + " " + sg, c + " " + pl, shape, true});
  }
  auto np = [](const std::string& nom) {
    const bool vowel = std::string("aeiou").find(nom[0]) != std::string::npos;
    return std::string(vowel ? "an " : "a ") + nom;
  };
  std::set<std::string> out;
  const std::vector<std::string> rels = {"above", "below", "to the left of", "to the right of"};
  for (const auto& a : noms) {
    out.insert("there is " + np(a.sg));
    for (const auto& c : colors) out.insert(np(a.sg) + " is " + c);
    for (const auto& b : noms) {
      out.insert(np(a.sg) + " is " + np(b.sg));
      for (const auto& r : rels) out.insert(np(a.sg) + " is " + r + " " + np(b.sg));
    }
  }
  const std::vector<std::string> numbers = {"zero", "two", "three", "four", "five"};
  const std::vector<std::string> fracs = {"half the",           "half of the",
                                          "a third of the",     "a quarter of the",
                                          "two thirds of the",  "three quarters of the"};
  for (const auto& r : noms) {
    // Predicates that add an attribute the restrictor lacks.
    std::vector<std::string> pred_sg, pred_pl;
    if (!r.has_color)
      for (const auto& c : colors) {
        pred_sg.push_back(c);
        pred_pl.push_back(c);
      }
    for (const auto& b : noms) {
      const bool adds = (b.has_shape && !r.has_shape) || (b.has_color && !r.has_color);
      if (!adds) continue;
      pred_sg.push_back(np(b.sg));
      pred_pl.push_back(b.pl);
    }
    for (const auto& p : pred_sg) out.insert("exactly one " + r.sg + " is " + p);
    for (const auto& p : pred_pl) {
      for (const auto& n : numbers) out.insert("exactly " + n + " " + r.pl + " are " + p);
      for (const auto& f : fracs) out.insert(f + " " + r.pl + " are " + p);
    }
  }
  return out;
}

inline std::string normalize_caption(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c | 0x20 : c));
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// --- frame x descriptor-kind product ------------------------------------------

struct KindCombo {
  Frame frame;
  std::vector<DescriptorKind> kinds;
};

// Every well-formed (frame, kinds) pair: E1 and E2b have one slot, E2a and
// SPATIAL two free slots, quantified frames a body that adds an attribute.
inline std::vector<KindCombo> all_kind_combos() {
  std::vector<KindCombo> out;
  for (auto k : kDescriptorKinds) out.push_back({Frame::there_is, {k}});
  for (auto a : kDescriptorKinds)
    for (auto b : kDescriptorKinds) out.push_back({Frame::copula_np, {a, b}});
  for (auto k : kDescriptorKinds) out.push_back({Frame::copula_color, {k}});
  for (auto a : kDescriptorKinds)
    for (auto b : kDescriptorKinds) out.push_back({Frame::spatial, {a, b}});
  auto has_shape = [](DescriptorKind k) { return k == DescriptorKind::S || k == DescriptorKind::CS; };
  auto has_color = [](DescriptorKind k) { return k == DescriptorKind::C || k == DescriptorKind::CS; };
  for (Frame f : {Frame::count, Frame::ratio})
    for (auto r : kDescriptorKinds)
      for (auto b : kDescriptorKinds)
        if ((has_shape(b) && !has_shape(r)) || (has_color(b) && !has_color(r)))
          out.push_back({f, {r, b}});
  return out;
}

inline CaptionAst random_ast(const KindCombo& combo, Rng& rng) {
  auto fill = [&rng](DescriptorKind k) { return random_descriptor(k, rng); };
  switch (combo.frame) {
    case Frame::there_is: return Existential{combo.frame, fill(combo.kinds[0]), {}};
    case Frame::copula_np:
      return Existential{combo.frame, fill(combo.kinds[0]), fill(combo.kinds[1])};
    case Frame::copula_color:
      return Existential{combo.frame, fill(combo.kinds[0]), fill(DescriptorKind::C)};
    case Frame::spatial:
      return Spatial{kRelations[rng.index(4)], fill(combo.kinds[0]), fill(combo.kinds[1])};
    case Frame::count:
      return Count{rng.integer(0, kMaxCount), fill(combo.kinds[0]), fill(combo.kinds[1])};
    case Frame::ratio:
      return Ratio{kFractions[rng.index(kFractions.size())], fill(combo.kinds[0]),
                   fill(combo.kinds[1])};
  }
  throw std::logic_error("random_ast: unknown frame");
}

}  // namespace gtd::testing
