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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "gtd/worldmodel.hpp"

namespace gtd {

/// Noun phrase content. A descriptor without a shape is generic
/// ("shape"/"shapes"); the color is optional either way.
struct Descriptor {
  std::optional<Shape> shape;
  std::optional<Color> color;

  bool generic() const { return !shape.has_value(); }
  bool operator==(const Descriptor&) const = default;
};

enum class DescriptorKind : std::uint8_t { G, S, C, CS };

inline constexpr DescriptorKind kind_of(const Descriptor& d) {
  if (d.shape) return d.color ? DescriptorKind::CS : DescriptorKind::S;
  return d.color ? DescriptorKind::C : DescriptorKind::G;
}

inline constexpr std::string_view name(DescriptorKind k) {
  constexpr std::array<std::string_view, 4> names = {"G", "S", "C", "CS"};
  return names[static_cast<std::size_t>(k)];
}

inline constexpr std::array<DescriptorKind, 4> kDescriptorKinds = {
    DescriptorKind::G, DescriptorKind::S, DescriptorKind::C, DescriptorKind::CS};

enum class Relation : std::uint8_t { above, below, left_of, right_of };

inline constexpr std::array<Relation, 4> kRelations = {
    Relation::above, Relation::below, Relation::left_of, Relation::right_of};

inline constexpr std::string_view name(Relation r) {
  constexpr std::array<std::string_view, 4> names = {"above", "below", "left_of",
                                                     "right_of"};
  return names[static_cast<std::size_t>(r)];
}

inline constexpr Relation converse(Relation r) {
  switch (r) {
    case Relation::above: return Relation::below;
    case Relation::below: return Relation::above;
    case Relation::left_of: return Relation::right_of;
    case Relation::right_of: return Relation::left_of;
  }
  return r;
}

enum class Fraction : std::uint8_t { half, third, quarter, two_thirds, three_quarters };

inline constexpr std::array<Fraction, 5> kFractions = {
    Fraction::half, Fraction::third, Fraction::quarter, Fraction::two_thirds,
    Fraction::three_quarters};

inline constexpr int numerator(Fraction f) {
  return (f == Fraction::two_thirds) ? 2 : (f == Fraction::three_quarters) ? 3 : 1;
}

inline constexpr int denominator(Fraction f) {
  switch (f) {
    case Fraction::half: return 2;
    case Fraction::third:
    case Fraction::two_thirds: return 3;
    default: return 4;
  }
}

inline constexpr std::string_view name(Fraction f) {
  constexpr std::array<std::string_view, 5> names = {"half", "third", "quarter",
                                                     "two_thirds", "three_quarters"};
  return names[static_cast<std::size_t>(f)];
}

inline constexpr int kMaxCount = 5;

/// Surface pattern that produced a caption.
enum class Frame : std::uint8_t { there_is, copula_np, copula_color, spatial, count, ratio };

inline constexpr std::string_view name(Frame f) {
  constexpr std::array<std::string_view, 6> names = {"E1",      "E2a",   "E2b",
                                                     "SPATIAL", "COUNT", "RATIO"};
  return names[static_cast<std::size_t>(f)];
}

/// "There is a red square." / "A shape is a red square." / "A square is red."
/// The complement is only meaningful for the two copula forms; for
/// copula_color it carries just the color.
struct Existential {
  Frame form = Frame::there_is;
  Descriptor subject;
  Descriptor complement;

  bool operator==(const Existential&) const = default;
};

struct Spatial {
  Relation relation = Relation::above;
  Descriptor subject;
  Descriptor object;

  bool operator==(const Spatial&) const = default;
};

struct Count {
  int number = 0;
  Descriptor restrictor;
  Descriptor body;

  bool operator==(const Count&) const = default;
};

struct Ratio {
  Fraction fraction = Fraction::half;
  Descriptor restrictor;
  Descriptor body;

  bool operator==(const Ratio&) const = default;
};

using CaptionAst = std::variant<Existential, Spatial, Count, Ratio>;

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline Frame frame_of(const CaptionAst& ast) {
  return std::visit(overloaded{
                        [](const Existential& e) { return e.form; },
                        [](const Spatial&) { return Frame::spatial; },
                        [](const Count&) { return Frame::count; },
                        [](const Ratio&) { return Frame::ratio; },
                    },
                    ast);
}

// The body of a quantified statement has to say something the restrictor
// does not: at least one attribute slot unset in the restrictor.
inline bool body_adds_attribute(const Descriptor& restrictor, const Descriptor& body) {
  return (body.shape && !restrictor.shape) || (body.color && !restrictor.color);
}

inline bool is_valid(const CaptionAst& ast) {
  return std::visit(
      overloaded{
          [](const Existential& e) {
            switch (e.form) {
              case Frame::there_is: return e.complement == Descriptor{};
              case Frame::copula_np: return true;
              case Frame::copula_color:
                return !e.complement.shape && e.complement.color.has_value();
              default: return false;
            }
          },
          [](const Spatial&) { return true; },
          [](const Count& c) {
            return c.number >= 0 && c.number <= kMaxCount &&
                   body_adds_attribute(c.restrictor, c.body);
          },
          [](const Ratio& r) { return body_adds_attribute(r.restrictor, r.body); },
      },
      ast);
}

}  // namespace gtd
