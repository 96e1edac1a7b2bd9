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

// Reference caption generation: samples an AST that is true of a given world
// and realizes it.

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gtd/ast.hpp"
#include "gtd/realizer.hpp"
#include "gtd/semantics.hpp"
#include "gtd/worldmodel.hpp"

namespace gtd {

struct GeneratedCaption {
  std::string text;
  CaptionAst ast;
};

inline constexpr int kMaxCaptionAttempts = 1000;
inline constexpr double kZeroCountProbability = 0.05;

// Reference captions never use bare generic descriptions.
inline constexpr std::array<DescriptorKind, 3> kInformativeKinds = {
    DescriptorKind::S, DescriptorKind::C, DescriptorKind::CS};

// Allowed (restrictor, body) kind pairs for quantified captions.
inline constexpr std::array<std::pair<DescriptorKind, DescriptorKind>, 5> kQuantifierKinds = {{
    {DescriptorKind::S, DescriptorKind::C},
    {DescriptorKind::G, DescriptorKind::S},
    {DescriptorKind::G, DescriptorKind::C},
    {DescriptorKind::G, DescriptorKind::CS},
    {DescriptorKind::C, DescriptorKind::S},
}};

inline Descriptor describe(const Entity& e, DescriptorKind kind) {
  Descriptor d;
  if (kind == DescriptorKind::S || kind == DescriptorKind::CS) d.shape = e.shape;
  if (kind == DescriptorKind::C || kind == DescriptorKind::CS) d.color = e.color;
  return d;
}

inline Descriptor random_descriptor(DescriptorKind kind, Rng& rng) {
  Entity e;
  e.shape = rng.pick<Shape>(kShapes);
  e.color = rng.pick<Color>(kColors);
  return describe(e, kind);
}

namespace detail {

inline int count_matching(const WorldModel& w, const Descriptor& d) {
  int n = 0;
  for (const Entity& e : w.entities) n += matches(e, d);
  return n;
}

inline int count_matching(const WorldModel& w, const Descriptor& a, const Descriptor& b) {
  int n = 0;
  for (const Entity& e : w.entities) n += matches(e, a) && matches(e, b);
  return n;
}

inline std::optional<Fraction> fraction_of(int part, int whole) {
  if (whole <= 0 || part <= 0 || part >= whole) return std::nullopt;
  const int g = std::gcd(part, whole);
  for (Fraction f : kFractions)
    if (numerator(f) == part / g && denominator(f) == whole / g) return f;
  return std::nullopt;
}

inline std::optional<CaptionAst> try_existential(const WorldModel& w, Rng& rng) {
  constexpr std::array<Frame, 3> forms = {Frame::there_is, Frame::copula_np,
                                          Frame::copula_color};
  const Entity& e = rng.pick<Entity>(w.entities);
  const Frame form = rng.pick<Frame>(forms);
  switch (form) {
    case Frame::there_is:
      return Existential{form, describe(e, rng.pick<DescriptorKind>(kInformativeKinds)), {}};
    case Frame::copula_np:
      return Existential{form, {}, describe(e, rng.pick<DescriptorKind>(kInformativeKinds))};
    default:
      return Existential{form, describe(e, DescriptorKind::S), {std::nullopt, e.color}};
  }
}

// Both descriptions must pick out exactly one entity, so the caption has a
// single witness pair and its converse is false.
inline std::optional<CaptionAst> try_spatial(const WorldModel& w, Rng& rng) {
  if (w.entities.size() < 2) return std::nullopt;
  const std::size_t i = rng.index(w.entities.size());
  std::size_t j = rng.index(w.entities.size() - 1);
  if (j >= i) ++j;
  const Entity& a = w.entities[i];
  const Entity& b = w.entities[j];
  std::vector<Relation> true_relations;
  for (Relation r : kRelations)
    if (holds(r, a.center, b.center)) true_relations.push_back(r);
  if (true_relations.empty()) return std::nullopt;
  const Relation rel = rng.pick<Relation>(true_relations);
  const Descriptor subject = describe(a, rng.pick<DescriptorKind>(kInformativeKinds));
  const Descriptor object = describe(b, rng.pick<DescriptorKind>(kInformativeKinds));
  if (count_matching(w, subject) != 1 || count_matching(w, object) != 1) return std::nullopt;
  return Spatial{rel, subject, object};
}

inline std::optional<CaptionAst> try_count(const WorldModel& w, Rng& rng, bool zero) {
  const auto [rk, bk] = rng.pick<std::pair<DescriptorKind, DescriptorKind>>(kQuantifierKinds);
  if (zero) {
    const Descriptor r = random_descriptor(rk, rng);
    const Descriptor b = random_descriptor(bk, rng);
    if (count_matching(w, r, b) != 0) return std::nullopt;
    return Count{0, r, b};
  }
  const Entity& e = rng.pick<Entity>(w.entities);
  const Descriptor r = describe(e, rk);
  const Descriptor b = describe(e, bk);
  const int n = count_matching(w, r, b);
  if (n > kMaxCount) return std::nullopt;
  return Count{n, r, b};
}

inline std::optional<CaptionAst> try_ratio(const WorldModel& w, Rng& rng) {
  const auto [rk, bk] = rng.pick<std::pair<DescriptorKind, DescriptorKind>>(kQuantifierKinds);
  const Descriptor r = describe(rng.pick<Entity>(w.entities), rk);
  std::vector<Entity> members;
  for (const Entity& e : w.entities)
    if (matches(e, r)) members.push_back(e);
  const Descriptor b = describe(rng.pick<Entity>(members), bk);
  const auto f = fraction_of(count_matching(w, r, b), static_cast<int>(members.size()));
  if (!f) return std::nullopt;
  return Ratio{*f, r, b};
}

}  // namespace detail

// Samples a caption that is grammatical and true of the world. Throws
// InfeasibleError when the attempt budget runs out; callers resample the
// world in that case.
inline GeneratedCaption generate_caption(const WorldModel& world, Task task, Rng& rng) {
  if (world.entities.empty()) throw std::invalid_argument("generate_caption: empty world");
  const bool zero_count = task == Task::quant_count && rng.bernoulli(kZeroCountProbability);
  for (int attempt = 0; attempt < kMaxCaptionAttempts; ++attempt) {
    std::optional<CaptionAst> ast;
    switch (task) {
      case Task::existential_oneshape:
      case Task::existential_multishapes: ast = detail::try_existential(world, rng); break;
      case Task::spatial_twoshapes:
      case Task::spatial_multishapes: ast = detail::try_spatial(world, rng); break;
      case Task::quant_count: ast = detail::try_count(world, rng, zero_count); break;
      case Task::quant_ratio: ast = detail::try_ratio(world, rng); break;
    }
    if (!ast || !evaluate(to_proposition(*ast), world)) continue;
    std::string text = realize(*ast, rng);
    return {std::move(text), std::move(*ast)};
  }
  throw InfeasibleError(std::string("generate_caption: no true caption found for task ") +
                        std::string(name(task)));
}

// A random caption from the task's frames that ignores any world.
inline CaptionAst sample_ast(Task task, Rng& rng) {
  auto informative = [&rng] {
    return random_descriptor(rng.pick<DescriptorKind>(kInformativeKinds), rng);
  };
  switch (task) {
    case Task::existential_oneshape:
    case Task::existential_multishapes: {
      constexpr std::array<Frame, 3> forms = {Frame::there_is, Frame::copula_np,
                                              Frame::copula_color};
      const Frame form = rng.pick<Frame>(forms);
      if (form == Frame::there_is) return Existential{form, informative(), {}};
      if (form == Frame::copula_np) return Existential{form, {}, informative()};
      return Existential{form, random_descriptor(DescriptorKind::S, rng),
                         {std::nullopt, rng.pick<Color>(kColors)}};
    }
    case Task::spatial_twoshapes:
    case Task::spatial_multishapes: {
      const Relation rel = rng.pick<Relation>(kRelations);
      const Descriptor subject = informative();
      return Spatial{rel, subject, informative()};
    }
    case Task::quant_count: {
      const auto [rk, bk] = rng.pick<std::pair<DescriptorKind, DescriptorKind>>(kQuantifierKinds);
      const int n = rng.integer(0, kMaxCount);
      const Descriptor r = random_descriptor(rk, rng);
      return Count{n, r, random_descriptor(bk, rng)};
    }
    case Task::quant_ratio: {
      const auto [rk, bk] = rng.pick<std::pair<DescriptorKind, DescriptorKind>>(kQuantifierKinds);
      const Fraction f = rng.pick<Fraction>(kFractions);
      const Descriptor r = random_descriptor(rk, rng);
      return Ratio{f, r, random_descriptor(bk, rng)};
    }
  }
  throw std::invalid_argument("sample_ast: unknown task");
}

}  // namespace gtd
