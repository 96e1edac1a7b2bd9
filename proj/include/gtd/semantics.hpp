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

// Logical forms of captions and their truth conditions over a world model.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gtd/ast.hpp"
#include "gtd/lexicon.hpp"
#include "gtd/parser.hpp"
#include "gtd/worldmodel.hpp"

namespace gtd {

/// Some entity matches the description. An unsatisfiable Exists comes from
/// a copula whose two noun phrases contradict each other.
struct Exists {
  Descriptor description;
  bool satisfiable = true;
  bool operator==(const Exists&) const = default;
};

/// Two distinct entities matching first/second stand in the relation.
struct ExistsPair {
  Relation relation = Relation::above;
  Descriptor first;
  Descriptor second;
  bool operator==(const ExistsPair&) const = default;
};

/// |restrictor ∩ body| = n
struct CountEq {
  int n = 0;
  Descriptor restrictor;
  Descriptor body;
  bool operator==(const CountEq&) const = default;
};

/// |restrictor| > 0 and |restrictor ∩ body| / |restrictor| = numerator / denominator
struct RatioEq {
  int numerator = 1;
  int denominator = 2;
  Descriptor restrictor;
  Descriptor body;
  bool operator==(const RatioEq&) const = default;
};

using Proposition = std::variant<Exists, ExistsPair, CountEq, RatioEq>;

enum class Verdict { ungrammatical, true_statement, false_statement };

inline constexpr std::string_view name(Verdict v) {
  switch (v) {
    case Verdict::ungrammatical: return "ungrammatical";
    case Verdict::true_statement: return "true";
    case Verdict::false_statement: return "false";
  }
  return "ungrammatical";
}

inline std::optional<Verdict> verdict_from_name(std::string_view s) {
  for (Verdict v : {Verdict::ungrammatical, Verdict::true_statement, Verdict::false_statement})
    if (name(v) == s) return v;
  return std::nullopt;
}

// Conjunction of two descriptions; nullopt when they contradict.
inline std::optional<Descriptor> merge(const Descriptor& a, const Descriptor& b) {
  if (a.shape && b.shape && *a.shape != *b.shape) return std::nullopt;
  if (a.color && b.color && *a.color != *b.color) return std::nullopt;
  return Descriptor{a.shape ? a.shape : b.shape, a.color ? a.color : b.color};
}

inline Proposition to_proposition(const CaptionAst& ast) {
  return std::visit(
      overloaded{
          [](const Existential& e) -> Proposition {
            if (e.form == Frame::there_is) return Exists{e.subject, true};
            if (auto m = merge(e.subject, e.complement)) return Exists{*m, true};
            return Exists{e.subject, false};
          },
          [](const Spatial& s) -> Proposition {
            return ExistsPair{s.relation, s.subject, s.object};
          },
          [](const Count& c) -> Proposition { return CountEq{c.number, c.restrictor, c.body}; },
          [](const Ratio& r) -> Proposition {
            return RatioEq{numerator(r.fraction), denominator(r.fraction), r.restrictor, r.body};
          },
      },
      ast);
}

inline bool matches(const Entity& e, const Descriptor& d) {
  return (!d.shape || e.shape == *d.shape) && (!d.color || e.color == *d.color);
}

// Image coordinates: y grows downward. Strict, so ties are false.
inline bool holds(Relation r, const Point& a, const Point& b) {
  switch (r) {
    case Relation::above: return a.y < b.y;
    case Relation::below: return a.y > b.y;
    case Relation::left_of: return a.x < b.x;
    case Relation::right_of: return a.x > b.x;
  }
  return false;
}

inline bool evaluate(const Proposition& p, const WorldModel& w) {
  const auto& es = w.entities;
  return std::visit(
      overloaded{
          [&](const Exists& q) {
            if (!q.satisfiable) return false;
            for (const Entity& e : es)
              if (matches(e, q.description)) return true;
            return false;
          },
          [&](const ExistsPair& q) {
            for (std::size_t i = 0; i < es.size(); ++i) {
              if (!matches(es[i], q.first)) continue;
              for (std::size_t j = 0; j < es.size(); ++j)
                if (i != j && matches(es[j], q.second) &&
                    holds(q.relation, es[i].center, es[j].center))
                  return true;
            }
            return false;
          },
          [&](const CountEq& q) {
            int n = 0;
            for (const Entity& e : es) n += matches(e, q.restrictor) && matches(e, q.body);
            return n == q.n;
          },
          [&](const RatioEq& q) {
            long restricted = 0, both = 0;
            for (const Entity& e : es) {
              if (!matches(e, q.restrictor)) continue;
              ++restricted;
              both += matches(e, q.body);
            }
            return restricted > 0 && q.denominator * both == q.numerator * restricted;
          },
      },
      p);
}

inline Verdict evaluate_ast(const CaptionAst& ast, const WorldModel& w) {
  return evaluate(to_proposition(ast), w) ? Verdict::true_statement : Verdict::false_statement;
}

// Total over arbitrary input.
inline Verdict evaluate_caption(std::string_view text, const WorldModel& w) {
  const auto ast = parse(text);
  if (!ast) return Verdict::ungrammatical;
  return evaluate_ast(*ast, w);
}

// --- scene tuples -----------------------------------------------------------

/// Lowercase word tuple such as (o1, red), (o1, left_of, o2), (two, rectangle).
using SceneTuple = std::vector<std::string>;
using SceneTuples = std::set<SceneTuple>;

namespace detail {

// Every object gets a noun tuple ("shape" when generic) and a color tuple
// when colored.
inline void attribute_tuples(SceneTuples& out, const std::string& object, const Descriptor& d) {
  out.insert({object, std::string(d.shape ? name(*d.shape) : lexicon::kGenericNoun)});
  if (d.color) out.insert({object, std::string(name(*d.color))});
}

inline SceneTuple quantity_tuple(std::string quantity, const Descriptor& restrictor) {
  SceneTuple t{std::move(quantity)};
  if (restrictor.color) t.emplace_back(name(*restrictor.color));
  t.emplace_back(restrictor.shape ? name(*restrictor.shape) : lexicon::kGenericNoun);
  return t;
}

inline Descriptor merged_or_subject(const Descriptor& a, const Descriptor& b) {
  auto m = merge(a, b);
  return m ? *m : a;
}

}  // namespace detail

// Objects are numbered by position within the caption: o1, o2.
inline SceneTuples scene_tuples(const CaptionAst& ast) {
  SceneTuples out;
  std::visit(overloaded{
                 [&](const Existential& e) {
                   const Descriptor d = e.form == Frame::there_is
                                            ? e.subject
                                            : detail::merged_or_subject(e.subject, e.complement);
                   detail::attribute_tuples(out, "o1", d);
                 },
                 [&](const Spatial& s) {
                   detail::attribute_tuples(out, "o1", s.subject);
                   detail::attribute_tuples(out, "o2", s.object);
                   out.insert({"o1", std::string(name(s.relation)), "o2"});
                 },
                 [&](const Count& c) {
                   detail::attribute_tuples(out, "o1",
                                            detail::merged_or_subject(c.restrictor, c.body));
                   out.insert(detail::quantity_tuple(
                       std::string(lexicon::kNumberWords[static_cast<std::size_t>(c.number)]),
                       c.restrictor));
                 },
                 [&](const Ratio& r) {
                   detail::attribute_tuples(out, "o1",
                                            detail::merged_or_subject(r.restrictor, r.body));
                   out.insert(detail::quantity_tuple(std::string(name(r.fraction)), r.restrictor));
                 },
             },
             ast);
  return out;
}

}  // namespace gtd
