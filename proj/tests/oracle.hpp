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

// Naive reference evaluator, test-only. Re-derives every truth condition
// literally from the quantifier definitions: subsets are enumerated as
// bitmasks and ratios are compared in lowest terms. It must not call
// gtd::evaluate or gtd::matches.

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "gtd/semantics.hpp"

namespace gtd::testing {

inline bool oracle_fits(const Entity& e, const Descriptor& d) {
  return d.shape.value_or(e.shape) == e.shape && d.color.value_or(e.color) == e.color;
}

inline bool oracle_relation(Relation r, const Entity& a, const Entity& b) {
  const double dx = b.center.x - a.center.x;
  const double dy = b.center.y - a.center.y;
  if (r == Relation::above) return dy > 0;
  if (r == Relation::below) return dy < 0;
  if (r == Relation::left_of) return dx > 0;
  return dx < 0;
}

// Bitmask of entities satisfying every descriptor in the list.
inline std::uint32_t oracle_extension(const WorldModel& w, const Descriptor& a,
                                      const Descriptor* b = nullptr) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < w.entities.size(); ++i)
    if (oracle_fits(w.entities[i], a) && (!b || oracle_fits(w.entities[i], *b))) mask |= 1u << i;
  return mask;
}

inline bool oracle_evaluate(const Proposition& p, const WorldModel& w) {
  if (w.entities.size() > 16) throw std::invalid_argument("oracle: world too large");
  const std::size_t n = w.entities.size();
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;

  if (const auto* q = std::get_if<Exists>(&p)) {
    if (!q->satisfiable) return false;
    for (const Entity& e : w.entities)
      if (oracle_fits(e, q->description)) return true;
    return false;
  }
  if (const auto* q = std::get_if<ExistsPair>(&p)) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        if (oracle_fits(w.entities[a], q->first) && oracle_fits(w.entities[b], q->second) &&
            oracle_relation(q->relation, w.entities[a], w.entities[b]))
          return true;
      }
    return false;
  }
  if (const auto* q = std::get_if<CountEq>(&p)) {
    // Some subset of size n is exactly the set of entities in restrictor and body.
    for (std::uint32_t s = 0; s <= all; ++s) {
      if (std::popcount(s) != q->n) continue;
      bool exact = true;
      for (std::size_t i = 0; i < n && exact; ++i) {
        const bool in_both =
            oracle_fits(w.entities[i], q->restrictor) && oracle_fits(w.entities[i], q->body);
        exact = in_both == (((s >> i) & 1u) != 0);
      }
      if (exact) return true;
    }
    return false;
  }
  const auto& q = std::get<RatioEq>(p);
  const std::uint32_t restricted = oracle_extension(w, q.restrictor);
  const std::uint32_t both = oracle_extension(w, q.restrictor, &q.body);
  const int whole = std::popcount(restricted);
  const int part = std::popcount(both);
  if (whole == 0) return false;
  const int g = std::gcd(part, whole);
  const int pg = std::gcd(q.numerator, q.denominator);
  return part / g == q.numerator / pg && whole / g == q.denominator / pg;
}

}  // namespace gtd::testing
