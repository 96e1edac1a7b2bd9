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

#include <compare>
#include <string>
#include <vector>

#include "gtd/ast.hpp"

namespace gtd {

/// Reduced caption: the frame plus how each described object is referred to
/// (generic, shape, color, color+shape). Concrete shapes, colors, relations,
/// numbers and fractions are dropped, so "A square is red." and "A circle is
/// blue." share one construction.
struct Construction {
  Frame frame = Frame::there_is;
  std::vector<DescriptorKind> kinds;

  auto operator<=>(const Construction&) const = default;
  bool operator==(const Construction&) const = default;
};

// Existentials have one descriptive slot: the NP for E1, the predicate NP for
// E2a and the subject for E2b (whose predicate is always a bare color).
inline Construction construction_of(const CaptionAst& ast) {
  return std::visit(
      overloaded{
          [](const Existential& e) {
            const Descriptor& slot = e.form == Frame::copula_np ? e.complement : e.subject;
            return Construction{e.form, {kind_of(slot)}};
          },
          [](const Spatial& s) {
            return Construction{Frame::spatial, {kind_of(s.subject), kind_of(s.object)}};
          },
          [](const Count& c) {
            return Construction{Frame::count, {kind_of(c.restrictor), kind_of(c.body)}};
          },
          [](const Ratio& r) {
            return Construction{Frame::ratio, {kind_of(r.restrictor), kind_of(r.body)}};
          },
      },
      ast);
}

// "SPATIAL:CS,S"
inline std::string to_string(const Construction& c) {
  std::string s(name(c.frame));
  s += ':';
  for (std::size_t i = 0; i < c.kinds.size(); ++i) {
    if (i) s += ',';
    s += name(c.kinds[i]);
  }
  return s;
}

}  // namespace gtd
