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

// Closed-class and open-class words of the caption language.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtd/ast.hpp"
#include "gtd/random.hpp"

namespace gtd::lexicon {

inline constexpr std::string_view kGenericNoun = "shape";
inline constexpr std::string_view kGenericPlural = "shapes";

inline constexpr std::string_view plural(Shape s) {
  constexpr std::array<std::string_view, 8> names = {
      "squares", "rectangles", "triangles",   "pentagons",
      "crosses", "circles",    "semicircles", "ellipses"};
  return names[static_cast<std::size_t>(s)];
}

inline constexpr std::array<std::string_view, 6> kNumberWords = {
    "zero", "one", "two", "three", "four", "five"};

inline std::optional<int> number_from_word(std::string_view w) {
  for (std::size_t i = 0; i < kNumberWords.size(); ++i)
    if (kNumberWords[i] == w) return static_cast<int>(i);
  return std::nullopt;
}

using Phrase = std::vector<std::string_view>;

inline const std::vector<Phrase>& relation_phrases(Relation r) {
  static const std::array<std::vector<Phrase>, 4> table = {{
      {{"above"}},
      {{"below"}},
      {{"to", "the", "left", "of"}},
      {{"to", "the", "right", "of"}},
  }};
  return table[static_cast<std::size_t>(r)];
}

// Several surfaces may realize one fraction; the first is canonical.
inline const std::vector<Phrase>& fraction_phrases(Fraction f) {
  static const std::array<std::vector<Phrase>, 5> table = {{
      {{"half", "the"}, {"half", "of", "the"}},
      {{"a", "third", "of", "the"}},
      {{"a", "quarter", "of", "the"}},
      {{"two", "thirds", "of", "the"}},
      {{"three", "quarters", "of", "the"}},
  }};
  return table[static_cast<std::size_t>(f)];
}

inline bool starts_with_vowel(std::string_view word) {
  return !word.empty() && std::string_view("aeiou").find(word.front()) != std::string_view::npos;
}

inline std::string_view article_for(std::string_view next_word) {
  return starts_with_vowel(next_word) ? "an" : "a";
}

// Canonical text of the whole grammar. Its hash is stored in dataset
// manifests so evaluation refuses data produced by a different grammar.
inline std::string signature() {
  std::string s = "gtd-grammar/1;frames:E1,E2a,E2b,SPATIAL,COUNT,RATIO;shapes:";
  for (Shape sh : kShapes) s += std::string(name(sh)) + "/" + std::string(plural(sh)) + ",";
  s += ";colors:";
  for (Color c : kColors) s += std::string(name(c)) + ",";
  s += ";numbers:";
  for (auto w : kNumberWords) s += std::string(w) + ",";
  s += ";relations:";
  for (Relation r : kRelations)
    for (const auto& p : relation_phrases(r)) {
      for (auto w : p) s += std::string(w) + " ";
      s += ",";
    }
  s += ";fractions:";
  for (Fraction f : kFractions)
    for (const auto& p : fraction_phrases(f)) {
      for (auto w : p) s += std::string(w) + " ";
      s += ",";
    }
  return s;
}

inline std::uint64_t grammar_hash() { return fnv1a64(signature()); }

}  // namespace gtd::lexicon
