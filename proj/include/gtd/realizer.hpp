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

#include <string>
#include <string_view>
#include <vector>

#include "gtd/ast.hpp"
#include "gtd/lexicon.hpp"
#include "gtd/random.hpp"

namespace gtd {

namespace detail {

using Words = std::vector<std::string_view>;

inline void append_nominal(Words& out, const Descriptor& d, bool plural) {
  if (d.color) out.push_back(name(*d.color));
  if (d.shape)
    out.push_back(plural ? lexicon::plural(*d.shape) : name(*d.shape));
  else
    out.push_back(plural ? lexicon::kGenericPlural : lexicon::kGenericNoun);
}

inline void append_np(Words& out, const Descriptor& d) {
  Words nom;
  append_nominal(nom, d, false);
  out.push_back(lexicon::article_for(nom.front()));
  out.insert(out.end(), nom.begin(), nom.end());
}

inline void append_predicate(Words& out, const Descriptor& d, bool plural) {
  if (kind_of(d) == DescriptorKind::C) {
    out.push_back(name(*d.color));
  } else if (plural) {
    append_nominal(out, d, true);
  } else {
    append_np(out, d);
  }
}

inline std::string join_sentence(const Words& words) {
  std::string s;
  for (const auto w : words) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  s += '.';
  return s;
}

}  // namespace detail

// Renders an AST as a capitalized sentence. The rng only picks between
// equivalent surfaces ("half the" / "half of the").
inline std::string realize(const CaptionAst& ast, Rng& rng) {
  detail::Words w;
  std::visit(overloaded{
                 [&](const Existential& e) {
                   if (e.form == Frame::there_is) {
                     w = {"there", "is"};
                     detail::append_np(w, e.subject);
                     return;
                   }
                   detail::append_np(w, e.subject);
                   w.push_back("is");
                   if (e.form == Frame::copula_color)
                     w.push_back(name(*e.complement.color));
                   else
                     detail::append_np(w, e.complement);
                 },
                 [&](const Spatial& s) {
                   detail::append_np(w, s.subject);
                   w.push_back("is");
                   const auto& phrase = lexicon::relation_phrases(s.relation).front();
                   w.insert(w.end(), phrase.begin(), phrase.end());
                   detail::append_np(w, s.object);
                 },
                 [&](const Count& c) {
                   const bool plural = c.number != 1;
                   w = {"exactly", lexicon::kNumberWords[static_cast<std::size_t>(c.number)]};
                   detail::append_nominal(w, c.restrictor, plural);
                   w.push_back(plural ? "are" : "is");
                   detail::append_predicate(w, c.body, plural);
                 },
                 [&](const Ratio& r) {
                   const auto& phrases = lexicon::fraction_phrases(r.fraction);
                   const auto& phrase = phrases[rng.index(phrases.size())];
                   w.insert(w.end(), phrase.begin(), phrase.end());
                   detail::append_nominal(w, r.restrictor, true);
                   w.push_back("are");
                   detail::append_predicate(w, r.body, true);
                 },
             },
             ast);
  return detail::join_sentence(w);
}

}  // namespace gtd
