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

// Tokenizer and parser for the caption language. A caption is grammatical
// exactly when parse() returns an AST; there are no partial results.
//
// Frames (the terminal period is a separate token):
//   E1       there is NP
//   E2a      NP is NP
//   E2b      NP is COLOR
//   SPATIAL  NP is REL NP
//   COUNT    exactly NUM NOM are PRED        (NUM = one: singular, "is")
//   RATIO    FRAC NOM are PRED
// with NP = (a|an) [COLOR] NOUN, NOM = [COLOR] NOUN, PRED = COLOR | NP (sg)
// or COLOR | NOM (pl).

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gtd/ast.hpp"
#include "gtd/lexicon.hpp"

namespace gtd {

using Tokens = std::vector<std::string>;

inline constexpr std::string_view kPeriod = ".";

// Lowercases and splits on single spaces. The caption must end in exactly
// one period attached to the last word, which becomes its own token; words
// may only contain ASCII letters.
inline std::optional<Tokens> tokenize(std::string_view text) {
  if (text.size() < 2 || text.back() != '.') return std::nullopt;
  text.remove_suffix(1);
  Tokens tokens;
  std::string word;
  auto flush = [&]() -> bool {
    if (word.empty()) return false;
    tokens.push_back(std::move(word));
    word.clear();
    return true;
  };
  for (const char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (c == ' ') {
      if (!flush()) return std::nullopt;
    } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      word.push_back(static_cast<char>(c | 0x20));
    } else {
      return std::nullopt;
    }
  }
  if (!flush()) return std::nullopt;
  tokens.emplace_back(kPeriod);
  return tokens;
}

namespace detail {

using Span = std::span<const std::string>;

enum class Number { singular, plural };

inline std::optional<Shape> noun(std::string_view w, Number n, bool& generic) {
  generic = w == (n == Number::singular ? lexicon::kGenericNoun : lexicon::kGenericPlural);
  if (generic) return std::nullopt;
  if (n == Number::singular) return shape_from_name(w);
  for (Shape s : kShapes)
    if (lexicon::plural(s) == w) return s;
  return std::nullopt;
}

// [COLOR] NOUN, consuming the whole span.
inline std::optional<Descriptor> nominal(Span t, Number n) {
  if (t.empty() || t.size() > 2) return std::nullopt;
  Descriptor d;
  if (t.size() == 2) {
    d.color = color_from_name(t[0]);
    if (!d.color) return std::nullopt;
  }
  bool generic = false;
  d.shape = noun(t.back(), n, generic);
  if (!d.shape && !generic) return std::nullopt;
  return d;
}

// (a|an) [COLOR] NOUN, consuming the whole span, with article agreement.
inline std::optional<Descriptor> noun_phrase(Span t) {
  if (t.size() < 2 || t.size() > 3) return std::nullopt;
  if (t[0] != lexicon::article_for(t[1])) return std::nullopt;
  return nominal(t.subspan(1), Number::singular);
}

inline std::optional<Descriptor> predicate(Span t, Number n) {
  if (t.size() == 1) {
    if (auto c = color_from_name(t[0])) return Descriptor{std::nullopt, c};
  }
  return n == Number::singular ? noun_phrase(t) : nominal(t, Number::plural);
}

inline bool starts_with(Span t, const lexicon::Phrase& p) {
  if (t.size() < p.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (t[i] != p[i]) return false;
  return true;
}

inline void there_is(Span t, std::vector<CaptionAst>& out) {
  if (t.size() < 2 || t[0] != "there" || t[1] != "is") return;
  if (auto np = noun_phrase(t.subspan(2))) out.push_back(Existential{Frame::there_is, *np, {}});
}

// NP is ...
inline void copula(Span t, std::vector<CaptionAst>& out) {
  for (std::size_t split : {2u, 3u}) {
    if (t.size() <= split || t[split] != "is") continue;
    const auto subject = noun_phrase(t.first(split));
    if (!subject) continue;
    const Span rest = t.subspan(split + 1);
    if (rest.size() == 1) {
      if (auto c = color_from_name(rest[0]))
        out.push_back(Existential{Frame::copula_color, *subject, Descriptor{std::nullopt, c}});
    }
    if (auto np = noun_phrase(rest))
      out.push_back(Existential{Frame::copula_np, *subject, *np});
    for (Relation r : kRelations)
      for (const auto& phrase : lexicon::relation_phrases(r))
        if (starts_with(rest, phrase))
          if (auto object = noun_phrase(rest.subspan(phrase.size())))
            out.push_back(Spatial{r, *subject, *object});
  }
}

// NOM (is|are) PRED, trying both nominal lengths.
template <class Make>
inline void quantified_tail(Span t, Number n, std::vector<CaptionAst>& out, Make make) {
  const std::string_view verb = n == Number::singular ? "is" : "are";
  for (std::size_t split : {1u, 2u}) {
    if (t.size() <= split || t[split] != verb) continue;
    const auto restrictor = nominal(t.first(split), n);
    if (!restrictor) continue;
    if (auto body = predicate(t.subspan(split + 1), n)) out.push_back(make(*restrictor, *body));
  }
}

inline void count(Span t, std::vector<CaptionAst>& out) {
  if (t.size() < 2 || t[0] != "exactly") return;
  const auto number = lexicon::number_from_word(t[1]);
  if (!number) return;
  const Number n = *number == 1 ? Number::singular : Number::plural;
  quantified_tail(t.subspan(2), n, out, [&](const Descriptor& r, const Descriptor& b) {
    return CaptionAst{Count{*number, r, b}};
  });
}

inline void ratio(Span t, std::vector<CaptionAst>& out) {
  for (Fraction f : kFractions)
    for (const auto& phrase : lexicon::fraction_phrases(f))
      if (starts_with(t, phrase))
        quantified_tail(t.subspan(phrase.size()), Number::plural, out,
                        [&](const Descriptor& r, const Descriptor& b) {
                          return CaptionAst{Ratio{f, r, b}};
                        });
}

}  // namespace detail

// Thrown if the grammar ever yields two parses for one sentence.
class AmbiguousParse : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::optional<CaptionAst> parse_tokens(std::span<const std::string> tokens) {
  if (tokens.empty() || tokens.back() != kPeriod) return std::nullopt;
  const detail::Span t = tokens.first(tokens.size() - 1);
  std::vector<CaptionAst> parses;
  detail::there_is(t, parses);
  detail::copula(t, parses);
  detail::count(t, parses);
  detail::ratio(t, parses);
  std::erase_if(parses, [](const CaptionAst& a) { return !is_valid(a); });
  if (parses.empty()) return std::nullopt;
  if (parses.size() > 1) throw AmbiguousParse("ambiguous caption");
  return parses.front();
}

inline std::optional<CaptionAst> parse(std::string_view text) {
  const auto tokens = tokenize(text);
  if (!tokens) return std::nullopt;
  return parse_tokens(*tokens);
}

inline bool is_grammatical(std::string_view text) { return parse(text).has_value(); }

}  // namespace gtd
