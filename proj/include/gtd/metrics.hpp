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

// Run-level caption metrics: grammaticality, truthfulness and diversity
// ratios, plus sentence BLEU-4 and a scene-tuple F1 for comparison.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gtd/construction.hpp"
#include "gtd/json_util.hpp"
#include "gtd/parser.hpp"
#include "gtd/semantics.hpp"
#include "gtd/worldmodel.hpp"

namespace gtd {

class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Candidate {
  std::string id;
  std::string caption;
};

inline double grammaticality_ratio(std::span<const std::string> candidates) {
  if (candidates.empty()) throw std::invalid_argument("grammaticality_ratio: no candidates");
  std::size_t ok = 0;
  for (const auto& c : candidates) ok += is_grammatical(c);
  return static_cast<double>(ok) / static_cast<double>(candidates.size());
}

// Ungrammatical captions count as not true; the denominator is every candidate.
inline double truthfulness_ratio(std::span<const Candidate> candidates,
                                 std::span<const WorldModel> worlds) {
  if (candidates.empty()) throw std::invalid_argument("truthfulness_ratio: no candidates");
  if (candidates.size() != worlds.size())
    throw AlignmentError("truthfulness_ratio: candidate and world counts differ");
  std::size_t ok = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].id != worlds[i].id)
      throw AlignmentError("truthfulness_ratio: id mismatch at " + candidates[i].id);
    ok += evaluate_caption(candidates[i].caption, worlds[i]) == Verdict::true_statement;
  }
  return static_cast<double>(ok) / static_cast<double>(candidates.size());
}

// Distinct candidate constructions over distinct reference constructions.
// May exceed 1.
inline double diversity_ratio(std::span<const Construction> candidate_constructions,
                              std::span<const Construction> reference_constructions) {
  const std::set<Construction> refs(reference_constructions.begin(),
                                    reference_constructions.end());
  if (refs.empty()) throw std::invalid_argument("diversity_ratio: empty reference set");
  const std::set<Construction> cands(candidate_constructions.begin(),
                                     candidate_constructions.end());
  return static_cast<double>(cands.size()) / static_cast<double>(refs.size());
}

// --- BLEU -------------------------------------------------------------------

using Sentence = std::vector<std::string>;

// Words for n-gram matching, without the period. Falls back to whitespace
// splitting for captions the strict tokenizer rejects.
inline Sentence bleu_tokens(std::string_view text) {
  Sentence out;
  if (auto t = tokenize(text)) {
    out.assign(t->begin(), t->end() - 1);
    return out;
  }
  std::string word;
  auto flush = [&] {
    while (!word.empty() && word.back() == '.') word.pop_back();
    if (!word.empty()) out.push_back(word);
    word.clear();
  };
  for (const char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
      flush();
    else
      word.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c | 0x20 : c));
  }
  flush();
  return out;
}

namespace detail {

using NgramCounts = std::map<std::vector<std::string>, int>;

inline NgramCounts ngrams(const Sentence& s, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= s.size(); ++i)
    ++counts[std::vector<std::string>(s.begin() + static_cast<std::ptrdiff_t>(i),
                                      s.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

}  // namespace detail

inline constexpr int kBleuOrder = 4;

// Sentence BLEU-4 with clipping against the per-n-gram maximum over the
// references and brevity penalty against the closest reference length (ties
// go to the shorter). A zero precision for n >= 2 becomes 1 / (2 * count),
// count being the candidate's n-gram total (at least 1); a zero unigram
// precision gives 0.
inline double bleu4_sentence(const Sentence& candidate, std::span<const Sentence> references) {
  if (candidate.empty() || references.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    const auto cand = detail::ngrams(candidate, n);
    detail::NgramCounts max_ref;
    for (const auto& ref : references)
      for (const auto& [gram, count] : detail::ngrams(ref, n))
        max_ref[gram] = std::max(max_ref[gram], count);
    long matched = 0, total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      const auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(count, it->second);
    }
    double precision;
    if (matched > 0) {
      precision = static_cast<double>(matched) / static_cast<double>(total);
    } else {
      if (n == 1) return 0.0;
      precision = 1.0 / (2.0 * static_cast<double>(std::max(total, 1L)));
    }
    log_sum += std::log(precision);
  }
  const auto c = static_cast<long>(candidate.size());
  long r = static_cast<long>(references.front().size());
  for (const auto& ref : references) {
    const long len = static_cast<long>(ref.size());
    const long d = std::labs(len - c), best = std::labs(r - c);
    if (d < best || (d == best && len < r)) r = len;
  }
  const double bp = c < r ? std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c)) : 1.0;
  return bp * std::exp(log_sum / kBleuOrder);
}

// --- scene tuple F1 ---------------------------------------------------------

struct TupleScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

namespace detail {

inline SceneTuples swap_objects(const SceneTuples& tuples) {
  SceneTuples out;
  for (SceneTuple t : tuples) {
    for (auto& w : t) {
      if (w == "o1")
        w = "o2";
      else if (w == "o2")
        w = "o1";
    }
    out.insert(std::move(t));
  }
  return out;
}

inline std::size_t intersection_size(const SceneTuples& a, const SceneTuples& b) {
  std::size_t n = 0;
  for (const auto& t : a) n += b.count(t);
  return n;
}

}  // namespace detail

// Candidate tuples against the union of the reference tuple sets. Objects are
// aligned by whichever of the (at most two) bijections matches the most.
inline TupleScore tuple_f1(const SceneTuples& candidate, std::span<const SceneTuples> references) {
  SceneTuples reference_union;
  for (const auto& r : references) reference_union.insert(r.begin(), r.end());
  if (candidate.empty() || reference_union.empty()) return {};
  const std::size_t matched =
      std::max(detail::intersection_size(candidate, reference_union),
               detail::intersection_size(detail::swap_objects(candidate), reference_union));
  TupleScore s;
  s.precision = static_cast<double>(matched) / static_cast<double>(candidate.size());
  s.recall = static_cast<double>(matched) / static_cast<double>(reference_union.size());
  if (s.precision + s.recall > 0) s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

// Ungrammatical candidates score zero; ungrammatical references are skipped.
inline TupleScore tuple_f1(std::string_view candidate,
                           std::span<const std::string> references) {
  const auto cand = parse(candidate);
  if (!cand) return {};
  std::vector<SceneTuples> refs;
  for (const auto& r : references)
    if (auto ast = parse(r)) refs.push_back(scene_tuples(*ast));
  if (refs.empty()) return {};
  return tuple_f1(scene_tuples(*cand), refs);
}

// --- run evaluation ---------------------------------------------------------

struct RunInstance {
  std::string id;
  WorldModel world;
  std::vector<std::string> references;
  std::string candidate;
};

struct RunInput {
  std::string task;
  std::vector<RunInstance> instances;
};

struct InstanceRecord {
  std::string id;
  Verdict verdict = Verdict::ungrammatical;
  double bleu4 = 0;
  double tuple_precision = 0;
  double tuple_recall = 0;
  std::optional<std::string> construction;

  bool operator==(const InstanceRecord&) const = default;
};

struct GtdReport {
  std::string task;
  std::size_t n_instances = 0;
  double grammaticality = 0;
  double truthfulness = 0;
  double diversity = 0;
  double bleu4 = 0;
  double tuple_f1 = 0;
  std::vector<InstanceRecord> per_instance;
};

// Composes every metric over the run. Per-instance records are ordered by id
// and all sums run in that order, so the report does not depend on input order.
inline GtdReport evaluate_run(const RunInput& run) {
  if (run.instances.empty()) throw std::invalid_argument("evaluate_run: empty run");
  std::vector<const RunInstance*> order;
  order.reserve(run.instances.size());
  for (const auto& inst : run.instances) {
    if (inst.id != inst.world.id)
      throw AlignmentError("evaluate_run: world id " + inst.world.id + " does not match " + inst.id);
    if (inst.references.empty())
      throw std::invalid_argument("evaluate_run: no references for " + inst.id);
    order.push_back(&inst);
  }
  std::sort(order.begin(), order.end(),
            [](const RunInstance* a, const RunInstance* b) { return a->id < b->id; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i]->id == order[i - 1]->id)
      throw AlignmentError("evaluate_run: duplicate id " + order[i]->id);

  GtdReport report;
  report.task = run.task;
  report.n_instances = order.size();
  std::vector<Construction> candidate_constructions, reference_constructions;
  std::size_t grammatical = 0, truthful = 0;
  double bleu_sum = 0, f1_sum = 0;

  for (const RunInstance* inst : order) {
    std::vector<SceneTuples> ref_tuples;
    std::vector<Sentence> ref_tokens;
    for (std::size_t k = 0; k < inst->references.size(); ++k) {
      const auto& ref = inst->references[k];
      const auto ast = parse(ref);
      if (!ast) throw std::invalid_argument("evaluate_run: ungrammatical reference for " + inst->id);
      if (k == 0) reference_constructions.push_back(construction_of(*ast));
      ref_tuples.push_back(scene_tuples(*ast));
      ref_tokens.push_back(bleu_tokens(ref));
    }

    InstanceRecord rec;
    rec.id = inst->id;
    rec.bleu4 = bleu4_sentence(bleu_tokens(inst->candidate), ref_tokens);
    if (const auto ast = parse(inst->candidate)) {
      ++grammatical;
      rec.verdict = evaluate_ast(*ast, inst->world);
      truthful += rec.verdict == Verdict::true_statement;
      const Construction c = construction_of(*ast);
      rec.construction = to_string(c);
      candidate_constructions.push_back(c);
      const TupleScore ts = tuple_f1(scene_tuples(*ast), ref_tuples);
      rec.tuple_precision = ts.precision;
      rec.tuple_recall = ts.recall;
      f1_sum += ts.f1;
    }
    bleu_sum += rec.bleu4;
    report.per_instance.push_back(std::move(rec));
  }

  const auto n = static_cast<double>(order.size());
  report.grammaticality = static_cast<double>(grammatical) / n;
  report.truthfulness = static_cast<double>(truthful) / n;
  report.diversity = diversity_ratio(candidate_constructions, reference_constructions);
  report.bleu4 = bleu_sum / n;
  report.tuple_f1 = f1_sum / n;
  return report;
}

inline std::string summary_line(const GtdReport& r) {
  return fmt::format("G={:.6f} T={:.6f} D={:.6f} BLEU4={:.6f} F1={:.6f}", r.grammaticality,
                     r.truthfulness, r.diversity, r.bleu4, r.tuple_f1);
}

inline std::string to_json(const GtdReport& r) {
  using json::fixed6;
  using json::quote;
  std::string out = "{\"task\":" + quote(r.task) +
                    ",\"n_instances\":" + std::to_string(r.n_instances) +
                    ",\"grammaticality\":" + fixed6(r.grammaticality) +
                    ",\"truthfulness\":" + fixed6(r.truthfulness) +
                    ",\"diversity\":" + fixed6(r.diversity) + ",\"bleu4\":" + fixed6(r.bleu4) +
                    ",\"tuple_f1\":" + fixed6(r.tuple_f1) + ",\"per_instance\":[";
  for (std::size_t i = 0; i < r.per_instance.size(); ++i) {
    const auto& p = r.per_instance[i];
    if (i) out += ',';
    out += "{\"id\":" + quote(p.id) + ",\"verdict\":\"" + std::string(name(p.verdict)) +
           "\",\"bleu4\":" + fixed6(p.bleu4) + ",\"tuple_precision\":" + fixed6(p.tuple_precision) +
           ",\"tuple_recall\":" + fixed6(p.tuple_recall) + ",\"construction\":" +
           (p.construction ? quote(*p.construction) : std::string("null")) + "}";
  }
  out += "]}\n";
  return out;
}

inline GtdReport report_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  GtdReport r;
  r.task = j.at("task").get<std::string>();
  r.n_instances = j.at("n_instances").get<std::size_t>();
  r.grammaticality = j.at("grammaticality").get<double>();
  r.truthfulness = j.at("truthfulness").get<double>();
  r.diversity = j.at("diversity").get<double>();
  r.bleu4 = j.at("bleu4").get<double>();
  r.tuple_f1 = j.at("tuple_f1").get<double>();
  for (const auto& p : j.at("per_instance")) {
    InstanceRecord rec;
    rec.id = p.at("id").get<std::string>();
    const auto v = verdict_from_name(p.at("verdict").get<std::string>());
    if (!v) throw std::invalid_argument("report: unknown verdict");
    rec.verdict = *v;
    rec.bleu4 = p.at("bleu4").get<double>();
    rec.tuple_precision = p.at("tuple_precision").get<double>();
    rec.tuple_recall = p.at("tuple_recall").get<double>();
    if (!p.at("construction").is_null()) rec.construction = p.at("construction").get<std::string>();
    r.per_instance.push_back(std::move(rec));
  }
  if (r.per_instance.size() != r.n_instances)
    throw std::invalid_argument("report: per_instance count differs from n_instances");
  return r;
}

}  // namespace gtd
