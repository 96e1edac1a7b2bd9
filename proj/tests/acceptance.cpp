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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include <fmt/format.h>

#include "gtd/gtd.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

namespace {

using namespace gtd;
using testing::TempDir;

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr std::size_t kInstances = 1000;
constexpr double kRelationFlipBleuFloor = 0.4;
constexpr double kSingleFactF1Ceiling = 0.8;

// Generated 1,000-instance test splits, shared between criteria.
std::map<Task, std::unique_ptr<TempDir>>& datasets() {
  static std::map<Task, std::unique_ptr<TempDir>> d;
  return d;
}

const Dataset dataset_for(Task task) {
  auto& slot = datasets()[task];
  if (!slot) {
    slot = std::make_unique<TempDir>("gtd-acceptance");
    DatasetSpec spec;
    spec.task = task;
    spec.n_train = 1;
    spec.n_val = 1;
    spec.n_test = kInstances;
    spec.n_refs = 10;
    spec.master_seed = 2017;
    generate_dataset(spec, slot->path());
  }
  return load_dataset(slot->path());
}

GtdReport run_bot(const Dataset& d, Bot bot) {
  std::map<std::string, std::string> cands;
  for (const auto& c : make_baseline(d, bot)) cands[c.id] = c.caption;
  return evaluate_run(make_run(d, cands));
}

Outcome self_consistency() {
  const auto start = std::chrono::steady_clock::now();
  std::string bad;
  for (Task task : kTasks) {
    const GtdReport r = run_bot(dataset_for(task), Bot::echo_first_ref);
    if (!(r.n_instances == kInstances && r.grammaticality == 1.0 && r.truthfulness == 1.0 &&
          r.diversity == 1.0 && r.bleu4 == 1.0))
      bad += fmt::format(" {}: {}", name(task), summary_line(r));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 120.0) bad += fmt::format(" runtime {:.1f}s", secs);
  return {bad.empty(), fmt::format("6 tasks x {} instances in {:.1f}s{}", kInstances, secs, bad)};
}

Outcome oracle_equivalence() {
  // (a) every Exists over all worlds of <= 2 entities, 2 shapes x 2 colors, 3x3 grid.
  std::vector<Entity> entities;
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c)
      for (int gx = 0; gx < 3; ++gx)
        for (int gy = 0; gy < 3; ++gy)
          entities.push_back(testing::make_entity(kShapes[static_cast<std::size_t>(s)],
                                                  kColors[static_cast<std::size_t>(c)],
                                                  0.25 + 0.25 * gx, 0.25 + 0.25 * gy));
  std::vector<Descriptor> descriptors{Descriptor{}};
  for (int s = 0; s < 2; ++s) descriptors.push_back({kShapes[static_cast<std::size_t>(s)], std::nullopt});
  for (int c = 0; c < 2; ++c) descriptors.push_back({std::nullopt, kColors[static_cast<std::size_t>(c)]});
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c)
      descriptors.push_back({kShapes[static_cast<std::size_t>(s)], kColors[static_cast<std::size_t>(c)]});
  std::vector<WorldModel> worlds{{"w", {}}};
  for (const auto& a : entities) {
    worlds.push_back({"w", {a}});
    for (const auto& b : entities) worlds.push_back({"w", {a, b}});
  }
  std::size_t sweep = 0, disagreements = 0;
  for (const auto& d : descriptors)
    for (bool sat : {true, false})
      for (const auto& w : worlds) {
        const Proposition p = Exists{d, sat};
        disagreements += evaluate(p, w) != testing::oracle_evaluate(p, w);
        ++sweep;
      }
  // (b) randomized propositions of every kind over random grid worlds.
  Rng rng(31337);
  std::size_t randomized = 0;
  for (int i = 0; i < 10000; ++i) {
    const WorldModel w = testing::random_grid_world(rng);
    const Proposition p = testing::random_proposition(rng, i % 4);
    disagreements += evaluate(p, w) != testing::oracle_evaluate(p, w);
    ++randomized;
  }
  return {disagreements == 0, fmt::format("(a) {} exhaustive + (b) {} randomized, {} disagreements",
                                          sweep, randomized, disagreements)};
}

Outcome table_fidelity() {
  std::size_t checks = 0;
  std::string bad;
  for (const auto& row : testing::sample_caption_worlds())
    for (const auto& cap : row.captions) {
      ++checks;
      const Verdict want = cap.truthful ? Verdict::true_statement : Verdict::false_statement;
      const Verdict got = evaluate_caption(cap.text, row.world);
      if (got != want) bad += fmt::format(" [{}] \"{}\" -> {}", row.label, cap.text, name(got));
    }
  return {bad.empty(), fmt::format("{} sample captions{}", checks, bad)};
}

Outcome gaming_detection() {
  const Dataset d = dataset_for(Task::existential_multishapes);
  const GtdReport generic = run_bot(d, Bot::constant_generic);
  const GtdReport echo = run_bot(d, Bot::echo_first_ref);
  const bool pass = generic.truthfulness == 1.0 && generic.diversity <= 0.5 && echo.diversity == 1.0;
  return {pass, fmt::format("constant-generic T={:.6f} D={:.6f}; echo-first-ref D={:.6f}",
                            generic.truthfulness, generic.diversity, echo.diversity)};
}

Outcome metric_divergence() {
  const GtdReport r = run_bot(dataset_for(Task::spatial_twoshapes), Bot::relation_flip);
  return {r.truthfulness == 0.0 && r.bleu4 >= kRelationFlipBleuFloor,
          fmt::format("relation-flip T={:.6f} BLEU4={:.6f} (floor {})", r.truthfulness, r.bleu4,
                      kRelationFlipBleuFloor)};
}

Outcome tuple_recall() {
  const GtdReport r = run_bot(dataset_for(Task::existential_multishapes), Bot::echo_first_ref);
  double precision = 0;
  for (const auto& rec : r.per_instance) precision += rec.tuple_precision;
  precision /= static_cast<double>(r.per_instance.size());
  return {precision == 1.0 && r.tuple_f1 < kSingleFactF1Ceiling,
          fmt::format("echo-first-ref precision={:.6f} F1={:.6f} (ceiling {})", precision,
                      r.tuple_f1, kSingleFactF1Ceiling)};
}

Outcome grammar_round_trip() {
  const auto combos = testing::all_kind_combos();
  Rng rng(4242);
  std::size_t checks = 0, failures = 0;
  std::string first;
  for (const auto& combo : combos)
    for (int i = 0; i < 1000; ++i) {
      const CaptionAst ast = testing::random_ast(combo, rng);
      const std::string text = realize(ast, rng);
      const bool ok = parse(text) == std::optional<CaptionAst>(ast);
      ++checks;
      if (!ok && failures++ == 0) first = " first failure: " + text;
    }
  return {failures == 0 && combos.size() == 54,
          fmt::format("{} combinations, {} round trips, {} failures{}", combos.size(), checks,
                      failures, first)};
}

Outcome determinism() {
  DatasetSpec spec;
  spec.task = Task::spatial_multishapes;
  spec.n_train = 100;
  spec.n_val = 100;
  spec.n_test = 100;
  spec.master_seed = 5;
  TempDir a("gtd-det"), b("gtd-det"), c("gtd-det");
  generate_dataset(spec, a.path());
  generate_dataset(spec, b.path());
  spec.master_seed = 6;
  generate_dataset(spec, c.path());
  const auto da = testing::digest_tree(a.path());
  const auto db = testing::digest_tree(b.path());
  const auto dc = testing::digest_tree(c.path());
  std::size_t differing = 0;
  for (const auto& [path, digest] : da) differing += !dc.count(path) || dc.at(path) != digest;
  const bool pass = da == db && da.size() == 300 + 7 && differing > 0 &&
                    dc.at("test/worlds.jsonl") != da.at("test/worlds.jsonl");
  return {pass, fmt::format("{} files identical under one seed: {}; {} files differ under another",
                            da.size(), da == db ? "yes" : "no", differing)};
}

Outcome totality() {
  Rng rng(65537);
  const WorldModel w = testing::multishape_world();
  const std::string alphabet = "abcdefghilmnopqrstuvwxyz ATE.";
  std::array<std::size_t, 3> verdicts{};
  std::size_t crashes = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    const std::size_t len = rng.index(48);
    const int mode = i % 3;
    for (std::size_t k = 0; k < len; ++k) {
      if (mode == 0) s.push_back(static_cast<char>(rng.index(256)));
      else s.push_back(alphabet[rng.index(alphabet.size())]);
    }
    if (mode == 2) {
      // Splice random bytes into a grammatical caption.
      s = realize(sample_ast(kTasks[rng.index(kTasks.size())], rng), rng);
      const std::size_t edits = 1 + rng.index(3);
      for (std::size_t e = 0; e < edits; ++e)
        s[rng.index(s.size())] = static_cast<char>(rng.bernoulli(0.5) ? rng.index(256)
                                                                    : alphabet[rng.index(alphabet.size())]);
    }
    try {
      verdicts[static_cast<std::size_t>(evaluate_caption(s, w))]++;
    } catch (...) {
      ++crashes;
    }
  }
  return {crashes == 0, fmt::format("100000 inputs: {} ungrammatical, {} true, {} false, {} exceptions",
                                    verdicts[0], verdicts[1], verdicts[2], crashes)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"reference self-consistency", self_consistency},
      {"oracle equivalence", oracle_equivalence},
      {"sample caption fidelity", table_fidelity},
      {"gaming detection", gaming_detection},
      {"metric divergence", metric_divergence},
      {"tuple recall deficiency", tuple_recall},
      {"grammar round trip", grammar_round_trip},
      {"determinism", determinism},
      {"totality", totality},
  };
  int failed = 0;
  for (const auto& [label, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", label, o.detail.c_str());
    std::fflush(stdout);
  }
  datasets().clear();
  return failed == 0 ? 0 : 1;
}
