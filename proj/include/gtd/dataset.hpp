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

// On-disk datasets:
//
//   out/meta.json
//   out/{train,val,test}/images/NNNNNN.png
//   out/{train,val,test}/worlds.jsonl        {"id","entities":[...]}
//   out/{train,val}/captions.jsonl           {"id","caption"}
//   out/test/references.jsonl                {"id","captions":[...]}
//
// Test worlds are listed as evaluation-only in the manifest. Each instance is
// generated from its own seed, derived from (master seed, split, index).

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gtd/generator.hpp"
#include "gtd/json_util.hpp"
#include "gtd/lexicon.hpp"
#include "gtd/metrics.hpp"
#include "gtd/random.hpp"
#include "gtd/realizer.hpp"
#include "gtd/renderer.hpp"
#include "gtd/worldmodel.hpp"

namespace gtd {

namespace fs = std::filesystem;

inline constexpr int kFormatVersion = 1;
inline constexpr int kMaxWorldAttempts = 100;

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptDatasetError : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

class VersionMismatchError : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

// Invalid combination of user choices (for example a bot that does not fit
// the dataset's task).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Split : std::uint8_t { train, val, test };

inline constexpr std::array<Split, 3> kSplits = {Split::train, Split::val, Split::test};

inline constexpr std::string_view name(Split s) {
  constexpr std::array<std::string_view, 3> names = {"train", "val", "test"};
  return names[static_cast<std::size_t>(s)];
}

inline std::string instance_id(Split split, std::size_t index) {
  return fmt::format("{}-{:06d}", name(split), index);
}

// Inverse of instance_id.
inline std::optional<std::pair<Split, std::size_t>> parse_instance_id(std::string_view id) {
  for (Split s : kSplits) {
    const std::string prefix = std::string(name(s)) + "-";
    if (id.substr(0, prefix.size()) != prefix) continue;
    const std::string_view digits = id.substr(prefix.size());
    if (digits.size() < 6 || !std::all_of(digits.begin(), digits.end(),
                                          [](char c) { return c >= '0' && c <= '9'; }))
      return std::nullopt;
    const std::size_t index = std::stoull(std::string(digits));
    if (instance_id(s, index) != id) return std::nullopt;
    return std::pair{s, index};
  }
  return std::nullopt;
}

inline std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

struct DatasetSpec {
  Task task = Task::existential_oneshape;
  std::size_t n_train = 200000;
  std::size_t n_val = 4096;
  std::size_t n_test = 4096;
  std::size_t n_refs = 10;
  std::uint64_t master_seed = 0;
  int canvas_size = kDefaultCanvas;

  std::size_t count(Split s) const {
    return s == Split::train ? n_train : s == Split::val ? n_val : n_test;
  }
  std::size_t captions_per_instance(Split s) const { return s == Split::test ? n_refs : 1; }

  void validate() const {
    if (n_train < 1 || n_val < 1 || n_test < 1 || n_refs < 1)
      throw std::invalid_argument("DatasetSpec: counts must be >= 1");
    if (canvas_size < 32) throw std::invalid_argument("DatasetSpec: canvas size must be >= 32");
  }
};

struct FileRecord {
  std::size_t lines = 0;
  std::string fnv1a64;
};

// Contents of meta.json.
struct Manifest {
  int format_version = kFormatVersion;
  DatasetSpec spec;
  std::string grammar_version;
  std::string color_table;
  std::vector<std::string> evaluation_only;
  std::map<std::string, FileRecord> files;
};

inline std::string manifest_json(const Manifest& m) {
  nlohmann::json j;
  j["format_version"] = m.format_version;
  j["task"] = std::string(name(m.spec.task));
  j["n_train"] = m.spec.n_train;
  j["n_val"] = m.spec.n_val;
  j["n_test"] = m.spec.n_test;
  j["n_refs"] = m.spec.n_refs;
  j["master_seed"] = m.spec.master_seed;
  j["canvas_size"] = m.spec.canvas_size;
  j["grammar_version"] = m.grammar_version;
  j["color_table"] = m.color_table;
  j["evaluation_only"] = m.evaluation_only;
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [path, rec] : m.files)
    files[path] = {{"lines", rec.lines}, {"fnv1a64", rec.fnv1a64}};
  j["files"] = files;
  return j.dump(2) + "\n";
}

inline Manifest manifest_from_json(std::string_view text) {
  Manifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.format_version = j.at("format_version").get<int>();
    const auto task = task_from_name(j.at("task").get<std::string>());
    if (!task) throw CorruptDatasetError("meta.json: unknown task");
    m.spec.task = *task;
    m.spec.n_train = j.at("n_train").get<std::size_t>();
    m.spec.n_val = j.at("n_val").get<std::size_t>();
    m.spec.n_test = j.at("n_test").get<std::size_t>();
    m.spec.n_refs = j.at("n_refs").get<std::size_t>();
    m.spec.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.spec.canvas_size = j.at("canvas_size").get<int>();
    m.grammar_version = j.at("grammar_version").get<std::string>();
    m.color_table = j.at("color_table").get<std::string>();
    m.evaluation_only = j.at("evaluation_only").get<std::vector<std::string>>();
    for (const auto& [path, rec] : j.at("files").items())
      m.files[path] = {rec.at("lines").get<std::size_t>(), rec.at("fnv1a64").get<std::string>()};
  } catch (const nlohmann::json::exception& e) {
    throw CorruptDatasetError(std::string("meta.json: ") + e.what());
  }
  return m;
}

// --- generation -------------------------------------------------------------

struct GeneratedInstance {
  std::string id;
  WorldModel world;
  std::vector<std::string> captions;
};

// Regenerates one instance from (master seed, split, index) alone.
inline GeneratedInstance generate_instance(const DatasetSpec& spec, Split split,
                                           std::size_t index) {
  const std::uint64_t seed = derive_seed(spec.master_seed, name(split), index);
  const WorldSpec world_spec = WorldSpec::for_task(spec.task);
  const std::size_t n_captions = spec.captions_per_instance(split);
  Rng rng(seed);
  GeneratedInstance inst;
  inst.id = instance_id(split, index);
  for (int attempt = 0; attempt < kMaxWorldAttempts; ++attempt) {
    try {
      inst.world = sample_world(world_spec, rng, inst.id);
      inst.captions.clear();
      // Each caption has its own stream; duplicates among references are allowed.
      for (std::size_t k = 0; k < n_captions; ++k) {
        Rng caption_rng(derive_seed(seed, "caption-" + std::to_string(attempt), k));
        inst.captions.push_back(generate_caption(inst.world, spec.task, caption_rng).text);
      }
      return inst;
    } catch (const InfeasibleError&) {
      continue;
    }
  }
  throw InfeasibleError("generate_instance: no feasible world for " + inst.id);
}

namespace detail {

class JsonlWriter {
 public:
  JsonlWriter(const fs::path& root, std::string relative)
      : relative_(std::move(relative)), out_(root / relative_, std::ios::binary | std::ios::trunc) {
    if (!out_) throw DatasetError("cannot write " + (root / relative_).string());
  }

  void line(const std::string& s) {
    out_ << s << '\n';
    hash_ = fnv1a64(s, hash_);
    hash_ = fnv1a64("\n", hash_);
    ++lines_;
  }

  std::pair<std::string, FileRecord> finish() {
    out_.close();
    if (!out_) throw DatasetError("write failed for " + relative_);
    return {relative_, {lines_, hex64(hash_)}};
  }

 private:
  std::string relative_;
  std::ofstream out_;
  std::uint64_t hash_ = kFnvOffset;
  std::size_t lines_ = 0;
};

inline std::string caption_line(const std::string& id, const std::string& caption) {
  return "{\"id\":" + json::quote(id) + ",\"caption\":" + json::quote(caption) + "}";
}

inline std::string references_line(const std::string& id, const std::vector<std::string>& caps) {
  std::string s = "{\"id\":" + json::quote(id) + ",\"captions\":[";
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (i) s += ',';
    s += json::quote(caps[i]);
  }
  return s + "]}";
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DatasetError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw DatasetError("write failed for " + path.string());
}

}  // namespace detail

inline Manifest generate_dataset(const DatasetSpec& spec, const fs::path& out_dir) {
  spec.validate();
  Manifest manifest;
  manifest.spec = spec;
  manifest.grammar_version = hex64(lexicon::grammar_hash());
  manifest.color_table = hex64(color_table_hash());
  manifest.evaluation_only = {"test/worlds.jsonl"};

  for (Split split : kSplits) {
    const std::string dir(name(split));
    fs::create_directories(out_dir / dir / "images");
    detail::JsonlWriter worlds(out_dir, dir + "/worlds.jsonl");
    detail::JsonlWriter captions(out_dir, split == Split::test ? dir + "/references.jsonl"
                                                               : dir + "/captions.jsonl");
    for (std::size_t i = 0; i < spec.count(split); ++i) {
      const GeneratedInstance inst = generate_instance(spec, split, i);
      write_png(out_dir / dir / "images" / fmt::format("{:06d}.png", i),
                render(inst.world, spec.canvas_size));
      worlds.line(to_json_line(inst.world));
      captions.line(split == Split::test ? detail::references_line(inst.id, inst.captions)
                                         : detail::caption_line(inst.id, inst.captions.front()));
    }
    manifest.files.insert(worlds.finish());
    manifest.files.insert(captions.finish());
  }
  detail::write_text(out_dir / "meta.json", manifest_json(manifest));
  return manifest;
}

// --- loading ----------------------------------------------------------------

struct Instance {
  std::string id;
  WorldModel world;
  fs::path image;
  std::vector<std::string> captions;
};

namespace detail {

inline std::vector<std::string> read_checked_lines(const fs::path& root, const std::string& rel,
                                                   const Manifest& m) {
  const auto it = m.files.find(rel);
  if (it == m.files.end()) throw CorruptDatasetError("corrupt dataset: " + rel + " not in manifest");
  std::ifstream in(root / rel, std::ios::binary);
  if (!in) throw CorruptDatasetError("corrupt dataset: missing " + rel);
  std::vector<std::string> lines;
  std::uint64_t hash = kFnvOffset;
  std::string line;
  while (std::getline(in, line)) {
    hash = fnv1a64(line, hash);
    hash = fnv1a64("\n", hash);
    lines.push_back(std::move(line));
  }
  if (lines.size() != it->second.lines)
    throw CorruptDatasetError(fmt::format("corrupt dataset: {} has {} lines, expected {}", rel,
                                          lines.size(), it->second.lines));
  if (hex64(hash) != it->second.fnv1a64)
    throw CorruptDatasetError("corrupt dataset: checksum mismatch in " + rel);
  return lines;
}

}  // namespace detail

// Read-only handle over a generated dataset. Opening validates the manifest;
// splits are read on demand and images are only referenced by path.
class Dataset {
 public:
  static Dataset open(const fs::path& dir) {
    std::ifstream in(dir / "meta.json", std::ios::binary);
    if (!in) throw DatasetError("not a dataset (missing meta.json): " + dir.string());
    std::stringstream buf;
    buf << in.rdbuf();
    Dataset d;
    d.root_ = dir;
    d.manifest_ = manifest_from_json(buf.str());
    if (d.manifest_.format_version != kFormatVersion)
      throw VersionMismatchError(fmt::format("dataset format version {} is not supported (expected {})",
                                             d.manifest_.format_version, kFormatVersion));
    const std::string grammar = hex64(lexicon::grammar_hash());
    if (d.manifest_.grammar_version != grammar)
      throw VersionMismatchError("dataset grammar version " + d.manifest_.grammar_version +
                                 " differs from this build's grammar version " + grammar);
    const std::string colors = hex64(color_table_hash());
    if (d.manifest_.color_table != colors)
      throw VersionMismatchError("dataset color table " + d.manifest_.color_table +
                                 " differs from this build's color table " + colors);
    return d;
  }

  const Manifest& manifest() const { return manifest_; }
  Task task() const { return manifest_.spec.task; }
  const fs::path& root() const { return root_; }
  std::size_t size(Split s) const { return manifest_.spec.count(s); }

  std::vector<Instance> load(Split split) const {
    const std::string dir(name(split));
    const auto world_lines = detail::read_checked_lines(root_, dir + "/worlds.jsonl", manifest_);
    const auto caption_lines = detail::read_checked_lines(
        root_, split == Split::test ? dir + "/references.jsonl" : dir + "/captions.jsonl",
        manifest_);
    if (world_lines.size() != size(split) || caption_lines.size() != size(split))
      throw CorruptDatasetError("corrupt dataset: " + dir + " counts differ from manifest");
    std::vector<Instance> out;
    out.reserve(size(split));
    for (std::size_t i = 0; i < world_lines.size(); ++i) {
      Instance inst;
      try {
        inst.world = world_from_json_line(world_lines[i]);
        const auto j = nlohmann::json::parse(caption_lines[i]);
        inst.id = j.at("id").get<std::string>();
        if (split == Split::test)
          inst.captions = j.at("captions").get<std::vector<std::string>>();
        else
          inst.captions = {j.at("caption").get<std::string>()};
      } catch (const std::exception& e) {
        throw CorruptDatasetError(fmt::format("corrupt dataset: {} line {}: {}", dir, i + 1, e.what()));
      }
      if (inst.id != instance_id(split, i) || inst.world.id != inst.id)
        throw CorruptDatasetError(fmt::format("corrupt dataset: {} line {} has id {}", dir, i + 1, inst.id));
      if (inst.captions.size() != manifest_.spec.captions_per_instance(split))
        throw CorruptDatasetError("corrupt dataset: wrong caption count for " + inst.id);
      inst.image = root_ / dir / "images" / fmt::format("{:06d}.png", i);
      out.push_back(std::move(inst));
    }
    return out;
  }

  std::vector<std::string> ids(Split split) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(split); ++i) out.push_back(instance_id(split, i));
    return out;
  }

 private:
  Dataset() = default;
  fs::path root_;
  Manifest manifest_;
};

inline Dataset load_dataset(const fs::path& dir) { return Dataset::open(dir); }

// --- candidate files --------------------------------------------------------

inline std::string candidate_line(const Candidate& c) {
  return detail::caption_line(c.id, c.caption);
}

// Writes {"id","caption"} lines sorted by id.
inline void write_candidates(const fs::path& path, std::vector<Candidate> candidates) {
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].id == candidates[i - 1].id)
      throw DatasetError("duplicate candidate id " + candidates[i].id);
  std::string text;
  for (const auto& c : candidates) text += candidate_line(c) + "\n";
  detail::write_text(path, text);
}

// Reads a candidate file against the expected ids. Duplicates, unknown ids
// and malformed lines are errors; missing ids are errors unless strict is off.
inline std::map<std::string, std::string> read_candidates(const fs::path& path,
                                                          const std::vector<std::string>& expected,
                                                          bool strict = true) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot read candidate file " + path.string());
  const std::set<std::string> known(expected.begin(), expected.end());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string id, caption;
    try {
      const auto j = nlohmann::json::parse(line);
      id = j.at("id").get<std::string>();
      caption = j.at("caption").get<std::string>();
    } catch (const std::exception&) {
      throw DatasetError(fmt::format("malformed candidate line {} in {}", line_no, path.string()));
    }
    if (!known.count(id)) throw DatasetError("unknown candidate id " + id);
    if (!out.emplace(id, std::move(caption)).second)
      throw DatasetError("duplicate candidate id " + id);
  }
  if (strict) {
    std::vector<std::string> missing;
    for (const auto& id : expected)
      if (!out.count(id)) missing.push_back(id);
    if (!missing.empty()) {
      std::string msg = fmt::format("missing {} candidate id(s): ", missing.size());
      for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += (i ? ", " : "") + missing[i];
      if (missing.size() > 20) msg += ", ...";
      throw DatasetError(msg);
    }
  }
  return out;
}

// Builds the evaluation run for a dataset's test split.
inline RunInput make_run(const Dataset& dataset, const std::map<std::string, std::string>& candidates) {
  RunInput run;
  run.task = std::string(name(dataset.task()));
  for (auto& inst : dataset.load(Split::test)) {
    const auto it = candidates.find(inst.id);
    if (it == candidates.end()) throw AlignmentError("no candidate for " + inst.id);
    run.instances.push_back({inst.id, std::move(inst.world), std::move(inst.captions), it->second});
  }
  return run;
}

// --- baseline bots ----------------------------------------------------------

enum class Bot : std::uint8_t { echo_first_ref, constant_generic, relation_flip, random_grammar };

inline constexpr std::array<Bot, 4> kBots = {Bot::echo_first_ref, Bot::constant_generic,
                                            Bot::relation_flip, Bot::random_grammar};

inline constexpr std::string_view name(Bot b) {
  constexpr std::array<std::string_view, 4> names = {"echo-first-ref", "constant-generic",
                                                     "relation-flip", "random-grammar"};
  return names[static_cast<std::size_t>(b)];
}

inline std::optional<Bot> bot_from_name(std::string_view s) {
  for (Bot b : kBots)
    if (name(b) == s) return b;
  return std::nullopt;
}

inline constexpr std::string_view kGenericCaption = "There is a shape.";

inline void check_bot(Bot bot, Task task) {
  if (bot == Bot::relation_flip && !is_spatial(task))
    throw UsageError("bot relation-flip requires a spatial task, dataset task is " +
                     std::string(name(task)));
}

// Degenerate candidate generators used to probe metric behavior.
inline std::vector<Candidate> make_baseline(const Dataset& dataset, Bot bot) {
  check_bot(bot, dataset.task());
  std::vector<Candidate> out;
  std::size_t index = 0;
  for (const auto& inst : dataset.load(Split::test)) {
    Candidate c{inst.id, {}};
    switch (bot) {
      case Bot::echo_first_ref: c.caption = inst.captions.front(); break;
      case Bot::constant_generic: c.caption = kGenericCaption; break;
      case Bot::relation_flip: {
        const auto ast = parse(inst.captions.front());
        if (!ast || !std::holds_alternative<Spatial>(*ast))
          throw CorruptDatasetError("relation-flip: reference of " + inst.id + " is not spatial");
        Spatial flipped = std::get<Spatial>(*ast);
        flipped.relation = converse(flipped.relation);
        Rng rng(derive_seed(dataset.manifest().spec.master_seed, "relation-flip", index));
        c.caption = realize(flipped, rng);
        break;
      }
      case Bot::random_grammar: {
        Rng rng(derive_seed(dataset.manifest().spec.master_seed, "random-grammar", index));
        c.caption = realize(sample_ast(dataset.task(), rng), rng);
        break;
      }
    }
    out.push_back(std::move(c));
    ++index;
  }
  return out;
}

}  // namespace gtd
