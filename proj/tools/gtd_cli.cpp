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

// gtd: generate diagnostic captioning datasets, run baseline caption bots
// and score candidate captions.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtd/gtd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

template <class Array>
std::vector<std::string> names_of(const Array& values) {
  std::vector<std::string> out;
  for (auto v : values) out.emplace_back(gtd::name(v));
  return out;
}

struct GenerateArgs {
  std::string task;
  std::size_t train = 200000;
  std::size_t val = 4096;
  std::size_t test = 4096;
  std::size_t refs = 10;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  gtd::DatasetSpec spec;
  spec.task = *gtd::task_from_name(a.task);
  spec.n_train = a.train;
  spec.n_val = a.val;
  spec.n_test = a.test;
  spec.n_refs = a.refs;
  spec.master_seed = a.seed;
  const gtd::Manifest m = gtd::generate_dataset(spec, a.out);
  std::cout << "generated " << gtd::name(m.spec.task) << ": train=" << m.spec.n_train
            << " val=" << m.spec.n_val << " test=" << m.spec.n_test
            << " refs=" << m.spec.n_refs << " seed=" << m.spec.master_seed
            << " grammar=" << m.grammar_version << " -> " << a.out << "\n";
  return kExitOk;
}

int run_evaluate(const std::string& dataset_dir, const std::string& candidates,
                 const std::string& out) {
  const auto dataset = gtd::load_dataset(dataset_dir);
  const auto cands = gtd::read_candidates(candidates, dataset.ids(gtd::Split::test));
  const gtd::GtdReport report = gtd::evaluate_run(gtd::make_run(dataset, cands));
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw gtd::DatasetError("cannot write report " + out);
  f << gtd::to_json(report);
  f.close();
  if (!f) throw gtd::DatasetError("write failed for report " + out);
  std::cout << gtd::summary_line(report) << "\n";
  return kExitOk;
}

int run_baseline(const std::string& dataset_dir, const std::string& bot_name,
                 const std::string& out) {
  const auto dataset = gtd::load_dataset(dataset_dir);
  const gtd::Bot bot = *gtd::bot_from_name(bot_name);
  gtd::check_bot(bot, dataset.task());
  gtd::write_candidates(out, gtd::make_baseline(dataset, bot));
  return kExitOk;
}

int run_inspect(const std::string& dataset_dir, const std::string& id) {
  const auto dataset = gtd::load_dataset(dataset_dir);
  const auto parsed = gtd::parse_instance_id(id);
  if (!parsed || parsed->second >= dataset.size(parsed->first))
    throw gtd::DatasetError("unknown instance id " + id);
  const auto instances = dataset.load(parsed->first);
  const gtd::Instance& inst = instances.at(parsed->second);
  std::cout << "id: " << inst.id << "\n";
  std::cout << "image: " << inst.image.string() << "\n";
  std::cout << "world: " << gtd::to_json_line(inst.world) << "\n";
  for (const auto& caption : inst.captions)
    std::cout << gtd::name(gtd::evaluate_caption(caption, inst.world)) << "\t" << caption << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammaticality, truthfulness and diversity evaluation for image captioning"};
  app.require_subcommand(1);

  const auto task_names = names_of(gtd::kTasks);
  const auto bot_names = names_of(gtd::kBots);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a dataset variant");
  generate->add_option("--task", gen.task, "Dataset variant")
      ->required()
      ->check(CLI::IsMember(task_names));
  generate->add_option("--train", gen.train, "Training instances")->capture_default_str()->check(CLI::PositiveNumber);
  generate->add_option("--val", gen.val, "Validation instances")->capture_default_str()->check(CLI::PositiveNumber);
  generate->add_option("--test", gen.test, "Test instances")->capture_default_str()->check(CLI::PositiveNumber);
  generate->add_option("--refs", gen.refs, "Reference captions per test instance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();

  std::string dataset_dir, candidates, out, bot, id;
  auto* evaluate = app.add_subcommand("evaluate", "Score a candidate file against a dataset");
  evaluate->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  evaluate->add_option("--candidates", candidates, "Candidate JSON-lines file")->required();
  evaluate->add_option("--out", out, "Report JSON path")->required();

  auto* baseline = app.add_subcommand("baseline", "Write a candidate file from a caption bot");
  baseline->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  baseline->add_option("--bot", bot, "Caption bot")->required()->check(CLI::IsMember(bot_names));
  baseline->add_option("--out", out, "Candidate file path")->required();

  auto* inspect = app.add_subcommand("inspect", "Print one instance with caption verdicts");
  inspect->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  inspect->add_option("--id", id, "Instance id, e.g. test-000000")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (evaluate->parsed()) return run_evaluate(dataset_dir, candidates, out);
    if (baseline->parsed()) return run_baseline(dataset_dir, bot, out);
    if (inspect->parsed()) return run_inspect(dataset_dir, id);
  } catch (const gtd::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
