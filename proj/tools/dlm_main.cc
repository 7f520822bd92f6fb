// Copyright 2026 The DLM Authors
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

// dlm: question generation, difficulty features, learner models and IRT
// calibration from the command line.
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlm/kernels.h"
#include "dlm/pipeline.h"

namespace {

struct Flags {
  std::string ontology;
  std::string format;
  std::vector<std::string> patterns;
  std::string thetas;
  std::map<std::string, std::string> inputs;
};

void add_common(CLI::App* cmd, dlm::RunConfig& config) {
  cmd->add_option("--out", config.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", config.seed, "Seed for every stochastic step")->capture_default_str();
}

void add_ontology(CLI::App* cmd, dlm::RunConfig& config, Flags& flags, bool required) {
  auto* opt = cmd->add_option("--ontology", flags.ontology, "Ontology file (.nt or Turtle)");
  if (required) opt->required();
  cmd->add_option("--format", flags.format, "n-triples or turtle (default: from extension)");
  cmd->add_option("--patterns", flags.patterns, "Pattern ids, e.g. P1,P3 (default: all)")->delimiter(',');
  cmd->add_option("--limit", config.limit, "Maximum questions per pattern")->capture_default_str();
}

void add_input(CLI::App* cmd, Flags& flags, const std::string& name, const std::string& help,
               bool required = false) {
  auto* opt = cmd->add_option("--" + name, flags.inputs[name], help);
  if (required) opt->required();
}

dlm::RunConfig finish(dlm::RunConfig config, const Flags& flags) {
  if (!flags.ontology.empty()) config.ontology = flags.ontology;
  if (!flags.format.empty()) {
    config.format = dlm::rdf_format_from_name(flags.format);
    if (!config.format) throw dlm::InputError("unknown format '" + flags.format + "'");
  }
  config.patterns = flags.patterns;
  if (config.limit == 0) throw dlm::InputError("--limit must be positive");
  if (!flags.thetas.empty()) config.thetas = dlm::parse_theta_map(flags.thetas);
  for (const auto& [name, value] : flags.inputs) {
    if (!value.empty()) config.inputs[name] = value;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difficulty-level modelling of ontology-generated questions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dlm 1.0.0");
  bool show_isa = false;
  app.add_flag("--isa", show_isa, "Print the selected SIMD kernel set to stderr");

  dlm::RunConfig config;
  Flags flags;

  auto* gen = app.add_subcommand("generate", "Generate questions from an ontology");
  add_common(gen, config);
  add_ontology(gen, config, flags, true);

  auto* feat = app.add_subcommand("featurize", "Compute the five features per question");
  add_common(feat, config);
  add_ontology(feat, config, flags, true);
  add_input(feat, flags, "questions", "Question file from generate (default: generate now)");

  auto* rank = app.add_subcommand("rank-features", "Rank features per learner category");
  add_common(rank, config);
  add_input(rank, flags, "expert", "Labeled records for experts");
  add_input(rank, flags, "intermediate", "Labeled records for intermediates");
  add_input(rank, flags, "beginner", "Labeled records for beginners");

  auto* trn = app.add_subcommand("train", "Train and cross-validate the three learner models");
  add_common(trn, config);
  add_input(trn, flags, "expert", "Labeled records for experts", true);
  add_input(trn, flags, "intermediate", "Labeled records for intermediates", true);
  add_input(trn, flags, "beginner", "Labeled records for beginners", true);
  add_input(trn, flags, "masks", "Mask file from rank-features");
  trn->add_flag("--all-features", config.all_features, "Train on all five features");
  trn->add_option("--epochs", config.hyper.epochs)->capture_default_str();
  trn->add_option("--lr", config.hyper.learning_rate)->capture_default_str();
  trn->add_option("--l2", config.hyper.l2)->capture_default_str();
  trn->add_option("--folds", config.folds)->capture_default_str();

  auto* pred = app.add_subcommand("predict", "Predict difficulty levels");
  add_common(pred, config);
  add_ontology(pred, config, flags, false);
  add_input(pred, flags, "models", "Directory holding model_<category>.txt", true);
  add_input(pred, flags, "features", "Feature records (instead of --ontology)");
  add_input(pred, flags, "questions", "Question file to featurize with --ontology");

  auto* cal = app.add_subcommand("calibrate", "Estimate item difficulty from learner responses");
  add_common(cal, config);
  add_input(cal, flags, "responses", "CSV item,learner,category,correct", true);

  for (auto* cmd : {gen, feat, rank, trn, pred, cal}) {
    cmd->add_option("--thetas", flags.thetas, "expert=1.25,intermediate=0,beginner=-1.25");
  }

  auto* rep = app.add_subcommand("report", "Compare predicted and gold difficulty levels");
  add_common(rep, config);
  add_input(rep, flags, "predictions", "CSV with item and level columns", true);
  add_input(rep, flags, "gold", "CSV with item and level columns", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? dlm::kExitSuccess : dlm::kExitInputError;
  }

  return dlm::run_guarded(
      [&] {
        if (show_isa) std::cerr << "kernels: " << dlm::kernels::isa_name(dlm::kernels::active().isa) << '\n';
        dlm::RunConfig run = finish(config, flags);
        if (*gen) dlm::cmd_generate(run, std::cout);
        if (*feat) dlm::cmd_featurize(run, std::cout);
        if (*rank) dlm::cmd_rank_features(run, std::cout);
        if (*trn) dlm::cmd_train(run, std::cout);
        if (*pred) dlm::cmd_predict(run, std::cout);
        if (*cal) dlm::cmd_calibrate(run, std::cout);
        if (*rep) dlm::cmd_report(run, std::cout);
      },
      std::cerr);
}
