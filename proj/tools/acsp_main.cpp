// Copyright 2026 The ACSP Authors. All Rights Reserved.
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

// acsp: dataset generation, training, pruning and evaluation of toy networks.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "acsp/error.hpp"
#include "commands.hpp"

namespace {

int Fail(std::string_view code, const std::string& message) {
  std::cerr << "error code=" << code << " message=\"" << message << "\"\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automatic complementary-separation pruning of toy networks"};
  app.require_subcommand(1);

  acsp::cli::GenDataArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic labeled dataset");
  gen_cmd->add_option("--kind", gen.kind, "blobs | rings")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Number of samples")->capture_default_str();
  gen_cmd->add_option("--classes", gen.classes, "Number of classes")->capture_default_str();
  gen_cmd->add_option("--dims", gen.dims, "Sample shape, e.g. 2 or 1x8x8")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Noise scale")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output dataset file")->required();

  acsp::cli::TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a fresh model; CSV log on stdout");
  train_cmd->add_option("--arch", train.arch, "mlp:2-64-4 or cnn:1x8x8-c8k3-p2-f-4")->required();
  train_cmd->add_option("--data", train.data, "Training dataset")->required();
  train_cmd->add_option("--epochs", train.epochs, "Epochs")->capture_default_str();
  train_cmd->add_option("--lr", train.lr, "Learning rate")->capture_default_str();
  train_cmd->add_option("--batch-size", train.batch_size, "Mini-batch size")->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Seed")->capture_default_str();
  train_cmd->add_option("--out", train.out, "Output model file")->required();

  acsp::cli::PruneArgs prune;
  double ft_lr = 0.0;
  auto* prune_cmd = app.add_subcommand("prune", "Prune every interior layer of a model");
  prune_cmd->add_option("--model", prune.model, "Trained model")->required();
  prune_cmd->add_option("--data", prune.data, "Dataset for activations and fine-tuning")->required();
  prune_cmd->add_option("--out", prune.out, "Output directory")->required();
  prune_cmd->add_option("--degree", prune.degree, "Knee polynomial degree")->capture_default_str();
  prune_cmd->add_option("--selection", prune.selection, "regular | weighted")->capture_default_str();
  prune_cmd->add_option("--stride", prune.stride, "k sweep stride")->capture_default_str();
  prune_cmd->add_option("--ft-fraction", prune.ft_fraction, "Fine-tune data fraction")
      ->capture_default_str();
  prune_cmd->add_option("--ft-epochs", prune.ft_epochs, "Fine-tune epochs")->capture_default_str();
  auto* ft_lr_opt =
      prune_cmd->add_option("--ft-lr", ft_lr, "Fine-tune lr (default 0.1 x training lr)");
  prune_cmd->add_option("--batch-size", prune.batch_size, "Mini-batch size")->capture_default_str();
  prune_cmd->add_option("--seed", prune.seed, "Seed")->capture_default_str();
  prune_cmd->add_flag("--svg", prune.svg, "Also write an SVG chart per MSS curve");
  prune_cmd->add_flag("--pre-nonlinearity", prune.pre_nonlinearity,
                      "Capture activations before the ReLU");
  prune_cmd->add_flag("--freeze-upstream", prune.freeze_upstream,
                      "Fine-tune only the pruned layer and later layers");
  prune_cmd->add_option("--pam-restarts", prune.pam_restarts,
                        "Extra k-medoids starts (0 = single-start PAM)")
      ->capture_default_str();

  acsp::cli::EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Print accuracy and FLOPs");
  eval_cmd->add_option("--model", eval.model, "Model file")->required();
  eval_cmd->add_option("--data", eval.data, "Dataset")->required();

  acsp::cli::ApplyArgs apply;
  auto* apply_cmd = app.add_subcommand("apply", "Replay a pruning plan on a model");
  apply_cmd->add_option("--model", apply.model, "Unpruned model")->required();
  apply_cmd->add_option("--plan", apply.plan, "plan.json")->required();
  apply_cmd->add_option("--out", apply.out, "Output model file")->required();

  acsp::cli::CaptureArgs capture;
  auto* capture_cmd = app.add_subcommand("capture", "Dump one layer's activations");
  capture_cmd->add_option("--model", capture.model, "Model file")->required();
  capture_cmd->add_option("--data", capture.data, "Dataset")->required();
  capture_cmd->add_option("--layer", capture.layer, "Layer index")->required();
  capture_cmd->add_option("--out", capture.out, "Activation file")->required();
  capture_cmd->add_option("--space", capture.space_out, "Also write the separability matrix");
  capture_cmd->add_flag("--pre-nonlinearity", capture.pre_nonlinearity,
                        "Capture before the ReLU");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen_cmd) acsp::cli::GenData(gen);
    if (*train_cmd) acsp::cli::Train(train, std::cout);
    if (*prune_cmd) {
      if (*ft_lr_opt) prune.ft_lr = ft_lr;
      acsp::cli::Prune(prune, std::cout);
    }
    if (*eval_cmd) acsp::cli::Eval(eval, std::cout);
    if (*apply_cmd) acsp::cli::Apply(apply, std::cout);
    if (*capture_cmd) acsp::cli::Capture(capture, std::cout);
  } catch (const acsp::Error& e) {
    return Fail(acsp::ErrorCodeName(e.code()), e.what());
  } catch (const std::exception& e) {
    return Fail("Internal", e.what());
  }
  return EXIT_SUCCESS;
}
