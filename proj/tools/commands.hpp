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

#ifndef ACSP_TOOLS_COMMANDS_HPP_
#define ACSP_TOOLS_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace acsp::cli {

namespace fs = std::filesystem;

struct GenDataArgs {
  std::string kind = "blobs";
  std::size_t n = 2000;
  std::size_t classes = 4;
  std::string dims = "2";
  double noise = 1.0;
  std::uint64_t seed = 1;
  fs::path out;
};

struct TrainArgs {
  std::string arch;
  fs::path data;
  std::size_t epochs = 50;
  double lr = 0.05;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  fs::path out;
};

struct PruneArgs {
  fs::path model;
  fs::path data;
  fs::path out;
  int degree = 2;
  std::string selection = "weighted";
  std::size_t stride = 1;
  double ft_fraction = 0.25;
  std::size_t ft_epochs = 2;
  std::optional<double> ft_lr;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  bool svg = false;
  bool pre_nonlinearity = false;
  bool freeze_upstream = false;
  std::size_t pam_restarts = 7;
};

struct PruneResult {
  double base_accuracy = 0.0;
  double pruned_accuracy = 0.0;
  std::uint64_t flops_before = 0;
  std::uint64_t flops_after = 0;
  double speedup = 1.0;
};

struct EvalArgs {
  fs::path model;
  fs::path data;
};

struct EvalResult {
  double accuracy = 0.0;
  std::uint64_t flops = 0;
};

struct ApplyArgs {
  fs::path model;
  fs::path plan;
  fs::path out;
};

struct CaptureArgs {
  fs::path model;
  fs::path data;
  std::size_t layer = 0;
  fs::path out;
  fs::path space_out;
  bool pre_nonlinearity = false;
};

/// Writes a synthetic dataset to args.out.
void GenData(const GenDataArgs& args);

/// Trains a fresh model; logs "epoch,loss,accuracy" CSV to `log`.
/// Returns the final training accuracy.
double Train(const TrainArgs& args, std::ostream& log);

/// Prunes a model. Writes into args.out: pruned_model.bin, plan.json,
/// mss_layer<i>.csv, knee_layer<i>.csv, summary.txt (and mss_layer<i>.svg
/// with --svg). The summary is also copied to `out`.
PruneResult Prune(const PruneArgs& args, std::ostream& out);

/// Prints "accuracy=<float> flops=<int>".
EvalResult Eval(const EvalArgs& args, std::ostream& out);

/// Replays a plan on a model and writes the pruned model.
void Apply(const ApplyArgs& args, std::ostream& out);

/// Dumps one layer's activations (and optionally its separability space).
void Capture(const CaptureArgs& args, std::ostream& out);

}  // namespace acsp::cli

#endif  // ACSP_TOOLS_COMMANDS_HPP_
