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

#include "commands.hpp"

#include <cstdio>
#include <map>

#include "acsp/dataset.hpp"
#include "acsp/detail/bytes.hpp"
#include "acsp/error.hpp"
#include "acsp/planner.hpp"
#include "acsp/report.hpp"
#include "acsp/sepspace.hpp"
#include "acsp/tensio.hpp"
#include "acsp/toynet.hpp"

namespace acsp::cli {
namespace {

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

void GenData(const GenDataArgs& args) {
  DataGenOptions options;
  options.kind = ParseDataKind(args.kind);
  options.n = args.n;
  options.classes = args.classes;
  options.shape = ParseShape(args.dims);
  options.noise = args.noise;
  options.seed = args.seed;
  WriteDataset(GenerateDataset(options), args.out);
}

double Train(const TrainArgs& args, std::ostream& log) {
  Model model = BuildModel(args.arch, args.seed);
  const LabeledDataset data = ReadDataset(args.data);
  if (NumClasses(model) < data.num_classes()) {
    throw Error(ErrorCode::kShapeMismatch, "model has fewer outputs than the data has classes");
  }
  log << "# arch=" << args.arch << "\n"
      << "# data=" << args.data.string() << "\n"
      << "# epochs=" << args.epochs << "\n"
      << "# lr=" << args.lr << "\n"
      << "# batch_size=" << args.batch_size << "\n"
      << "# seed=" << args.seed << "\n"
      << "epoch,loss,accuracy\n";
  double final_accuracy = 0.0;
  TrainOptions options;
  options.epochs = args.epochs;
  options.lr = args.lr;
  options.batch_size = args.batch_size;
  options.seed = args.seed;
  options.on_epoch = [&](const EpochStats& s) {
    log << s.epoch << ',' << Fixed(s.loss) << ',' << Fixed(s.accuracy) << '\n';
    final_accuracy = s.accuracy;
  };
  model = acsp::Train(model, data, options);
  WriteModel(model, args.out);
  return final_accuracy;
}

PruneResult Prune(const PruneArgs& args, std::ostream& out) {
  const Model model = ReadModel(args.model);
  const LabeledDataset data = ReadDataset(args.data);

  PruneConfig config;
  config.degree = args.degree;
  config.mode = ParseSelectionMode(args.selection);
  config.stride = args.stride;
  config.ft_fraction = args.ft_fraction;
  config.ft_epochs = args.ft_epochs;
  config.ft_lr = args.ft_lr;
  config.batch_size = args.batch_size;
  config.seed = args.seed;
  config.pre_nonlinearity = args.pre_nonlinearity;
  config.freeze_upstream = args.freeze_upstream;
  config.pam_restarts = args.pam_restarts;
  if (config.degree < 1) throw Error(ErrorCode::kBadParams, "--degree must be >= 1");
  if (config.stride < 1) throw Error(ErrorCode::kBadParams, "--stride must be >= 1");

  PruneOutcome outcome;
  try {
    outcome = PruneModel(model, data, config);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("while pruning: ") + e.what());
  }

  fs::create_directories(args.out);
  auto metadata = DescribeConfig(config, model);
  metadata["model"] = args.model.string();
  metadata["data"] = args.data.string();
  const PruningPlan plan = MakePlan(outcome.reports, config.degree, metadata);
  WriteModel(outcome.model, args.out / "pruned_model.bin");
  WritePlan(plan, args.out / "plan.json");
  for (const auto& r : outcome.reports) {
    if (r.mss_curve.entries.empty()) continue;
    const std::string stem = "layer" + std::to_string(r.layer_id);
    detail::WriteFileBytes(args.out / ("mss_" + stem + ".csv"), MssCurveCsv(r.mss_curve));
    if (r.knee) {
      detail::WriteFileBytes(args.out / ("knee_" + stem + ".csv"), DifferenceCurveCsv(*r.knee));
    }
    if (args.svg) {
      detail::WriteFileBytes(args.out / ("mss_" + stem + ".svg"), MssCurveSvg(r.mss_curve, r.knee));
    }
  }

  PruneResult result;
  result.base_accuracy = Accuracy(model, data);
  result.pruned_accuracy = Accuracy(outcome.model, data);
  result.flops_before = outcome.flops_before;
  result.flops_after = outcome.flops_after;
  result.speedup = outcome.speedup;

  SummaryInfo info;
  info.config = metadata;
  info.arch_before = DescribeArch(model);
  info.arch_after = DescribeArch(outcome.model);
  info.layers = outcome.reports;
  info.base_accuracy = result.base_accuracy;
  info.pruned_accuracy = result.pruned_accuracy;
  info.flops_before = result.flops_before;
  info.flops_after = result.flops_after;
  const std::string summary = FormatSummary(info);
  detail::WriteFileBytes(args.out / "summary.txt", summary);
  out << summary;
  return result;
}

EvalResult Eval(const EvalArgs& args, std::ostream& out) {
  const Model model = ReadModel(args.model);
  const LabeledDataset data = ReadDataset(args.data);
  EvalResult r{Accuracy(model, data), CountFlops(model).total};
  out << "accuracy=" << Fixed(r.accuracy) << " flops=" << r.flops << '\n';
  return r;
}

void Apply(const ApplyArgs& args, std::ostream& out) {
  const Model pruned = ApplyPrune(ReadModel(args.model), ReadPlan(args.plan));
  WriteModel(pruned, args.out);
  out << "arch=" << DescribeArch(pruned) << " flops=" << CountFlops(pruned).total << '\n';
}

void Capture(const CaptureArgs& args, std::ostream& out) {
  const Model model = ReadModel(args.model);
  const LabeledDataset data = ReadDataset(args.data);
  const ActivationTensor act = CaptureActivations(model, data, args.layer, args.pre_nonlinearity);
  WriteActivations(act, args.out);
  out << "layer=" << act.layer_id << " samples=" << act.num_samples
      << " components=" << act.components << " side=" << act.side << '\n';
  if (!args.space_out.empty()) {
    const SeparabilityMatrix space = BuildSpace(act);
    WriteSpace(space, args.space_out);
    out << "space_rows=" << space.rows << " space_cols=" << space.cols() << '\n';
  }
}

}  // namespace acsp::cli
