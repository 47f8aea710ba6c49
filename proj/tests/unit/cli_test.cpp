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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "acsp/error.hpp"
#include "acsp/tensio.hpp"
#include "acsp/toynet.hpp"

namespace acsp::cli {
namespace {

fs::path Dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "acsp_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> SummaryValues(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

// Small blob problem shared by the tests below.
struct Trained {
  fs::path dir, data, model;
  double final_accuracy = 0;
};

const Trained& Blobs() {
  static const Trained t = [] {
    Trained out;
    out.dir = Dir("shared");
    out.data = out.dir / "data.bin";
    out.model = out.dir / "model.bin";
    GenDataArgs gen;
    gen.n = 600;
    gen.seed = 3;
    gen.out = out.data;
    GenData(gen);
    TrainArgs train;
    train.arch = "mlp:2-24-16-4";
    train.data = out.data;
    train.epochs = 40;
    train.seed = 3;
    train.out = out.model;
    std::ostringstream log;
    out.final_accuracy = Train(train, log);
    return out;
  }();
  return t;
}

TEST(GenData, BalancedAndDeterministic) {
  const fs::path dir = Dir("gen");
  GenDataArgs args;
  args.out = dir / "a.bin";
  GenData(args);
  const LabeledDataset d = ReadDataset(args.out);
  ASSERT_EQ(d.size(), 2000u);
  std::vector<std::size_t> counts(4);
  for (auto l : d.labels) ++counts.at(l);
  for (auto c : counts) EXPECT_NEAR(static_cast<double>(c), 500.0, 1.0);
  args.out = dir / "b.bin";
  GenData(args);
  EXPECT_EQ(Slurp(dir / "a.bin"), Slurp(dir / "b.bin"));
  args.seed = 2;
  args.out = dir / "c.bin";
  GenData(args);
  EXPECT_NE(Slurp(dir / "a.bin"), Slurp(dir / "c.bin"));
}

TEST(GenData, SingleClassRejected) {
  GenDataArgs args;
  args.classes = 1;
  args.out = Dir("gen1") / "x.bin";
  try {
    GenData(args);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadParams);
  }
}

TEST(TrainCmd, DefaultFlagsReachHighAccuracy) {
  const fs::path dir = Dir("train");
  GenDataArgs gen;
  gen.out = dir / "data.bin";
  GenData(gen);
  TrainArgs args;
  args.arch = "mlp:2-16-4";
  args.data = gen.out;
  args.out = dir / "m.bin";
  std::ostringstream log;
  EXPECT_GE(Train(args, log), 0.95);
  EXPECT_NE(log.str().find("epoch,loss,accuracy\n0,"), std::string::npos);
  EXPECT_EQ(PrunableLayers(ReadModel(args.out)), std::vector<std::size_t>{0});
}

TEST(TrainCmd, BadArchIsParseError) {
  TrainArgs args;
  args.arch = "mlp:2-";
  args.data = "unused.bin";
  args.out = "unused_model.bin";
  std::ostringstream log;
  try {
    Train(args, log);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("offset 6"), std::string::npos);
  }
}

TEST(EvalCmd, MatchesTrainingLog) {
  const Trained& t = Blobs();
  std::ostringstream out;
  const EvalResult r = Eval({t.model, t.data}, out);
  EXPECT_DOUBLE_EQ(r.accuracy, t.final_accuracy);
  EXPECT_EQ(r.flops, CountFlops(ReadModel(t.model)).total);
}

TEST(EvalCmd, UntrainedIsNearChance) {
  const Trained& t = Blobs();
  const fs::path p = Dir("untrained") / "m.bin";
  WriteModel(BuildModel("mlp:2-24-16-4", 99), p);
  std::ostringstream out;
  EXPECT_NEAR(Eval({p, t.data}, out).accuracy, 0.25, 0.1);
}

TEST(PruneCmd, SummaryConsistentWithEval) {
  const Trained& t = Blobs();
  PruneArgs args;
  args.model = t.model;
  args.data = t.data;
  args.out = Dir("prune");
  args.svg = true;
  std::ostringstream out;
  const PruneResult r = Prune(args, out);
  const std::string summary = Slurp(args.out / "summary.txt");
  EXPECT_EQ(out.str(), summary);
  auto values = SummaryValues(summary);

  std::ostringstream sink;
  const EvalResult before = Eval({t.model, t.data}, sink);
  const EvalResult after = Eval({args.out / "pruned_model.bin", t.data}, sink);
  EXPECT_EQ(values["flops_after"], std::to_string(after.flops));
  EXPECT_EQ(values["flops_before"], std::to_string(before.flops));
  EXPECT_NEAR(std::stod(values["speedup"]),
              static_cast<double>(before.flops) / static_cast<double>(after.flops), 5e-5);
  EXPECT_NEAR(std::stod(values["pruned_accuracy"]), after.accuracy, 5e-7);
  EXPECT_NEAR(r.pruned_accuracy, after.accuracy, 0);
  EXPECT_TRUE(fs::exists(args.out / "mss_layer0.csv"));
  EXPECT_TRUE(fs::exists(args.out / "mss_layer0.svg"));
  EXPECT_NE(summary.find("# degree=2"), std::string::npos) << summary;

  // Replaying the plan reproduces the architecture.
  ApplyArgs apply{t.model, args.out / "plan.json", args.out / "replayed.bin"};
  Apply(apply, sink);
  EXPECT_EQ(DescribeArch(ReadModel(apply.out)), DescribeArch(ReadModel(args.out / "pruned_model.bin")));
}

TEST(PruneCmd, ModesShareFirstLayerK) {
  const Trained& t = Blobs();
  const fs::path dir = Dir("modes");
  PruneArgs args;
  args.model = t.model;
  args.data = t.data;
  std::ostringstream sink;
  args.out = dir / "regular";
  args.selection = "regular";
  Prune(args, sink);
  args.out = dir / "weighted";
  args.selection = "weighted";
  Prune(args, sink);
  const PruningPlan a = ReadPlan(dir / "regular" / "plan.json");
  const PruningPlan b = ReadPlan(dir / "weighted" / "plan.json");
  ASSERT_FALSE(a.layers.empty());
  ASSERT_FALSE(b.layers.empty());
  EXPECT_EQ(a.layers[0].k_selected, b.layers[0].k_selected);
  EXPECT_EQ(a.layers[0].knee_k, b.layers[0].knee_k);
  EXPECT_EQ(a.layers[0].selection_mode, SelectionMode::kRegular);
  EXPECT_EQ(b.layers[0].selection_mode, SelectionMode::kWeighted);
}

TEST(PruneCmd, DeadNetworkIsUnchanged) {
  const Trained& t = Blobs();
  Model m = ReadModel(t.model);
  for (std::size_t layer : PrunableLayers(m)) {
    std::fill(m.layers[layer].weight.begin(), m.layers[layer].weight.end(), 0.0);
    std::fill(m.layers[layer].bias.begin(), m.layers[layer].bias.end(), 0.0);
  }
  const fs::path dir = Dir("dead");
  WriteModel(m, dir / "dead.bin");
  PruneArgs args;
  args.model = dir / "dead.bin";
  args.data = t.data;
  args.out = dir / "out";
  std::ostringstream sink;
  const PruneResult r = Prune(args, sink);
  EXPECT_EQ(r.speedup, 1.0);
  EXPECT_EQ(r.pruned_accuracy, r.base_accuracy);
  auto values = SummaryValues(Slurp(args.out / "summary.txt"));
  EXPECT_EQ(values["speedup"], "1.0000");
  EXPECT_EQ(values["delta_acc"], "+0.00");
}

TEST(CaptureCmd, WritesTensorAndSpace) {
  const Trained& t = Blobs();
  const fs::path dir = Dir("capture");
  CaptureArgs args;
  args.model = t.model;
  args.data = t.data;
  args.layer = 2;
  args.out = dir / "act.bin";
  args.space_out = dir / "space.bin";
  std::ostringstream sink;
  Capture(args, sink);
  const ActivationTensor act = ReadActivations(args.out);
  EXPECT_EQ(act.components, 16u);
  EXPECT_EQ(act.layer_id, 2u);
  EXPECT_TRUE(fs::exists(args.space_out));
}

}  // namespace
}  // namespace acsp::cli
