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

#include "acsp/tensio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "acsp/detail/bytes.hpp"
#include "acsp/error.hpp"

namespace acsp {
namespace detail {

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace detail

namespace {

constexpr std::string_view kMagic = "ACSP";

std::uint64_t Product(std::span<const std::uint64_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::uint64_t{1}, std::multiplies<>());
}

}  // namespace

std::string EncodeContainer(const Container& c) {
  if (c.values.size() != Product(c.dims)) {
    throw Error(ErrorCode::kMalformedFile, "value count does not match dims");
  }
  detail::ByteWriter w;
  w.Raw(kMagic);
  w.U32(kFormatVersion);
  w.U32(static_cast<std::uint32_t>(c.kind));
  w.U64(c.layer_id);
  w.U32(static_cast<std::uint32_t>(c.dims.size()));
  for (auto d : c.dims) w.U64(d);
  w.U64(c.labels.size());
  for (auto l : c.labels) w.U32(l);
  for (float v : c.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "refusing to write NaN/Inf");
    w.F32(v);
  }
  return w.bytes();
}

Container DecodeContainer(std::string bytes) {
  detail::ByteReader r(std::move(bytes));
  if (r.remaining() < kMagic.size() || r.Raw(kMagic.size()) != kMagic) {
    throw Error(ErrorCode::kBadMagic, "not an ACSP container");
  }
  const auto version = r.U32();
  if (version != kFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "container version " + std::to_string(version) + ", expected " +
                    std::to_string(kFormatVersion));
  }
  Container c;
  const auto kind = r.U32();
  if (kind > static_cast<std::uint32_t>(ContainerKind::kSeparability)) {
    throw Error(ErrorCode::kMalformedFile, "unexpected container kind " + std::to_string(kind));
  }
  c.kind = static_cast<ContainerKind>(kind);
  c.layer_id = r.U64();
  const auto ndims = r.U32();
  r.NeedItems(ndims, 8);
  c.dims.resize(ndims);
  for (auto& d : c.dims) d = r.U64();
  const auto nlabels = r.U64();
  r.NeedItems(nlabels, 4);
  c.labels.resize(nlabels);
  for (auto& l : c.labels) l = r.U32();

  // Overflow-safe product: any factor that cannot fit is already truncated.
  std::uint64_t count = 1;
  for (auto d : c.dims) {
    if (d != 0 && count > r.remaining() / d) {
      throw Error(ErrorCode::kTruncatedFile, "file ends before declared payload");
    }
    count *= d;
  }
  r.NeedItems(count, 4);
  c.values.resize(count);
  for (auto& v : c.values) {
    v = r.F32();
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "container holds NaN/Inf");
  }
  if (r.remaining() != 0) throw Error(ErrorCode::kMalformedFile, "trailing bytes after payload");
  return c;
}

void WriteContainer(const Container& c, const std::filesystem::path& path) {
  detail::WriteFileBytes(path, EncodeContainer(c));
}

Container ReadContainer(const std::filesystem::path& path) {
  return DecodeContainer(detail::ReadFileBytes(path));
}

// --- datasets --------------------------------------------------------------

std::size_t LabeledDataset::sample_size() const {
  return std::accumulate(sample_shape.begin(), sample_shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::size_t LabeledDataset::num_classes() const {
  if (labels.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
}

void ValidateDataset(const LabeledDataset& data) {
  if (data.size() == 0) throw Error(ErrorCode::kInvalidDataset, "dataset is empty");
  if (data.sample_shape.empty() || data.sample_size() == 0) {
    throw Error(ErrorCode::kInvalidDataset, "dataset has an empty sample shape");
  }
  if (data.samples.size() != data.size() * data.sample_size()) {
    throw Error(ErrorCode::kInvalidDataset, "sample buffer does not match shape");
  }
  std::vector<std::size_t> counts(data.num_classes(), 0);
  for (auto l : data.labels) ++counts[l];
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 2) {
      throw Error(ErrorCode::kInvalidDataset,
                  "class " + std::to_string(c) + " has fewer than two samples");
    }
  }
}

LabeledDataset SelectSamples(const LabeledDataset& data, std::span<const std::size_t> indices) {
  LabeledDataset out;
  out.sample_shape = data.sample_shape;
  out.samples.reserve(indices.size() * data.sample_size());
  out.labels.reserve(indices.size());
  for (auto i : indices) {
    auto s = data.sample(i);
    out.samples.insert(out.samples.end(), s.begin(), s.end());
    out.labels.push_back(data.labels[i]);
  }
  return out;
}

void WriteDataset(const LabeledDataset& data, const std::filesystem::path& path) {
  ValidateDataset(data);
  Container c;
  c.kind = ContainerKind::kDataset;
  c.dims.push_back(data.size());
  for (auto d : data.sample_shape) c.dims.push_back(d);
  c.labels = data.labels;
  c.values = data.samples;
  WriteContainer(c, path);
}

LabeledDataset ReadDataset(const std::filesystem::path& path) {
  Container c = ReadContainer(path);
  if (c.kind != ContainerKind::kDataset || c.dims.size() < 2 || c.labels.size() != c.dims[0]) {
    throw Error(ErrorCode::kMalformedFile, path.string() + " is not a dataset container");
  }
  LabeledDataset data;
  data.sample_shape.assign(c.dims.begin() + 1, c.dims.end());
  data.samples = std::move(c.values);
  data.labels = std::move(c.labels);
  ValidateDataset(data);
  return data;
}

// --- activations -----------------------------------------------------------

void WriteActivations(const ActivationTensor& act, const std::filesystem::path& path) {
  if (act.side < 1 || (act.kind == ActivationKind::kLinear && act.side != 1)) {
    throw Error(ErrorCode::kMalformedFile, "activation side must be >= 1 (and 1 for linear)");
  }
  if (act.labels.size() != act.num_samples) {
    throw Error(ErrorCode::kMalformedFile, "label count does not match sample count");
  }
  Container c;
  c.kind = act.kind == ActivationKind::kLinear ? ContainerKind::kLinearActivations
                                               : ContainerKind::kConvActivations;
  c.layer_id = act.layer_id;
  c.dims = {act.num_samples, act.components, act.side, act.side};
  c.labels = act.labels;
  c.values = act.values;
  WriteContainer(c, path);
}

ActivationTensor ReadActivations(const std::filesystem::path& path) {
  Container c = ReadContainer(path);
  const bool linear = c.kind == ContainerKind::kLinearActivations;
  if ((!linear && c.kind != ContainerKind::kConvActivations) || c.dims.size() != 4 ||
      c.dims[2] != c.dims[3] || c.dims[2] < 1 || (linear && c.dims[2] != 1) ||
      c.labels.size() != c.dims[0]) {
    throw Error(ErrorCode::kMalformedFile, path.string() + " is not an activation container");
  }
  ActivationTensor act;
  act.layer_id = c.layer_id;
  act.kind = linear ? ActivationKind::kLinear : ActivationKind::kConv;
  act.num_samples = c.dims[0];
  act.components = c.dims[1];
  act.side = c.dims[2];
  act.values = std::move(c.values);
  act.labels = std::move(c.labels);
  return act;
}

// --- plans -----------------------------------------------------------------

std::string_view SelectionModeName(SelectionMode mode) {
  return mode == SelectionMode::kRegular ? "regular" : "weighted";
}

SelectionMode ParseSelectionMode(std::string_view name) {
  if (name == "regular") return SelectionMode::kRegular;
  if (name == "weighted") return SelectionMode::kWeighted;
  throw Error(ErrorCode::kBadParams, "unknown selection mode '" + std::string(name) + "'");
}

void ValidatePlan(const PruningPlan& plan) {
  std::set<std::uint64_t> seen;
  for (const auto& e : plan.layers) {
    const std::string where = "layer " + std::to_string(e.layer_id) + ": ";
    if (!seen.insert(e.layer_id).second) {
      throw Error(ErrorCode::kMalformedPlan, where + "listed twice");
    }
    if (e.kept_indices.size() != e.k_selected) {
      throw Error(ErrorCode::kMalformedPlan, where + "k_selected != number of kept indices");
    }
    if (e.k_selected < std::min<std::size_t>(2, e.num_components) ||
        e.k_selected > e.num_components) {
      throw Error(ErrorCode::kMalformedPlan, where + "k_selected out of [2, N]");
    }
    for (std::size_t i = 0; i < e.kept_indices.size(); ++i) {
      if (e.kept_indices[i] >= e.num_components) {
        throw Error(ErrorCode::kMalformedPlan,
                    where + "kept index " + std::to_string(e.kept_indices[i]) + " >= N");
      }
      if (i > 0 && e.kept_indices[i] <= e.kept_indices[i - 1]) {
        throw Error(ErrorCode::kMalformedPlan, where + "kept indices not strictly increasing");
      }
    }
  }
}

std::string PlanToJson(const PruningPlan& plan) {
  ValidatePlan(plan);
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (const auto& e : plan.layers) {
    nlohmann::ordered_json j;
    j["layer_id"] = e.layer_id;
    j["num_components"] = e.num_components;
    j["k_selected"] = e.k_selected;
    j["kept_indices"] = e.kept_indices;
    j["selection_mode"] = SelectionModeName(e.selection_mode);
    j["knee_degree"] = e.knee_degree;
    j["knee_k"] = e.knee_k ? nlohmann::ordered_json(*e.knee_k) : nlohmann::ordered_json();
    j["knee_coefficients"] = e.knee_coefficients;
    j["mss_curve_ref"] = e.mss_curve_ref;
    layers.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["format"] = "acsp-plan";
  doc["version"] = kFormatVersion;
  doc["metadata"] = plan.metadata;
  doc["layers"] = std::move(layers);
  return doc.dump(2) + "\n";
}

PruningPlan PlanFromJson(const std::string& text) {
  PruningPlan plan;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("format").get<std::string>() != "acsp-plan") {
      throw Error(ErrorCode::kMalformedPlan, "not an acsp-plan document");
    }
    if (doc.at("version").get<std::uint32_t>() != kFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch, "unsupported plan version");
    }
    if (doc.contains("metadata")) {
      plan.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
    }
    for (const auto& j : doc.at("layers")) {
      PlanEntry e;
      e.layer_id = j.at("layer_id").get<std::uint64_t>();
      e.num_components = j.at("num_components").get<std::size_t>();
      e.k_selected = j.at("k_selected").get<std::size_t>();
      e.kept_indices = j.at("kept_indices").get<std::vector<std::size_t>>();
      e.selection_mode = ParseSelectionMode(j.at("selection_mode").get<std::string>());
      e.knee_degree = j.at("knee_degree").get<int>();
      if (!j.at("knee_k").is_null()) e.knee_k = j.at("knee_k").get<std::size_t>();
      e.knee_coefficients = j.at("knee_coefficients").get<std::vector<double>>();
      e.mss_curve_ref = j.at("mss_curve_ref").get<std::string>();
      plan.layers.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kMalformedPlan, std::string("plan parse error: ") + ex.what());
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::kBadParams) throw Error(ErrorCode::kMalformedPlan, ex.what());
    throw;
  }
  ValidatePlan(plan);
  return plan;
}

void WritePlan(const PruningPlan& plan, const std::filesystem::path& path) {
  detail::WriteFileBytes(path, PlanToJson(plan));
}

PruningPlan ReadPlan(const std::filesystem::path& path) {
  return PlanFromJson(detail::ReadFileBytes(path));
}

}  // namespace acsp
