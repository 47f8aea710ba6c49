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

#include <cmath>
#include <string>

#include "acsp/detail/bytes.hpp"
#include "acsp/error.hpp"
#include "acsp/toynet.hpp"

namespace acsp {
namespace {

constexpr std::string_view kMagic = "ACSP";

void WriteValues(detail::ByteWriter& w, const std::vector<double>& values) {
  w.U64(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "model holds NaN/Inf weights");
    w.F64(v);
  }
}

std::vector<double> ReadValues(detail::ByteReader& r) {
  const auto count = r.U64();
  r.NeedItems(count, 8);
  std::vector<double> values(count);
  for (auto& v : values) {
    v = r.F64();
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "model holds NaN/Inf weights");
  }
  return values;
}

}  // namespace

std::string EncodeModel(const Model& model) {
  LayerShapes(model);
  detail::ByteWriter w;
  w.Raw(kMagic);
  w.U32(kFormatVersion);
  w.U32(static_cast<std::uint32_t>(ContainerKind::kModel));
  w.U64(model.input.c);
  w.U64(model.input.h);
  w.U64(model.input.w);
  w.U64(model.seed);
  w.U64(model.meta.epochs);
  w.F64(model.meta.lr);
  w.U64(model.layers.size());
  for (const auto& l : model.layers) {
    w.U32(static_cast<std::uint32_t>(l.kind));
    w.U64(l.in);
    w.U64(l.out);
    w.U64(l.kernel);
    w.U64(l.stride);
    w.U64(l.pad);
    w.U64(l.pool);
    WriteValues(w, l.weight);
    WriteValues(w, l.bias);
  }
  return w.bytes();
}

Model DecodeModel(std::string bytes) {
  detail::ByteReader r(std::move(bytes));
  if (r.remaining() < kMagic.size() || r.Raw(kMagic.size()) != kMagic) {
    throw Error(ErrorCode::kBadMagic, "not an ACSP model file");
  }
  if (const auto version = r.U32(); version != kFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch, "model version " + std::to_string(version));
  }
  if (r.U32() != static_cast<std::uint32_t>(ContainerKind::kModel)) {
    throw Error(ErrorCode::kMalformedFile, "container does not hold a model");
  }
  Model model;
  model.input.c = r.U64();
  model.input.h = r.U64();
  model.input.w = r.U64();
  model.seed = r.U64();
  model.meta.epochs = r.U64();
  model.meta.lr = r.F64();
  const auto count = r.U64();
  r.NeedItems(count, 4 + 6 * 8 + 2 * 8);
  for (std::uint64_t i = 0; i < count; ++i) {
    Layer l;
    const auto kind = r.U32();
    if (kind > static_cast<std::uint32_t>(LayerKind::kFlatten)) {
      throw Error(ErrorCode::kMalformedFile, "unknown layer kind " + std::to_string(kind));
    }
    l.kind = static_cast<LayerKind>(kind);
    l.in = r.U64();
    l.out = r.U64();
    l.kernel = r.U64();
    l.stride = r.U64();
    l.pad = r.U64();
    l.pool = r.U64();
    l.weight = ReadValues(r);
    l.bias = ReadValues(r);
    model.layers.push_back(std::move(l));
  }
  if (r.remaining() != 0) throw Error(ErrorCode::kMalformedFile, "trailing bytes after model");
  try {
    LayerShapes(model);
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("inconsistent model: ") + e.what());
  }
  return model;
}

void WriteModel(const Model& model, const std::filesystem::path& path) {
  detail::WriteFileBytes(path, EncodeModel(model));
}

Model ReadModel(const std::filesystem::path& path) {
  return DecodeModel(detail::ReadFileBytes(path));
}

}  // namespace acsp
