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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "acsp/error.hpp"
#include "acsp/parallel.hpp"
#include "acsp/rng.hpp"
#include "acsp/toynet.hpp"
#include "toynet_kernels.hpp"

namespace acsp {

Layer Layer::Linear(std::size_t in, std::size_t out) {
  Layer l;
  l.kind = LayerKind::kLinear;
  l.in = in;
  l.out = out;
  l.weight.assign(in * out, 0.0);
  l.bias.assign(out, 0.0);
  return l;
}

Layer Layer::Conv(std::size_t in, std::size_t out, std::size_t kernel, std::size_t stride,
                  std::size_t pad) {
  Layer l;
  l.kind = LayerKind::kConv;
  l.in = in;
  l.out = out;
  l.kernel = kernel;
  l.stride = stride;
  l.pad = pad;
  l.weight.assign(out * in * kernel * kernel, 0.0);
  l.bias.assign(out, 0.0);
  return l;
}

Layer Layer::AvgPool(std::size_t size) {
  Layer l;
  l.kind = LayerKind::kAvgPool;
  l.pool = size;
  return l;
}

Layer Layer::Flatten() {
  Layer l;
  l.kind = LayerKind::kFlatten;
  return l;
}

// --- architecture strings --------------------------------------------------

namespace {

class ArchParser {
 public:
  explicit ArchParser(std::string_view text) : text_(text) {}

  Model Parse() {
    Model model;
    if (Accept("mlp:")) {
      model.input = {Number("input width"), 1, 1};
      std::size_t width = model.input.c;
      Expect('-');
      for (;;) {
        const std::size_t out = Number("layer width");
        model.layers.push_back(Layer::Linear(width, out));
        width = out;
        if (AtEnd()) break;
        Expect('-');
      }
    } else if (Accept("cnn:")) {
      model.input.c = Number("input channels");
      Expect('x');
      model.input.h = Number("input height");
      Expect('x');
      model.input.w = Number("input width");
      Shape3 shape = model.input;
      bool flat = false;
      bool ends_linear = false;
      while (!AtEnd()) {
        Expect('-');
        const std::size_t token_start = pos_;
        ends_linear = false;
        if (Accept("c")) {
          if (flat) Fail(token_start, "convolution after flatten");
          const std::size_t out = Number("output channels");
          Expect('k');
          const std::size_t k = Number("kernel size");
          std::size_t stride = 1;
          std::size_t pad = k / 2;
          if (Accept("s")) stride = Number("stride");
          if (Accept("p")) pad = NumberOrZero("padding");
          if (shape.h + 2 * pad < k || shape.w + 2 * pad < k) {
            Fail(token_start, "kernel larger than padded input");
          }
          model.layers.push_back(Layer::Conv(shape.c, out, k, stride, pad));
          shape = {out, (shape.h + 2 * pad - k) / stride + 1, (shape.w + 2 * pad - k) / stride + 1};
        } else if (Accept("p")) {
          if (flat) Fail(token_start, "pooling after flatten");
          const std::size_t size = Number("pool size");
          if (shape.h < size || shape.w < size) Fail(token_start, "pool larger than feature map");
          model.layers.push_back(Layer::AvgPool(size));
          shape = {shape.c, shape.h / size, shape.w / size};
        } else if (Accept("f")) {
          if (flat) Fail(token_start, "second flatten");
          model.layers.push_back(Layer::Flatten());
          shape = {shape.size(), 1, 1};
          flat = true;
        } else if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          if (!flat) Fail(token_start, "linear layer before flatten");
          const std::size_t out = Number("layer width");
          model.layers.push_back(Layer::Linear(shape.c, out));
          shape = {out, 1, 1};
          ends_linear = true;
        } else {
          Fail(pos_, "expected layer token");
        }
      }
      if (!ends_linear) Fail(pos_, "expected output layer width");
    } else {
      Fail(0, "expected 'mlp:' or 'cnn:'");
    }

    // ReLU after every parametric layer except the output layer.
    std::vector<Layer> with_relu;
    std::size_t remaining = std::count_if(model.layers.begin(), model.layers.end(),
                                          [](const Layer& l) { return l.parametric(); });
    for (auto& layer : model.layers) {
      const bool parametric = layer.parametric();
      with_relu.push_back(std::move(layer));
      if (parametric && --remaining > 0) with_relu.push_back(Layer::ReLU());
    }
    model.layers = std::move(with_relu);
    return model;
  }

 private:
  bool AtEnd() const { return pos_ == text_.size(); }

  bool Accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void Expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) Fail(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::size_t NumberOrZero(const char* what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) Fail(pos_, std::string("expected ") + what);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  std::size_t Number(const char* what) {
    const std::size_t start = pos_;
    const std::size_t value = NumberOrZero(what);
    if (value == 0) Fail(start, std::string(what) + " must be positive");
    return value;
  }

  [[noreturn]] void Fail(std::size_t offset, const std::string& what) const {
    throw Error(ErrorCode::kParseError, "arch parse error at offset " + std::to_string(offset) +
                                            ": " + what + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Model ParseArch(std::string_view spec) {
  Model model = ArchParser(spec).Parse();
  LayerShapes(model);
  return model;
}

void InitWeights(Model& model, std::uint64_t seed) {
  Rng rng = Rng::Stream(seed, "init");
  for (auto& layer : model.layers) {
    if (!layer.parametric()) continue;
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.fan_in()));
    for (auto& w : layer.weight) w = rng.Uniform(-bound, bound);
    for (auto& b : layer.bias) b = rng.Uniform(-bound, bound);
  }
  model.seed = seed;
}

Model BuildModel(std::string_view spec, std::uint64_t seed) {
  Model model = ParseArch(spec);
  InitWeights(model, seed);
  return model;
}

std::string DescribeArch(const Model& model) {
  std::ostringstream os;
  const bool mlp = model.input.h == 1 && model.input.w == 1 &&
                   std::all_of(model.layers.begin(), model.layers.end(), [](const Layer& l) {
                     return l.kind == LayerKind::kLinear || l.kind == LayerKind::kReLU;
                   });
  if (mlp) {
    os << "mlp:" << model.input.c;
    for (const auto& l : model.layers) {
      if (l.kind == LayerKind::kLinear) os << '-' << l.out;
    }
    return os.str();
  }
  os << "cnn:" << model.input.c << 'x' << model.input.h << 'x' << model.input.w;
  for (const auto& l : model.layers) {
    switch (l.kind) {
      case LayerKind::kConv:
        os << "-c" << l.out << 'k' << l.kernel;
        if (l.stride != 1) os << 's' << l.stride;
        if (l.pad != l.kernel / 2) os << 'p' << l.pad;
        break;
      case LayerKind::kAvgPool: os << "-p" << l.pool; break;
      case LayerKind::kFlatten: os << "-f"; break;
      case LayerKind::kLinear: os << '-' << l.out; break;
      case LayerKind::kReLU: break;
    }
  }
  return os.str();
}

std::vector<Shape3> LayerShapes(const Model& model) {
  std::vector<Shape3> shapes;
  shapes.reserve(model.layers.size());
  Shape3 shape = model.input;
  if (shape.size() == 0) throw Error(ErrorCode::kShapeMismatch, "model input shape is empty");
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const Layer& l = model.layers[i];
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kShapeMismatch, "layer " + std::to_string(i) + ": " + what);
    };
    switch (l.kind) {
      case LayerKind::kLinear:
        if (shape.h != 1 || shape.w != 1 || shape.c != l.in) fail("linear input mismatch");
        if (l.weight.size() != l.in * l.out || l.bias.size() != l.out) fail("bad weight buffer");
        shape = {l.out, 1, 1};
        break;
      case LayerKind::kConv:
        if (shape.c != l.in) fail("conv channel mismatch");
        if (l.kernel == 0 || l.stride == 0 || shape.h + 2 * l.pad < l.kernel ||
            shape.w + 2 * l.pad < l.kernel) {
          fail("conv geometry invalid");
        }
        if (l.weight.size() != l.out * l.in * l.kernel * l.kernel || l.bias.size() != l.out) {
          fail("bad weight buffer");
        }
        shape = {l.out, (shape.h + 2 * l.pad - l.kernel) / l.stride + 1,
                 (shape.w + 2 * l.pad - l.kernel) / l.stride + 1};
        break;
      case LayerKind::kAvgPool:
        if (l.pool == 0 || shape.h < l.pool || shape.w < l.pool) fail("pool larger than input");
        shape = {shape.c, shape.h / l.pool, shape.w / l.pool};
        break;
      case LayerKind::kFlatten:
        shape = {shape.size(), 1, 1};
        break;
      case LayerKind::kReLU:
        break;
    }
    shapes.push_back(shape);
  }
  return shapes;
}

std::vector<std::size_t> PrunableLayers(const Model& model) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    if (model.layers[i].parametric()) ids.push_back(i);
  }
  if (!ids.empty()) ids.pop_back();
  return ids;
}

std::size_t NumClasses(const Model& model) {
  return model.layers.empty() ? model.input.size() : LayerShapes(model).back().size();
}

// --- inference -------------------------------------------------------------

namespace kernels {

void Forward(const Layer& l, const Shape3& in, std::span<const double> x, const Shape3& out,
             std::span<double> y) {
  switch (l.kind) {
    case LayerKind::kLinear:
      for (std::size_t o = 0; o < l.out; ++o) {
        const double* w = &l.weight[o * l.in];
        double acc = l.bias[o];
        for (std::size_t i = 0; i < l.in; ++i) acc += w[i] * x[i];
        y[o] = acc;
      }
      break;
    case LayerKind::kConv: {
      const std::size_t k = l.kernel;
      for (std::size_t co = 0; co < out.c; ++co) {
        for (std::size_t oy = 0; oy < out.h; ++oy) {
          for (std::size_t ox = 0; ox < out.w; ++ox) {
            double acc = l.bias[co];
            for (std::size_t ci = 0; ci < in.c; ++ci) {
              const double* w = &l.weight[(co * in.c + ci) * k * k];
              const double* xc = &x[ci * in.h * in.w];
              for (std::size_t ky = 0; ky < k; ++ky) {
                const auto iy = static_cast<std::ptrdiff_t>(oy * l.stride + ky) -
                                static_cast<std::ptrdiff_t>(l.pad);
                if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(in.h)) continue;
                for (std::size_t kx = 0; kx < k; ++kx) {
                  const auto ix = static_cast<std::ptrdiff_t>(ox * l.stride + kx) -
                                  static_cast<std::ptrdiff_t>(l.pad);
                  if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(in.w)) continue;
                  acc += w[ky * k + kx] * xc[iy * in.w + ix];
                }
              }
            }
            y[(co * out.h + oy) * out.w + ox] = acc;
          }
        }
      }
      break;
    }
    case LayerKind::kReLU:
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
      break;
    case LayerKind::kAvgPool: {
      const std::size_t p = l.pool;
      const double scale = 1.0 / static_cast<double>(p * p);
      for (std::size_t c = 0; c < out.c; ++c) {
        for (std::size_t oy = 0; oy < out.h; ++oy) {
          for (std::size_t ox = 0; ox < out.w; ++ox) {
            double acc = 0.0;
            for (std::size_t dy = 0; dy < p; ++dy) {
              for (std::size_t dx = 0; dx < p; ++dx) {
                acc += x[(c * in.h + oy * p + dy) * in.w + ox * p + dx];
              }
            }
            y[(c * out.h + oy) * out.w + ox] = acc * scale;
          }
        }
      }
      break;
    }
    case LayerKind::kFlatten:
      std::copy(x.begin(), x.end(), y.begin());
      break;
  }
}

void Backward(const Layer& l, const Shape3& in, std::span<const double> x, const Shape3& out,
              std::span<const double> dy, std::span<double> dx, LayerGradient& grad) {
  std::fill(dx.begin(), dx.end(), 0.0);
  switch (l.kind) {
    case LayerKind::kLinear:
      for (std::size_t o = 0; o < l.out; ++o) {
        const double g = dy[o];
        grad.bias[o] += g;
        const double* w = &l.weight[o * l.in];
        double* gw = &grad.weight[o * l.in];
        for (std::size_t i = 0; i < l.in; ++i) {
          gw[i] += g * x[i];
          dx[i] += w[i] * g;
        }
      }
      break;
    case LayerKind::kConv: {
      const std::size_t k = l.kernel;
      for (std::size_t co = 0; co < out.c; ++co) {
        for (std::size_t oy = 0; oy < out.h; ++oy) {
          for (std::size_t ox = 0; ox < out.w; ++ox) {
            const double g = dy[(co * out.h + oy) * out.w + ox];
            grad.bias[co] += g;
            for (std::size_t ci = 0; ci < in.c; ++ci) {
              const std::size_t wbase = (co * in.c + ci) * k * k;
              const std::size_t xbase = ci * in.h * in.w;
              for (std::size_t ky = 0; ky < k; ++ky) {
                const auto iy = static_cast<std::ptrdiff_t>(oy * l.stride + ky) -
                                static_cast<std::ptrdiff_t>(l.pad);
                if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(in.h)) continue;
                for (std::size_t kx = 0; kx < k; ++kx) {
                  const auto ix = static_cast<std::ptrdiff_t>(ox * l.stride + kx) -
                                  static_cast<std::ptrdiff_t>(l.pad);
                  if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(in.w)) continue;
                  const std::size_t xi = xbase + iy * in.w + ix;
                  grad.weight[wbase + ky * k + kx] += g * x[xi];
                  dx[xi] += l.weight[wbase + ky * k + kx] * g;
                }
              }
            }
          }
        }
      }
      break;
    }
    case LayerKind::kReLU:
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
      break;
    case LayerKind::kAvgPool: {
      const std::size_t p = l.pool;
      const double scale = 1.0 / static_cast<double>(p * p);
      for (std::size_t c = 0; c < out.c; ++c) {
        for (std::size_t oy = 0; oy < out.h; ++oy) {
          for (std::size_t ox = 0; ox < out.w; ++ox) {
            const double g = dy[(c * out.h + oy) * out.w + ox] * scale;
            for (std::size_t ddy = 0; ddy < p; ++ddy) {
              for (std::size_t ddx = 0; ddx < p; ++ddx) {
                dx[(c * in.h + oy * p + ddy) * in.w + ox * p + ddx] += g;
              }
            }
          }
        }
      }
      break;
    }
    case LayerKind::kFlatten:
      std::copy(dy.begin(), dy.end(), dx.begin());
      break;
  }
}

void ForwardTrace(const Model& model, const std::vector<Shape3>& shapes,
                  std::span<const float> sample, std::vector<std::vector<double>>& trace) {
  trace.resize(model.layers.size() + 1);
  trace[0].assign(sample.begin(), sample.end());
  Shape3 in = model.input;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    trace[i + 1].resize(shapes[i].size());
    Forward(model.layers[i], in, trace[i], shapes[i], trace[i + 1]);
    in = shapes[i];
  }
}

double CrossEntropy(std::span<const double> logits, std::size_t label, std::span<double> dlogits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - top);
  const double lse = top + std::log(sum);
  if (!dlogits.empty()) {
    for (std::size_t c = 0; c < logits.size(); ++c) {
      dlogits[c] = std::exp(logits[c] - lse) - (c == label ? 1.0 : 0.0);
    }
  }
  return lse - logits[label];
}

}  // namespace kernels

namespace {

void CheckInput(const Model& model, const LabeledDataset& data) {
  if (data.sample_size() != model.input.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "sample size " + std::to_string(data.sample_size()) + " != model input " +
                    std::to_string(model.input.size()));
  }
  if (data.samples.size() != data.size() * data.sample_size()) {
    throw Error(ErrorCode::kShapeMismatch, "sample buffer does not match labels");
  }
}

// Runs fn(sample_index, trace) over fixed-size chunks of the dataset.
template <typename Fn>
void ForEachTrace(const Model& model, const LabeledDataset& data, Fn&& fn) {
  CheckInput(model, data);
  const auto shapes = LayerShapes(model);
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (data.size() + kChunk - 1) / kChunk;
  ParallelFor(chunks, [&](std::size_t chunk) {
    std::vector<std::vector<double>> trace;
    const std::size_t end = std::min(data.size(), (chunk + 1) * kChunk);
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      kernels::ForwardTrace(model, shapes, data.sample(i), trace);
      fn(i, trace);
    }
  });
}

std::size_t ArgMax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

std::vector<double> Forward(const Model& model, const LabeledDataset& data) {
  const std::size_t classes = NumClasses(model);
  std::vector<double> logits(data.size() * classes);
  ForEachTrace(model, data, [&](std::size_t i, const auto& trace) {
    std::copy(trace.back().begin(), trace.back().end(), logits.begin() + i * classes);
  });
  return logits;
}

double Accuracy(const Model& model, const LabeledDataset& data) {
  if (data.size() == 0) return 0.0;
  const std::size_t classes = NumClasses(model);
  const auto logits = Forward(model, data);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (ArgMax({logits.data() + i * classes, classes}) == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

double Loss(const Model& model, const LabeledDataset& data) {
  if (data.size() == 0) return 0.0;
  const std::size_t classes = NumClasses(model);
  const auto logits = Forward(model, data);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.labels[i] >= classes) throw Error(ErrorCode::kShapeMismatch, "label >= model classes");
    total += kernels::CrossEntropy({logits.data() + i * classes, classes}, data.labels[i]);
  }
  return total / static_cast<double>(data.size());
}

ActivationTensor CaptureActivations(const Model& model, const LabeledDataset& data,
                                    std::size_t layer_id, bool pre_nonlinearity) {
  const auto prunable = PrunableLayers(model);
  if (std::find(prunable.begin(), prunable.end(), layer_id) == prunable.end()) {
    throw Error(ErrorCode::kNotPrunableLayer,
                "layer " + std::to_string(layer_id) + " is not a prunable layer");
  }
  const auto shapes = LayerShapes(model);
  const Shape3 shape = shapes[layer_id];
  if (shape.h != shape.w) {
    throw Error(ErrorCode::kShapeMismatch, "non-square activation maps are not supported");
  }
  std::size_t source = layer_id + 1;
  if (!pre_nonlinearity && layer_id + 1 < model.layers.size() &&
      model.layers[layer_id + 1].kind == LayerKind::kReLU) {
    source = layer_id + 2;
  }

  ActivationTensor act;
  act.layer_id = layer_id;
  act.kind = model.layers[layer_id].kind == LayerKind::kLinear ? ActivationKind::kLinear
                                                                : ActivationKind::kConv;
  act.num_samples = data.size();
  act.components = shape.c;
  act.side = shape.h;
  act.labels = data.labels;
  act.values.resize(data.size() * shape.size());
  ForEachTrace(model, data, [&](std::size_t i, const auto& trace) {
    const auto& v = trace[source];
    std::transform(v.begin(), v.end(), act.values.begin() + i * shape.size(),
                   [](double x) { return static_cast<float>(x); });
  });
  return act;
}

// --- surgery ---------------------------------------------------------------

Model ApplyPrune(const Model& model, const PruningPlan& plan) {
  ValidatePlan(plan);
  const auto prunable = PrunableLayers(model);
  Model out = model;
  std::vector<const PlanEntry*> entries;
  for (const auto& e : plan.layers) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(),
            [](const PlanEntry* a, const PlanEntry* b) { return a->layer_id < b->layer_id; });

  for (const PlanEntry* e : entries) {
    const std::size_t id = e->layer_id;
    const std::string where = "layer " + std::to_string(id) + ": ";
    if (std::find(prunable.begin(), prunable.end(), id) == prunable.end()) {
      throw Error(ErrorCode::kMalformedPlan, where + "not a prunable layer");
    }
    Layer& layer = out.layers[id];
    if (e->num_components != layer.out) {
      throw Error(ErrorCode::kMalformedPlan, where + "plan expects " +
                                                 std::to_string(e->num_components) +
                                                 " components, model has " +
                                                 std::to_string(layer.out));
    }
    const auto& keep = e->kept_indices;
    if (keep.size() == layer.out) continue;

    // Outgoing side: rows / filters of this layer.
    const std::size_t row = layer.fan_in();
    std::vector<double> weight;
    std::vector<double> bias;
    weight.reserve(keep.size() * row);
    for (auto j : keep) {
      weight.insert(weight.end(), layer.weight.begin() + j * row, layer.weight.begin() + (j + 1) * row);
      bias.push_back(layer.bias[j]);
    }
    const std::size_t old_out = layer.out;
    layer.weight = std::move(weight);
    layer.bias = std::move(bias);
    layer.out = keep.size();

    // Incoming side of the next parametric layer.
    auto next = std::find_if(out.layers.begin() + id + 1, out.layers.end(),
                             [](const Layer& l) { return l.parametric(); });
    Layer& consumer = *next;
    if (consumer.kind == LayerKind::kConv) {
      const std::size_t kk = consumer.kernel * consumer.kernel;
      std::vector<double> w;
      w.reserve(consumer.out * keep.size() * kk);
      for (std::size_t o = 0; o < consumer.out; ++o) {
        for (auto j : keep) {
          const auto base = consumer.weight.begin() + (o * consumer.in + j) * kk;
          w.insert(w.end(), base, base + kk);
        }
      }
      consumer.weight = std::move(w);
      consumer.in = keep.size();
    } else {
      // Channel j owns `block` contiguous columns under [channel][row][col]
      // flattening.
      const std::size_t block = consumer.in / old_out;
      std::vector<double> w;
      w.reserve(consumer.out * keep.size() * block);
      for (std::size_t o = 0; o < consumer.out; ++o) {
        for (auto j : keep) {
          const auto base = consumer.weight.begin() + o * consumer.in + j * block;
          w.insert(w.end(), base, base + block);
        }
      }
      consumer.weight = std::move(w);
      consumer.in = keep.size() * block;
    }
  }
  LayerShapes(out);
  return out;
}

FlopsReport CountFlops(const Model& model) {
  FlopsReport report;
  if (model.layers.empty()) return report;
  const auto shapes = LayerShapes(model);
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const Layer& l = model.layers[i];
    std::uint64_t flops = 0;
    if (l.kind == LayerKind::kLinear) {
      flops = 2ULL * l.in * l.out;
    } else if (l.kind == LayerKind::kConv) {
      flops = 2ULL * l.kernel * l.kernel * l.in * l.out * shapes[i].h * shapes[i].w;
    }
    report.per_layer.push_back(flops);
    report.total += flops;
  }
  return report;
}

}  // namespace acsp
