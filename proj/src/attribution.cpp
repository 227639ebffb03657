/* Copyright 2026 The Condsel Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "condsel/attribution.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "condsel/error.hpp"
#include "condsel/rng.hpp"

namespace condsel {

Matrix Matrix::FromRows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw Error(ErrorKind::kShape, fmt::format("matrix row {} has {} entries, expected {}", r,
                                                 rows[r].size(), m.cols()));
    }
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::string QuadratureName(Quadrature q) {
  return q == Quadrature::kMidpoint ? "midpoint" : "right";
}

Quadrature ParseQuadrature(const std::string& name) {
  if (name == "midpoint") return Quadrature::kMidpoint;
  if (name == "right") return Quadrature::kRight;
  throw Error(ErrorKind::kParameter, fmt::format("unknown quadrature '{}'", name));
}

std::string BlockKindName(BlockKind kind) {
  return kind == BlockKind::kAffine ? "affine" : "affine_tanh";
}

BlockKind ParseBlockKind(const std::string& name) {
  if (name == "affine") return BlockKind::kAffine;
  if (name == "affine_tanh") return BlockKind::kAffineTanh;
  throw Error(ErrorKind::kParse, fmt::format("unknown block kind '{}'", name));
}

ToyNetwork::ToyNetwork(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::kParameter, "network needs at least one block");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const BlockSpec& b = blocks_[i];
    if (b.weight.rows() == 0 || b.weight.cols() == 0) {
      throw Error(ErrorKind::kShape, fmt::format("block {} has an empty weight matrix", i));
    }
    if (b.bias.size() != b.output_dim()) {
      throw Error(ErrorKind::kShape, fmt::format("block {} bias has {} entries, expected {}", i,
                                                 b.bias.size(), b.output_dim()));
    }
    if (i > 0 && blocks_[i - 1].output_dim() != b.input_dim()) {
      throw Error(ErrorKind::kShape,
                  fmt::format("block {} expects width {} but block {} produces {}", i,
                              b.input_dim(), i - 1, blocks_[i - 1].output_dim()));
    }
  }
}

ToyNetwork ToyNetwork::Random(std::uint64_t seed, const std::vector<std::size_t>& widths,
                              const std::vector<BlockKind>& kinds, double scale,
                              double bias_scale) {
  if (widths.size() < 2 || kinds.size() != widths.size() - 1) {
    throw Error(ErrorKind::kParameter, "widths must have one more entry than kinds");
  }
  CounterRng rng(CombineKey(seed, HashString("toynet")));
  std::vector<BlockSpec> blocks;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    BlockSpec b;
    b.kind = kinds[i];
    b.weight = Matrix(widths[i + 1], widths[i]);
    const double s = scale / std::sqrt(static_cast<double>(widths[i]));
    for (std::size_t r = 0; r < b.weight.rows(); ++r) {
      for (std::size_t c = 0; c < b.weight.cols(); ++c) b.weight(r, c) = rng.Uniform(-s, s);
    }
    b.bias.resize(widths[i + 1]);
    for (double& v : b.bias) v = bias_scale == 0.0 ? 0.0 : rng.Uniform(-bias_scale, bias_scale);
    blocks.push_back(std::move(b));
  }
  return ToyNetwork(std::move(blocks));
}

void Diagnostics::Note(std::string message) { messages_.push_back(std::move(message)); }

namespace {

Vector ApplyBlock(const BlockSpec& b, std::span<const double> in) {
  Vector out(b.output_dim());
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = b.bias[r];
    const auto w = b.weight.row(r);
    for (std::size_t c = 0; c < in.size(); ++c) acc += w[c] * in[c];
    out[r] = b.kind == BlockKind::kAffineTanh ? std::tanh(acc) : acc;
  }
  return out;
}

void CheckFinite(std::span<const double> v, const char* what, std::size_t block) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::kNumeric, fmt::format("non-finite {} at block {}", what, block));
    }
  }
}

// Gradient of F with respect to every block output, given a forward pass.
std::vector<Vector> BackwardAll(const ToyNetwork& net, const ForwardPass& pass,
                                Diagnostics* diag) {
  const auto& blocks = net.blocks();
  std::vector<Vector> grads(blocks.size());
  Vector g = ObjectiveGradient(pass.embedding(), diag);
  for (std::size_t j = blocks.size(); j-- > 0;) {
    grads[j] = g;
    if (j == 0) break;
    const BlockSpec& b = blocks[j];
    const Vector& y = pass.activations[j];
    Vector pre = g;
    if (b.kind == BlockKind::kAffineTanh) {
      for (std::size_t r = 0; r < pre.size(); ++r) pre[r] *= 1.0 - y[r] * y[r];
    }
    Vector in_grad(b.input_dim(), 0.0);
    for (std::size_t r = 0; r < b.output_dim(); ++r) {
      const auto w = b.weight.row(r);
      for (std::size_t c = 0; c < in_grad.size(); ++c) in_grad[c] += w[c] * pre[r];
    }
    CheckFinite(in_grad, "gradient", j);
    g = std::move(in_grad);
  }
  return grads;
}

}  // namespace

ForwardPass Forward(const ToyNetwork& net, std::span<const double> x) {
  if (x.size() != net.input_dim()) {
    throw Error(ErrorKind::kShape, fmt::format("input has {} entries, network expects {}",
                                               x.size(), net.input_dim()));
  }
  ForwardPass pass;
  pass.activations.reserve(net.block_count());
  std::span<const double> in = x;
  for (std::size_t i = 0; i < net.block_count(); ++i) {
    pass.activations.push_back(ApplyBlock(net.blocks()[i], in));
    CheckFinite(pass.activations.back(), "activation", i);
    in = pass.activations.back();
  }
  return pass;
}

double Objective(std::span<const double> embedding) {
  double ss = 0.0;
  for (double v : embedding) ss += v * v;
  return std::sqrt(ss);
}

Vector ObjectiveGradient(std::span<const double> embedding, Diagnostics* diag) {
  const double norm = Objective(embedding);
  Vector g(embedding.size(), 0.0);
  if (norm == 0.0) {
    if (diag != nullptr) diag->Note("objective gradient taken as zero at a zero embedding");
    return g;
  }
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = embedding[i] / norm;
  return g;
}

std::vector<BlockConductance> LayerConductanceAll(const ToyNetwork& net,
                                                  std::span<const double> x,
                                                  const AttributionConfig& cfg,
                                                  Diagnostics* diag) {
  if (cfg.steps < 1) throw Error(ErrorKind::kParameter, "attribution steps must be >= 1");
  if (x.size() != net.input_dim()) {
    throw Error(ErrorKind::kShape, fmt::format("input has {} entries, network expects {}",
                                               x.size(), net.input_dim()));
  }
  Vector baseline = cfg.baseline.value_or(Vector(x.size(), 0.0));
  if (baseline.size() != x.size()) {
    throw Error(ErrorKind::kShape, "baseline length differs from input length");
  }

  const std::size_t d = net.block_count();
  std::vector<Vector> cond(d);
  for (std::size_t i = 0; i < d; ++i) cond[i].assign(net.blocks()[i].output_dim(), 0.0);

  const int n = cfg.steps;
  Vector point(x.size());
  Vector mid(x.size());
  ForwardPass prev = Forward(net, baseline);
  for (int k = 1; k <= n; ++k) {
    const double a = static_cast<double>(k) / n;
    for (std::size_t c = 0; c < x.size(); ++c) point[c] = baseline[c] + a * (x[c] - baseline[c]);
    ForwardPass cur = Forward(net, point);
    std::vector<Vector> grads;
    if (cfg.quadrature == Quadrature::kMidpoint) {
      const double h = (static_cast<double>(k) - 0.5) / n;
      for (std::size_t c = 0; c < x.size(); ++c) mid[c] = baseline[c] + h * (x[c] - baseline[c]);
      grads = BackwardAll(net, Forward(net, mid), diag);
    } else {
      grads = BackwardAll(net, cur, diag);
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < cond[i].size(); ++j) {
        cond[i][j] += grads[i][j] * (cur.activations[i][j] - prev.activations[i][j]);
      }
    }
    prev = std::move(cur);
  }

  std::vector<BlockConductance> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    CheckFinite(cond[i], "conductance", i);
    double abs_sum = 0.0;
    for (double v : cond[i]) abs_sum += std::fabs(v);
    out[i].block_index = i;
    out[i].score = abs_sum / static_cast<double>(cond[i].size());
    out[i].per_neuron = std::move(cond[i]);
  }
  return out;
}

BlockConductance LayerConductance(const ToyNetwork& net, std::size_t block,
                                  std::span<const double> x, const AttributionConfig& cfg,
                                  Diagnostics* diag) {
  if (block >= net.block_count()) {
    throw Error(ErrorKind::kParameter,
                fmt::format("block {} out of range (network has {})", block, net.block_count()));
  }
  return std::move(LayerConductanceAll(net, x, cfg, diag)[block]);
}

Vector ConductanceVector(const ToyNetwork& net, std::span<const double> x,
                         const AttributionConfig& cfg, Diagnostics* diag) {
  Vector g;
  g.reserve(net.block_count());
  for (const BlockConductance& bc : LayerConductanceAll(net, x, cfg, diag)) g.push_back(bc.score);
  return g;
}

}  // namespace condsel
