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
#ifndef CONDSEL_ATTRIBUTION_HPP_
#define CONDSEL_ATTRIBUTION_HPP_

// Layer conductance on small fully-connected networks.
//
// A ToyNetwork is an ordered chain of blocks, each `y = W x + b` optionally
// followed by tanh. The scalar attribution target is the Euclidean norm of the
// final block's output (the embedding). Conductance of every neuron of block i
// is approximated along the straight path x' -> x with n steps:
//
//   Cond_j = sum_{k=1..n} dF(x_k)/dy_j * (y_j(x_k) - y_j(x_{k-1})),
//   x_k = x' + (k/n)(x - x').
//
// That right-endpoint rule converges at O(1/n). The default instead evaluates
// the gradient at x_{k-1/2}, which is O(1/n^2), still exact on affine paths,
// and never touches the undefined gradient at a zero embedding.
//
// Gradients are analytic (backprop through affine and tanh), never numeric.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace condsel {

using Vector = std::vector<double>;

/// Row-major dense matrix; rows = output width, cols = input width.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix FromRows(const std::vector<Vector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class BlockKind { kAffine, kAffineTanh };

std::string BlockKindName(BlockKind kind);
BlockKind ParseBlockKind(const std::string& name);

struct BlockSpec {
  BlockKind kind = BlockKind::kAffine;
  Matrix weight;
  Vector bias;

  std::size_t input_dim() const noexcept { return weight.cols(); }
  std::size_t output_dim() const noexcept { return weight.rows(); }

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

class ToyNetwork {
 public:
  /// Throws kShape when consecutive widths do not compose or a bias has the
  /// wrong length, kParameter when there are no blocks.
  explicit ToyNetwork(std::vector<BlockSpec> blocks);

  /// Random weights ~ U(-s, s) with s = scale / sqrt(fan_in); biases ~ U(-b, b).
  /// `widths` lists input_dim followed by each block's output width.
  static ToyNetwork Random(std::uint64_t seed, const std::vector<std::size_t>& widths,
                           const std::vector<BlockKind>& kinds, double scale = 1.0,
                           double bias_scale = 0.1);

  const std::vector<BlockSpec>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t input_dim() const noexcept { return blocks_.front().input_dim(); }
  std::size_t embedding_dim() const noexcept { return blocks_.back().output_dim(); }

  friend bool operator==(const ToyNetwork&, const ToyNetwork&) = default;

 private:
  std::vector<BlockSpec> blocks_;
};

struct ForwardPass {
  std::vector<Vector> activations;  // output of each block, in order
  const Vector& embedding() const { return activations.back(); }
};

/// Collects non-fatal notes (e.g. the zero-embedding gradient convention).
class Diagnostics {
 public:
  void Note(std::string message);
  const std::vector<std::string>& messages() const noexcept { return messages_; }
  bool empty() const noexcept { return messages_.empty(); }

 private:
  std::vector<std::string> messages_;
};

ForwardPass Forward(const ToyNetwork& net, std::span<const double> x);

/// F = ||embedding||_2.
double Objective(std::span<const double> embedding);

/// dF/d(embedding) = f / ||f||. Defined as zero at f = 0, noted in `diag`.
Vector ObjectiveGradient(std::span<const double> embedding, Diagnostics* diag = nullptr);

enum class Quadrature { kMidpoint, kRight };
std::string QuadratureName(Quadrature q);
Quadrature ParseQuadrature(const std::string& name);

struct AttributionConfig {
  int steps = 50;
  Quadrature quadrature = Quadrature::kMidpoint;
  /// Empty means the zero vector.
  std::optional<Vector> baseline;
};

struct BlockConductance {
  std::size_t block_index = 0;  // 0-based
  Vector per_neuron;            // signed conductance of each output neuron
  double score = 0.0;           // mean |per_neuron|
};

/// Conductance of every block in one pass over the path (n forward/backward
/// evaluations shared by all blocks).
std::vector<BlockConductance> LayerConductanceAll(const ToyNetwork& net,
                                                  std::span<const double> x,
                                                  const AttributionConfig& cfg,
                                                  Diagnostics* diag = nullptr);

BlockConductance LayerConductance(const ToyNetwork& net, std::size_t block,
                                  std::span<const double> x, const AttributionConfig& cfg,
                                  Diagnostics* diag = nullptr);

/// [g_1(x), ..., g_d(x)] with g_i the block score.
Vector ConductanceVector(const ToyNetwork& net, std::span<const double> x,
                         const AttributionConfig& cfg, Diagnostics* diag = nullptr);

}  // namespace condsel

#endif  // CONDSEL_ATTRIBUTION_HPP_
