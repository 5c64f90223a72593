#pragma once

#include <span>
#include <string>
#include <vector>

#include "parl/rng.hpp"

namespace parl {

/// Row-major dense matrix of doubles.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

enum class Activation { ReLU, Tanh };

struct DenseLayer {
  Matrix weights;              // out x in
  std::vector<double> biases;  // out
};

/// Dense network parameters. The activation applies after every layer but
/// the last; the head stays linear (Q-values, logits, or a value estimate).
struct MlpParams {
  std::vector<DenseLayer> layers;
  Activation activation = Activation::ReLU;

  int input_size() const { return layers.front().weights.cols; }
  int output_size() const { return layers.back().weights.rows; }
};

/// He-style initialization scaled for the chosen activation.
MlpParams make_mlp(int input, std::span<const int> hidden, int output,
                   Activation activation, SeededRng& rng);

/// Zero-valued clone; gradients are shaped like parameters.
MlpParams zeros_like(const MlpParams& params);
void accumulate(MlpParams& into, const MlpParams& grads);
void scale(MlpParams& params, double factor);

/// Network input: indices of one-hot features (all with value 1.0), or a
/// dense vector for general inputs. Discrete-state featurization is sparse,
/// which keeps the first layer's cost proportional to the active indices.
struct Features {
  std::vector<int> active;     // one-hot mode when non-empty
  std::vector<double> dense;   // dense mode otherwise
  int size = 0;

  bool is_sparse() const { return !active.empty() || dense.empty(); }
  std::vector<double> to_dense() const;
  static Features one_hot(std::vector<int> active, int size);
  static Features from_dense(std::vector<double> values);
};

struct ForwardCache {
  Features input;
  std::vector<std::vector<double>> pre;   // pre-activation per layer
  std::vector<std::vector<double>> post;  // activated output per hidden layer
};

/// Affine + activation composition; fills `cache` for the backward pass.
std::vector<double> mlp_forward(const MlpParams& params, const Features& input,
                                ForwardCache* cache = nullptr);

/// Exact reverse-mode gradients for the cached forward pass.
MlpParams mlp_backward(const MlpParams& params, const ForwardCache& cache,
                       std::span<const double> grad_output);

/// Allocation-free variant: adds the gradients into `accum` (shaped like
/// params). The training loops batch through this path.
void mlp_backward_into(const MlpParams& params, const ForwardCache& cache,
                       std::span<const double> grad_output, MlpParams& accum);

void set_zero(MlpParams& params);

std::string mlp_to_json(const MlpParams& params);
MlpParams mlp_from_json(const std::string& text);

}  // namespace parl
