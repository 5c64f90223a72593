#include "parl/baselines/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace parl {

MlpParams make_mlp(int input, std::span<const int> hidden, int output,
                   Activation activation, SeededRng& rng) {
  MlpParams params;
  params.activation = activation;
  std::vector<int> widths{input};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(output);

  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    DenseLayer layer;
    layer.weights = Matrix(widths[l + 1], widths[l]);
    layer.biases.assign(static_cast<std::size_t>(widths[l + 1]), 0.0);
    const double gain = activation == Activation::ReLU ? 2.0 : 1.0;
    const double stddev = std::sqrt(gain / static_cast<double>(widths[l]));
    for (double& w : layer.weights.data) {
      // Box-Muller from the seeded stream keeps initialization reproducible.
      const double u1 = rng.next_double();
      const double u2 = rng.next_double();
      const double z = std::sqrt(-2.0 * std::log(u1 + 1e-300)) *
                       std::cos(2.0 * M_PI * u2);
      w = stddev * z;
    }
    params.layers.push_back(std::move(layer));
  }
  return params;
}

MlpParams zeros_like(const MlpParams& params) {
  MlpParams out;
  out.activation = params.activation;
  out.layers.reserve(params.layers.size());
  for (const auto& layer : params.layers) {
    DenseLayer z;
    z.weights = Matrix(layer.weights.rows, layer.weights.cols);
    z.biases.assign(layer.biases.size(), 0.0);
    out.layers.push_back(std::move(z));
  }
  return out;
}

void accumulate(MlpParams& into, const MlpParams& grads) {
  for (std::size_t l = 0; l < into.layers.size(); ++l) {
    auto& dst = into.layers[l];
    const auto& src = grads.layers[l];
    for (std::size_t i = 0; i < dst.weights.data.size(); ++i)
      dst.weights.data[i] += src.weights.data[i];
    for (std::size_t i = 0; i < dst.biases.size(); ++i)
      dst.biases[i] += src.biases[i];
  }
}

void scale(MlpParams& params, double factor) {
  for (auto& layer : params.layers) {
    for (double& w : layer.weights.data) w *= factor;
    for (double& b : layer.biases) b *= factor;
  }
}

std::vector<double> Features::to_dense() const {
  if (!is_sparse()) return dense;
  std::vector<double> out(static_cast<std::size_t>(size), 0.0);
  for (int i : active) out[static_cast<std::size_t>(i)] = 1.0;
  return out;
}

Features Features::one_hot(std::vector<int> active, int size) {
  Features f;
  f.active = std::move(active);
  f.size = size;
  return f;
}

Features Features::from_dense(std::vector<double> values) {
  Features f;
  f.size = static_cast<int>(values.size());
  f.dense = std::move(values);
  return f;
}

namespace {

inline double activate(double x, Activation a) {
  return a == Activation::ReLU ? (x > 0.0 ? x : 0.0) : std::tanh(x);
}

inline double activate_grad(double pre, Activation a) {
  if (a == Activation::ReLU) return pre > 0.0 ? 1.0 : 0.0;
  const double t = std::tanh(pre);
  return 1.0 - t * t;
}

}  // namespace

std::vector<double> mlp_forward(const MlpParams& params, const Features& input,
                                ForwardCache* cache) {
  if (params.layers.empty()) throw std::domain_error("mlp_forward: empty network");
  if (input.size != params.input_size())
    throw std::domain_error("mlp_forward: input width mismatch");

  if (cache) {
    cache->input = input;
    cache->pre.clear();
    cache->post.clear();
  }

  std::vector<double> current;
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto& layer = params.layers[l];
    const int out_n = layer.weights.rows;
    const int in_n = layer.weights.cols;
    std::vector<double> pre(layer.biases);

    if (l == 0 && input.is_sparse()) {
      // One-hot input: the affine map reduces to summing selected columns.
      for (int idx : input.active) {
        const double* col = layer.weights.data.data() + idx;
        for (int o = 0; o < out_n; ++o) pre[static_cast<std::size_t>(o)] += col[static_cast<std::size_t>(o) * in_n];
      }
    } else {
      const std::vector<double>& src = (l == 0) ? input.dense : current;
      for (int o = 0; o < out_n; ++o) {
        const double* row = layer.weights.data.data() + static_cast<std::size_t>(o) * in_n;
        double sum = pre[static_cast<std::size_t>(o)];
        for (int i = 0; i < in_n; ++i) sum += row[i] * src[static_cast<std::size_t>(i)];
        pre[static_cast<std::size_t>(o)] = sum;
      }
    }

    if (cache) cache->pre.push_back(pre);
    const bool is_head = (l + 1 == params.layers.size());
    if (is_head) {
      current = std::move(pre);
    } else {
      std::vector<double> post(pre.size());
      for (std::size_t i = 0; i < pre.size(); ++i)
        post[i] = activate(pre[i], params.activation);
      if (cache) cache->post.push_back(post);
      current = std::move(post);
    }
  }
  return current;
}

void set_zero(MlpParams& params) {
  for (auto& layer : params.layers) {
    std::fill(layer.weights.data.begin(), layer.weights.data.end(), 0.0);
    std::fill(layer.biases.begin(), layer.biases.end(), 0.0);
  }
}

MlpParams mlp_backward(const MlpParams& params, const ForwardCache& cache,
                       std::span<const double> grad_output) {
  MlpParams grads = zeros_like(params);
  mlp_backward_into(params, cache, grad_output, grads);
  return grads;
}

void mlp_backward_into(const MlpParams& params, const ForwardCache& cache,
                       std::span<const double> grad_output, MlpParams& accum) {
  if (cache.pre.size() != params.layers.size())
    throw std::domain_error("mlp_backward: cache does not match the network");
  if (static_cast<int>(grad_output.size()) != params.output_size())
    throw std::domain_error("mlp_backward: grad_output width mismatch");

  MlpParams& grads = accum;
  std::vector<double> delta(grad_output.begin(), grad_output.end());

  for (int l = static_cast<int>(params.layers.size()) - 1; l >= 0; --l) {
    const auto& layer = params.layers[static_cast<std::size_t>(l)];
    auto& grad_layer = grads.layers[static_cast<std::size_t>(l)];
    const int out_n = layer.weights.rows;
    const int in_n = layer.weights.cols;

    for (int o = 0; o < out_n; ++o)
      grad_layer.biases[static_cast<std::size_t>(o)] += delta[static_cast<std::size_t>(o)];

    const bool first = (l == 0);
    if (first && cache.input.is_sparse()) {
      for (int idx : cache.input.active) {
        for (int o = 0; o < out_n; ++o)
          grad_layer.weights.data[static_cast<std::size_t>(o) * in_n + idx] +=
              delta[static_cast<std::size_t>(o)];
      }
    } else {
      const std::vector<double> dense_input =
          first ? cache.input.to_dense() : cache.post[static_cast<std::size_t>(l - 1)];
      for (int o = 0; o < out_n; ++o) {
        double* row = grad_layer.weights.data.data() + static_cast<std::size_t>(o) * in_n;
        const double d = delta[static_cast<std::size_t>(o)];
        for (int i = 0; i < in_n; ++i) row[i] += d * dense_input[static_cast<std::size_t>(i)];
      }
    }

    if (!first) {
      std::vector<double> prev(static_cast<std::size_t>(in_n), 0.0);
      for (int o = 0; o < out_n; ++o) {
        const double* row = layer.weights.data.data() + static_cast<std::size_t>(o) * in_n;
        const double d = delta[static_cast<std::size_t>(o)];
        for (int i = 0; i < in_n; ++i) prev[static_cast<std::size_t>(i)] += d * row[i];
      }
      const auto& pre_prev = cache.pre[static_cast<std::size_t>(l - 1)];
      for (int i = 0; i < in_n; ++i)
        prev[static_cast<std::size_t>(i)] *=
            activate_grad(pre_prev[static_cast<std::size_t>(i)], params.activation);
      delta = std::move(prev);
    }
  }
}

std::string mlp_to_json(const MlpParams& params) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : params.layers) {
    layers.push_back({{"rows", layer.weights.rows},
                      {"cols", layer.weights.cols},
                      {"weights", layer.weights.data},
                      {"biases", layer.biases}});
  }
  return nlohmann::json{
      {"activation", params.activation == Activation::ReLU ? "relu" : "tanh"},
      {"layers", layers}}
      .dump();
}

MlpParams mlp_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MlpParams params;
  params.activation =
      j.at("activation").get<std::string>() == "relu" ? Activation::ReLU : Activation::Tanh;
  for (const auto& l : j.at("layers")) {
    DenseLayer layer;
    layer.weights = Matrix(l.at("rows").get<int>(), l.at("cols").get<int>());
    layer.weights.data = l.at("weights").get<std::vector<double>>();
    layer.biases = l.at("biases").get<std::vector<double>>();
    if (layer.weights.data.size() !=
        static_cast<std::size_t>(layer.weights.rows) * layer.weights.cols)
      throw std::domain_error("mlp_from_json: weight payload size mismatch");
    params.layers.push_back(std::move(layer));
  }
  if (params.layers.empty()) throw std::domain_error("mlp_from_json: no layers");
  return params;
}

}  // namespace parl
