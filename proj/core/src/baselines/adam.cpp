#include "parl/baselines/adam.hpp"

#include <cmath>

namespace parl {

void Adam::step(MlpParams& params, const MlpParams& grads) {
  if (!initialized_) {
    m_ = zeros_like(params);
    v_ = zeros_like(params);
    initialized_ = true;
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));

  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    auto& p = params.layers[l];
    const auto& g = grads.layers[l];
    auto& m = m_.layers[l];
    auto& v = v_.layers[l];

    const auto update = [&](double& param, double grad, double& m1, double& m2) {
      m1 = beta1_ * m1 + (1.0 - beta1_) * grad;
      m2 = beta2_ * m2 + (1.0 - beta2_) * grad * grad;
      const double mhat = m1 / bc1;
      const double vhat = m2 / bc2;
      param -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    };

    for (std::size_t i = 0; i < p.weights.data.size(); ++i)
      update(p.weights.data[i], g.weights.data[i], m.weights.data[i], v.weights.data[i]);
    for (std::size_t i = 0; i < p.biases.size(); ++i)
      update(p.biases[i], g.biases[i], m.biases[i], v.biases[i]);
  }
}

}  // namespace parl
