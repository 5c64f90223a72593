#pragma once

#include "parl/baselines/mlp.hpp"

namespace parl {

/// Adam with bias-corrected first and second moments.
class Adam {
 public:
  explicit Adam(double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8)
      : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon) {}

  void step(MlpParams& params, const MlpParams& grads);

  std::int64_t steps_taken() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::int64_t t_ = 0;
  MlpParams m_, v_;
  bool initialized_ = false;
};

}  // namespace parl
