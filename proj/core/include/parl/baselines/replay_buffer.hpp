#pragma once

#include <vector>

#include "parl/baselines/mlp.hpp"
#include "parl/rng.hpp"

namespace parl {

struct Transition {
  Features state;
  int action = 0;
  double reward = 0.0;
  Features next_state;
  bool terminal = false;
};

/// Fixed-capacity ring of transitions with uniform batch sampling; indices
/// within one batch are distinct.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(Transition t);
  std::size_t size() const { return entries_.size(); }
  int capacity() const { return capacity_; }

  /// batch_size distinct uniform picks; throws when the buffer is smaller.
  std::vector<const Transition*> sample(int batch_size, SeededRng& rng) const;

 private:
  int capacity_;
  std::size_t write_ = 0;
  std::vector<Transition> entries_;
};

}  // namespace parl
