#include "parl/baselines/replay_buffer.hpp"

#include <stdexcept>

namespace parl {

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity <= 0) throw std::domain_error("ReplayBuffer: capacity must be > 0");
  entries_.reserve(static_cast<std::size_t>(capacity));
}

void ReplayBuffer::push(Transition t) {
  if (entries_.size() < static_cast<std::size_t>(capacity_)) {
    entries_.push_back(std::move(t));
  } else {
    entries_[write_] = std::move(t);
  }
  write_ = (write_ + 1) % static_cast<std::size_t>(capacity_);
}

std::vector<const Transition*> ReplayBuffer::sample(int batch_size,
                                                    SeededRng& rng) const {
  if (batch_size <= 0) throw std::domain_error("ReplayBuffer: batch_size must be > 0");
  if (static_cast<std::size_t>(batch_size) > entries_.size())
    throw std::domain_error("ReplayBuffer: not enough entries to sample");

  std::vector<const Transition*> batch;
  batch.reserve(static_cast<std::size_t>(batch_size));
  std::vector<bool> taken(entries_.size(), false);
  while (batch.size() < static_cast<std::size_t>(batch_size)) {
    const auto i = rng.uniform_int(static_cast<std::uint32_t>(entries_.size()));
    if (taken[i]) continue;
    taken[i] = true;
    batch.push_back(&entries_[i]);
  }
  return batch;
}

}  // namespace parl
