#pragma once

#include <chrono>
#include <optional>

#include "minstate/error.hpp"

namespace minstate {

/// Cooperative time limit for long searches. Default-constructed deadlines
/// never expire.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(Clock::duration budget) : at_(Clock::now() + budget) {}

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw Timeout("time limit exceeded");
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace minstate
