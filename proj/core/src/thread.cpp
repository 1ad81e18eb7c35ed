#include "aptmine/thread.hpp"

#include <algorithm>
#include <stdexcept>

namespace aptmine {

Thread::Thread(int t_max) {
  if (t_max < 1) {
    throw std::invalid_argument("thread length must be at least 1");
  }
  worlds_.resize(static_cast<std::size_t>(t_max));
}

Thread::Thread(std::vector<World> worlds) : worlds_(std::move(worlds)) {
  if (worlds_.empty()) {
    throw std::invalid_argument("thread length must be at least 1");
  }
}

std::size_t Thread::index(int t) const {
  if (t < 1 || t > t_max()) {
    throw std::out_of_range("time point " + std::to_string(t) +
                            " outside 1.." + std::to_string(t_max()));
  }
  return static_cast<std::size_t>(t - 1);
}

bool satisfies(const World& world, const Formula& formula) {
  const auto& w = world.atoms();
  const auto& f = formula.atoms();
  return std::includes(w.begin(), w.end(), f.begin(), f.end());
}

std::vector<int> satisfaction_points(const Thread& thread,
                                     const Formula& formula) {
  std::vector<int> points;
  for (int t = 1; t <= thread.t_max(); ++t) {
    if (satisfies(thread.world(t), formula)) {
      points.push_back(t);
    }
  }
  return points;
}

}  // namespace aptmine
