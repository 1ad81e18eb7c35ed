#pragma once

#include <vector>

#include "aptmine/atom.hpp"

namespace aptmine {

// A dense sequence of worlds indexed by time points 1..t_max.
class Thread {
 public:
  explicit Thread(int t_max);
  explicit Thread(std::vector<World> worlds);

  int t_max() const { return static_cast<int>(worlds_.size()); }

  const World& world(int t) const { return worlds_.at(index(t)); }
  World& world(int t) { return worlds_.at(index(t)); }

  const std::vector<World>& worlds() const { return worlds_; }

  friend bool operator==(const Thread&, const Thread&) = default;

 private:
  std::size_t index(int t) const;

  std::vector<World> worlds_;
};

// True iff every atom of `formula` is a member of `world`.
bool satisfies(const World& world, const Formula& formula);

// Ascending list of all time points where the thread satisfies the
// formula; its length is the formula's raw support in the thread.
std::vector<int> satisfaction_points(const Thread& thread,
                                     const Formula& formula);

}  // namespace aptmine
