#include "aptmine/windowing.hpp"

#include <algorithm>

#include "aptmine/errors.hpp"

namespace aptmine {

Thread forward_roll(const Thread& thread, int delta_t_con) {
  if (delta_t_con < 1) {
    throw ConfigError("delta_t_con must be at least 1");
  }
  const int window_size = delta_t_con - 1;
  Thread rolled(thread.t_max());
  for (int t = 1; t <= thread.t_max(); ++t) {
    World& out = rolled.world(t);
    for (int ti = std::max(1, t - window_size); ti <= t; ++ti) {
      for (const Atom& a : thread.world(ti).atoms()) {
        if (a.is_condition()) out.insert(a);
      }
    }
  }
  return rolled;
}

}  // namespace aptmine
