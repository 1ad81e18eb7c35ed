#pragma once

#include "aptmine/thread.hpp"

namespace aptmine {

// Forward-rolls condition atoms: world t of the result is the union of
// the condition atoms of thread(t_i) for t_i in
// [max(1, t - (delta_t_con - 1)), t]. Action atoms are not copied.
// The window truncates at the thread start; delta_t_con may exceed t_max.
Thread forward_roll(const Thread& thread, int delta_t_con);

}  // namespace aptmine
