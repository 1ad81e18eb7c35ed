#include "aptmine/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "aptmine/atomize.hpp"
#include "aptmine/errors.hpp"
#include "aptmine/util.hpp"

namespace aptmine {

namespace {

void check_efr_args(const Formula& precondition, const Atom& consequence,
                    int delta_t_act) {
  if (delta_t_act < 1) throw ConfigError("delta_t_act must be at least 1");
  if (!consequence.is_action()) {
    throw std::invalid_argument("rule consequence must be an action atom");
  }
  if (!precondition.condition_only()) {
    throw std::invalid_argument(
        "rule precondition must contain only condition atoms");
  }
}

// Shared efr counting loop over any thread representation.
template <typename SatisfiedAt, typename ActionAt>
EfrStats efr_scan(int t_max, int delta_t_act, SatisfiedAt&& satisfied_at,
                  ActionAt&& action_at) {
  EfrStats stats;
  for (int t = 1; t <= t_max - delta_t_act; ++t) {
    if (!satisfied_at(t)) continue;
    ++stats.support;
    for (int u = t + 1; u <= t + delta_t_act; ++u) {
      if (action_at(u)) {
        ++stats.successes;
        break;
      }
    }
  }
  stats.probability = stats.support > 0 ? static_cast<double>(stats.successes) /
                                              static_cast<double>(stats.support)
                                        : 1.0;
  return stats;
}

template <typename SatisfiedAt, typename ActionAt>
std::pair<double, double> interval_scan(int t_max, int delta_t_act,
                                        SatisfiedAt&& satisfied_at,
                                        ActionAt&& action_at) {
  int total = 0;
  int observed = 0;
  int unresolved = 0;
  for (int t = 1; t <= t_max; ++t) {
    if (!satisfied_at(t)) continue;
    ++total;
    bool hit = false;
    const int last = std::min(t + delta_t_act, t_max);
    for (int u = t + 1; u <= last; ++u) {
      if (action_at(u)) {
        hit = true;
        break;
      }
    }
    if (hit) {
      ++observed;
    } else if (t + delta_t_act > t_max) {
      ++unresolved;  // window cut off without an observed consequence
    }
  }
  if (total == 0) return {1.0, 1.0};
  return {static_cast<double>(observed) / total,
          static_cast<double>(observed + unresolved) / total};
}

template <typename ActionAt>
double null_scan(int t_max, int delta_t_act, ActionAt&& action_at) {
  if (delta_t_act < 1) throw ConfigError("delta_t_act must be at least 1");
  if (delta_t_act >= t_max) {
    throw ConfigError("no eligible windows: delta_t_act >= t_max");
  }
  int numerator = 0;
  for (int t = 1; t <= t_max - delta_t_act; ++t) {
    for (int u = t + 1; u <= t + delta_t_act; ++u) {
      if (action_at(u)) {
        ++numerator;
        break;
      }
    }
  }
  return static_cast<double>(numerator) /
         static_cast<double>(t_max - delta_t_act);
}

}  // namespace

std::string_view to_string(PreconditionKind kind) {
  return kind == PreconditionKind::Itemset ? "itemset" : "single-atom";
}

std::string_view to_string(Significance significance) {
  return significance == Significance::PositiveLift ? "positive-lift" : "none";
}

std::string EfrRule::display() const {
  std::string s = precondition.to_string();
  s += " =[efr]=> ";
  s += consequence.to_string();
  s += ": [";
  s += std::to_string(delta_t_act);
  s += ", ";
  s += fmt_fixed(probability, 2);
  s += ", ";
  s += std::to_string(delta_t_con);
  s += "]";
  return s;
}

ItemsetThread::ItemsetThread(int t_max) {
  if (t_max < 1) throw std::invalid_argument("thread length must be at least 1");
  itemsets_.resize(static_cast<std::size_t>(t_max));
  conditions_.resize(static_cast<std::size_t>(t_max));
  actions_.resize(static_cast<std::size_t>(t_max));
}

std::size_t ItemsetThread::index(int t) const {
  if (t < 1 || t > t_max()) {
    throw std::out_of_range("time point " + std::to_string(t) +
                            " outside 1.." + std::to_string(t_max()));
  }
  return static_cast<std::size_t>(t - 1);
}

bool ItemsetThread::satisfied_at(int t, const Formula& candidate) const {
  const std::size_t i = index(t);
  if (candidate.size() == 1) {
    const auto& c = conditions_[i];
    return std::binary_search(c.begin(), c.end(), candidate.atoms().front());
  }
  const auto& sets = itemsets_[i];
  return std::binary_search(sets.begin(), sets.end(), candidate);
}

bool ItemsetThread::action_at(int t, const Atom& action) const {
  const auto& a = actions_[index(t)];
  return std::binary_search(a.begin(), a.end(), action);
}

const std::vector<Formula>& ItemsetThread::itemsets_at(int t) const {
  return itemsets_[index(t)];
}

const std::vector<Atom>& ItemsetThread::conditions_at(int t) const {
  return conditions_[index(t)];
}

const std::vector<Atom>& ItemsetThread::actions_at(int t) const {
  return actions_[index(t)];
}

std::vector<Atom> ItemsetThread::action_atoms() const {
  std::vector<Atom> all;
  for (const auto& day : actions_) {
    all.insert(all.end(), day.begin(), day.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

ItemsetThread construct_itemset_thread(
    const Thread& base, const Thread& rolled,
    std::span<const FrequentItemset> freq_itemsets) {
  if (base.t_max() != rolled.t_max()) {
    throw DataError("base and rolled threads differ in length");
  }
  ItemsetThread out(base.t_max());
  for (int t = 1; t <= base.t_max(); ++t) {
    const std::size_t i = static_cast<std::size_t>(t - 1);
    for (const auto& fi : freq_itemsets) {
      if (satisfies(rolled.world(t), fi.itemset)) {
        out.itemsets_[i].push_back(fi.itemset);
      }
    }
    std::sort(out.itemsets_[i].begin(), out.itemsets_[i].end());
    for (const Atom& a : rolled.world(t).atoms()) {
      if (a.is_condition()) out.conditions_[i].push_back(a);
    }
    for (const Atom& a : base.world(t).atoms()) {
      if (a.is_action()) out.actions_[i].push_back(a);
    }
  }
  return out;
}

EfrStats efr_probability(const Thread& thread, const Formula& precondition,
                         const Atom& consequence, int delta_t_act) {
  check_efr_args(precondition, consequence, delta_t_act);
  return efr_scan(
      thread.t_max(), delta_t_act,
      [&](int t) { return satisfies(thread.world(t), precondition); },
      [&](int u) { return thread.world(u).contains(consequence); });
}

std::pair<double, double> efr_probability_interval(const Thread& thread,
                                                   const Formula& precondition,
                                                   const Atom& consequence,
                                                   int delta_t_act) {
  check_efr_args(precondition, consequence, delta_t_act);
  return interval_scan(
      thread.t_max(), delta_t_act,
      [&](int t) { return satisfies(thread.world(t), precondition); },
      [&](int u) { return thread.world(u).contains(consequence); });
}

double null_probability(const Thread& thread, const Atom& consequence,
                        int delta_t_act) {
  if (!consequence.is_action()) {
    throw std::invalid_argument("null rule consequence must be an action atom");
  }
  return null_scan(thread.t_max(), delta_t_act, [&](int u) {
    return thread.world(u).contains(consequence);
  });
}

double null_probability(const ItemsetThread& thread, const Atom& consequence,
                        int delta_t_act) {
  if (!consequence.is_action()) {
    throw std::invalid_argument("null rule consequence must be an action atom");
  }
  return null_scan(thread.t_max(), delta_t_act,
                   [&](int u) { return thread.action_at(u, consequence); });
}

double relative_likelihood(double probability, double null_prob) {
  if (probability < 0.0 || probability > 1.0 || null_prob < 0.0 ||
      null_prob > 1.0) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (null_prob > 0.0) return 100.0 * (probability / null_prob - 1.0);
  if (probability > 0.0) return std::numeric_limits<double>::infinity();
  return 0.0;
}

std::vector<int> efr_success_points(const ItemsetThread& thread,
                                    const Formula& candidate,
                                    const Atom& consequence, int delta_t_act) {
  check_efr_args(candidate, consequence, delta_t_act);
  std::vector<int> points;
  for (int t = 1; t <= thread.t_max() - delta_t_act; ++t) {
    if (!thread.satisfied_at(t, candidate)) continue;
    for (int u = t + 1; u <= t + delta_t_act; ++u) {
      if (thread.action_at(u, consequence)) {
        points.push_back(t);
        break;
      }
    }
  }
  return points;
}

std::vector<EfrRule> apt_extract(const ItemsetThread& thread,
                                 std::span<const Candidate> candidates,
                                 std::span<const Atom> actions,
                                 const LearnConfig& config) {
  if (config.delta_t_act < 1) {
    throw ConfigError("delta_t_act must be at least 1");
  }
  if (config.supp_lb < 1) throw ConfigError("supp_lb must be at least 1");
  for (const auto& c : candidates) {
    if (!c.formula.condition_only()) {
      throw std::invalid_argument(
          "rule precondition must contain only condition atoms");
    }
  }

  const int t_max = thread.t_max();
  const int delta = config.delta_t_act;

  std::map<Atom, double> null_by_action;
  for (const Atom& action : actions) {
    if (!action.is_action()) {
      throw std::invalid_argument("consequences must be action atoms");
    }
    null_by_action.emplace(action, null_probability(thread, action, delta));
  }

  std::vector<EfrRule> rules;
  for (const auto& candidate : candidates) {
    std::vector<int> sat_points;
    for (int t = 1; t <= t_max - delta; ++t) {
      if (thread.satisfied_at(t, candidate.formula)) sat_points.push_back(t);
    }
    const int support = static_cast<int>(sat_points.size());
    if (support < config.supp_lb) continue;

    for (const Atom& action : actions) {
      int successes = 0;
      for (int t : sat_points) {
        for (int u = t + 1; u <= t + delta; ++u) {
          if (thread.action_at(u, action)) {
            ++successes;
            break;
          }
        }
      }
      const double p = static_cast<double>(successes) / support;
      const double null_p = null_by_action.at(action);
      if (config.significance == Significance::PositiveLift && !(p > null_p)) {
        continue;
      }
      EfrRule rule{candidate.formula, action};
      rule.delta_t_act = delta;
      rule.delta_t_con = config.delta_t_con;
      rule.probability = p;
      rule.support = support;
      rule.successes = successes;
      rule.null_probability = null_p;
      rule.relative_likelihood_pct = relative_likelihood(p, null_p);
      rule.precondition_kind = candidate.kind;
      if (config.with_interval) {
        rule.probability_interval = interval_scan(
            t_max, delta,
            [&](int t) { return thread.satisfied_at(t, candidate.formula); },
            [&](int u) { return thread.action_at(u, action); });
      }
      rules.push_back(std::move(rule));
    }
  }

  std::sort(rules.begin(), rules.end(), [](const EfrRule& a, const EfrRule& b) {
    if (a.relative_likelihood_pct != b.relative_likelihood_pct) {
      return a.relative_likelihood_pct > b.relative_likelihood_pct;
    }
    if (a.support != b.support) return a.support > b.support;
    if (a.precondition != b.precondition) return a.precondition < b.precondition;
    return a.consequence < b.consequence;
  });
  return rules;
}

std::vector<std::pair<int, int>> success_windows(
    std::span<const int> success_points, int delta_t_act, int t_max) {
  std::vector<std::pair<int, int>> windows;
  windows.reserve(success_points.size());
  for (int t : success_points) {
    windows.emplace_back(t + 1, std::min(t + delta_t_act, t_max));
  }
  return windows;
}

std::optional<double> aggregate_loss(
    const Calendar& calendar, std::span<const IncidentRecord> incidents,
    const Atom& consequence,
    std::span<const std::pair<int, int>> success_windows) {
  if (!consequence.is_action()) {
    throw std::invalid_argument("loss aggregation expects an action atom");
  }
  const bool match_all = consequence.name() == kGeneralTarget;
  double sum = 0.0;
  int matched = 0;
  for (const auto& inc : incidents) {
    if (!inc.estimated_loss) continue;
    if (!match_all && inc.target != consequence.name()) continue;
    const int t = calendar.point_of(inc.date);
    bool inside = false;
    for (const auto& [first, last] : success_windows) {
      if (t >= first && t <= last) {
        inside = true;
        break;
      }
    }
    if (inside) {
      sum += *inc.estimated_loss;
      ++matched;
    }
  }
  if (matched == 0) return std::nullopt;
  return sum / matched;
}

}  // namespace aptmine
