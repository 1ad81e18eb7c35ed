#include "aptmine/synth.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "aptmine/atomize.hpp"
#include "aptmine/errors.hpp"
#include "aptmine/ingest.hpp"

namespace aptmine {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream ids; sub-indices are packed into the low bits.
enum Stream : std::uint64_t {
  kPlant = 1,
  kPlantLag = 2,
  kSuccess = 3,
  kOffset = 4,
  kBackground = 5,
  kSolo = 6,
  kPair = 7,
  kPairLag = 8,
};

std::uint64_t sub(std::uint64_t stream, std::uint64_t a, std::uint64_t b = 0) {
  return (stream << 32) | (a << 16) | b;
}

}  // namespace

std::uint64_t CounterRng::next_u64(std::uint64_t stream,
                                   std::uint64_t counter) const {
  return mix64(mix64(seed_ ^ mix64(stream)) ^ counter);
}

double CounterRng::next_unit(std::uint64_t stream,
                             std::uint64_t counter) const {
  return static_cast<double>(next_u64(stream, counter) >> 11) * 0x1.0p-53;
}

int CounterRng::next_int(std::uint64_t stream, std::uint64_t counter, int lo,
                         int hi) const {
  if (hi < lo) throw std::invalid_argument("next_int: hi < lo");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64(stream, counter) % span);
}

namespace {

void validate_config(const SynthConfig& config) {
  if (config.t_max < 1) throw ConfigError("t_max must be at least 1");
  for (const auto& a : config.atoms) {
    if (a.daily_rate < 0.0 || a.daily_rate >= 1.0) {
      throw ConfigError("atom daily_rate must be in [0, 1)");
    }
    if (a.tag.empty()) throw ConfigError("atom tag must be non-empty");
  }
  if (config.pairwise_correlation < 0.0 || config.pairwise_correlation >= 1.0) {
    throw ConfigError("pairwise_correlation must be in [0, 1)");
  }
  if (config.correlation_max_lag < 0) {
    throw ConfigError("correlation_max_lag must be non-negative");
  }
  for (const auto& r : config.planted_rules) {
    if (!r.precondition.condition_only()) {
      throw ConfigError("planted precondition must be condition atoms");
    }
    if (!r.consequence.is_action()) {
      throw ConfigError("planted consequence must be an action atom");
    }
    if (r.true_probability < 0.0 || r.true_probability > 1.0) {
      throw ConfigError("true_probability must be in [0, 1]");
    }
    if (r.delta_t_act < 1 || r.delta_t_act >= config.t_max) {
      throw ConfigError(
          "contradictory config: delta_t_act must be in [1, t_max)");
    }
    if (r.precondition_rate <= 0.0 || r.precondition_rate >= 1.0) {
      throw ConfigError("precondition_rate must be in (0, 1)");
    }
    if (r.background_action_rate < 0.0 || r.background_action_rate >= 1.0) {
      throw ConfigError("background_action_rate must be in [0, 1)");
    }
    if (r.max_plant_lag < 0) {
      throw ConfigError("max_plant_lag must be non-negative");
    }
  }
}

// One condition atom per (tag, category); planted formulas define the
// atom values, noise atoms reuse them or default to threshold 0.
std::map<std::pair<std::string, Category>, Atom> build_registry(
    const SynthConfig& config) {
  std::map<std::pair<std::string, Category>, Atom> registry;
  for (const auto& rule : config.planted_rules) {
    for (const Atom& a : rule.precondition.atoms()) {
      auto key = std::make_pair(a.name(), a.category());
      auto it = registry.find(key);
      if (it == registry.end()) {
        registry.emplace(std::move(key), a);
      } else if (it->second != a) {
        throw ConfigError("conflicting atoms for tag '" + a.name() + "'");
      }
    }
  }
  for (const auto& sa : config.atoms) {
    auto key = std::make_pair(sa.tag, sa.category);
    if (!registry.count(key)) {
      registry.emplace(std::move(key), Atom::mentioned(sa.tag, sa.category, 0));
    }
  }
  return registry;
}

}  // namespace

std::pair<Thread, GroundTruth> generate_thread(const SynthConfig& config) {
  validate_config(config);
  const CounterRng rng(config.seed);
  auto registry = build_registry(config);

  Thread thread(config.t_max);
  GroundTruth truth;
  truth.seed = config.seed;
  truth.generator = std::string(CounterRng::id());
  truth.t_max = config.t_max;

  for (std::size_t r = 0; r < config.planted_rules.size(); ++r) {
    const auto& rule = config.planted_rules[r];
    PlantedRuleTruth rt{rule.precondition.atoms(), rule.consequence,
                        rule.true_probability, rule.delta_t_act};
    for (int t = 1; t <= config.t_max; ++t) {
      if (rng.next_unit(sub(kPlant, r), static_cast<std::uint64_t>(t)) >=
          rule.precondition_rate) {
        continue;
      }
      ++rt.planted_events;
      int anchor = t;
      for (std::size_t i = 0; i < rule.precondition.size(); ++i) {
        int lag = rule.max_plant_lag > 0
                      ? rng.next_int(sub(kPlantLag, r, i),
                                     static_cast<std::uint64_t>(t), 0,
                                     rule.max_plant_lag)
                      : 0;
        const int day = t + lag;
        if (day <= config.t_max) {
          thread.world(day).insert(rule.precondition.atoms()[i]);
          anchor = std::max(anchor, day);
        }
      }
      if (rng.next_unit(sub(kSuccess, r), static_cast<std::uint64_t>(t)) <
          rule.true_probability) {
        const int offset = rng.next_int(sub(kOffset, r),
                                        static_cast<std::uint64_t>(t), 1,
                                        rule.delta_t_act);
        if (anchor + offset <= config.t_max) {
          thread.world(anchor + offset).insert(rule.consequence);
          ++rt.placed_successes;
        }
      }
    }
    if (rule.background_action_rate > 0.0) {
      for (int t = 1; t <= config.t_max; ++t) {
        if (rng.next_unit(sub(kBackground, r), static_cast<std::uint64_t>(t)) <
            rule.background_action_rate) {
          thread.world(t).insert(rule.consequence);
          ++rt.background_occurrences;
        }
      }
    }
    rt.realized_probability =
        rt.planted_events > 0
            ? static_cast<double>(rt.placed_successes) / rt.planted_events
            : 0.0;
    truth.rules.push_back(std::move(rt));
  }

  for (std::size_t j = 0; j < config.atoms.size(); ++j) {
    const auto& sa = config.atoms[j];
    if (sa.daily_rate <= 0.0) continue;
    const Atom& atom = registry.at({sa.tag, sa.category});
    for (int t = 1; t <= config.t_max; ++t) {
      if (rng.next_unit(sub(kSolo, j), static_cast<std::uint64_t>(t)) <
          sa.daily_rate) {
        thread.world(t).insert(atom);
      }
    }
  }

  if (config.pairwise_correlation > 0.0) {
    for (std::size_t k = 0; k + 1 < config.atoms.size(); k += 2) {
      const Atom& first = registry.at(
          {config.atoms[k].tag, config.atoms[k].category});
      const Atom& second = registry.at(
          {config.atoms[k + 1].tag, config.atoms[k + 1].category});
      for (int t = 1; t <= config.t_max; ++t) {
        if (rng.next_unit(sub(kPair, k), static_cast<std::uint64_t>(t)) >=
            config.pairwise_correlation) {
          continue;
        }
        thread.world(t).insert(first);
        int lag = config.correlation_max_lag > 0
                      ? rng.next_int(sub(kPairLag, k),
                                     static_cast<std::uint64_t>(t), 0,
                                     config.correlation_max_lag)
                      : 0;
        if (t + lag <= config.t_max) thread.world(t + lag).insert(second);
      }
    }
  }

  for (const auto& [key, atom] : registry) {
    int days = 0;
    for (int t = 1; t <= config.t_max; ++t) {
      if (thread.world(t).contains(atom)) ++days;
    }
    truth.atom_days.emplace_back(atom, days);
  }
  return {std::move(thread), std::move(truth)};
}

namespace {

using nlohmann::ordered_json;

ordered_json truth_to_json(const SynthConfig& config, const GroundTruth& truth) {
  ordered_json j;
  j["seed"] = truth.seed;
  j["generator"] = truth.generator;
  j["t_max"] = truth.t_max;
  j["start_date"] = kSynthStartDate;
  j["csv_high_count"] = kSynthHighCount;
  ordered_json atoms = ordered_json::array();
  for (const auto& [atom, days] : truth.atom_days) {
    ordered_json a;
    a["tag"] = atom.name();
    a["category"] = to_string(atom.category());
    a["days_true"] = days;
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  ordered_json rules = ordered_json::array();
  for (std::size_t i = 0; i < truth.rules.size(); ++i) {
    const auto& rt = truth.rules[i];
    const auto& spec = config.planted_rules[i];
    ordered_json r;
    ordered_json pre = ordered_json::array();
    for (const Atom& a : rt.precondition_atoms) {
      ordered_json pa;
      pa["tag"] = a.name();
      pa["category"] = to_string(a.category());
      pre.push_back(std::move(pa));
    }
    r["precondition"] = std::move(pre);
    r["target"] = rt.consequence.name();
    r["true_probability"] = rt.true_probability;
    r["delta_t_act"] = rt.delta_t_act;
    r["precondition_rate"] = spec.precondition_rate;
    r["background_action_rate"] = spec.background_action_rate;
    r["max_plant_lag"] = spec.max_plant_lag;
    r["planted_events"] = rt.planted_events;
    r["placed_successes"] = rt.placed_successes;
    r["background_occurrences"] = rt.background_occurrences;
    r["realized_probability"] = rt.realized_probability;
    rules.push_back(std::move(r));
  }
  j["planted_rules"] = std::move(rules);
  return j;
}

}  // namespace

SynthFiles write_synth_files(const SynthConfig& config,
                             const std::filesystem::path& dir) {
  auto [thread, truth] = generate_thread(config);

  std::vector<Atom> conditions;
  std::vector<Atom> actions;
  for (const World& w : thread.worlds()) {
    for (const Atom& a : w.atoms()) {
      (a.is_condition() ? conditions : actions).push_back(a);
    }
  }
  auto dedup = [](std::vector<Atom>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(conditions);
  dedup(actions);
  if (conditions.empty()) {
    throw DataError("generated thread has no condition atoms to export");
  }

  // The ingest pipeline recomputes thresholds from the emitted counts;
  // the two-level encoding only survives the round trip while each tag
  // fires on at most ~30% of days (above that, mean + 1.5*stddev
  // overtakes the high count).
  for (const Atom& a : conditions) {
    int days = 0;
    for (int t = 1; t <= thread.t_max(); ++t) {
      if (thread.world(t).contains(a)) ++days;
    }
    if (static_cast<double>(days) / thread.t_max() > 0.30) {
      throw DataError("tag '" + a.name() +
                      "' fires on more than 30% of days; lower its rate so "
                      "the CSV export round-trips exactly");
    }
  }

  const Date start = *Date::parse(kSynthStartDate);
  std::filesystem::create_directories(dir);
  SynthFiles files{dir / "tags.csv", dir / "incidents.csv",
                   dir / "ground_truth.json"};

  {
    std::ofstream out(files.tags, std::ios::binary);
    if (!out) throw DataError("cannot write " + files.tags.string());
    out << "date,tag,category,count\n";
    for (int t = 1; t <= thread.t_max(); ++t) {
      const std::string day = (start + (t - 1)).to_iso();
      for (const Atom& a : conditions) {
        out << day << ',' << a.name() << ',' << to_string(a.category()) << ','
            << (thread.world(t).contains(a) ? kSynthHighCount : 0) << '\n';
      }
    }
  }
  {
    std::ofstream out(files.incidents, std::ios::binary);
    if (!out) throw DataError("cannot write " + files.incidents.string());
    out << "date,target,estimated_loss,name\n";
    for (int t = 1; t <= thread.t_max(); ++t) {
      const std::string day = (start + (t - 1)).to_iso();
      for (const Atom& a : actions) {
        if (thread.world(t).contains(a)) {
          out << day << ',' << a.name() << ",,\n";
        }
      }
    }
  }
  {
    std::ofstream out(files.ground_truth, std::ios::binary);
    if (!out) throw DataError("cannot write " + files.ground_truth.string());
    out << truth_to_json(config, truth).dump(2) << '\n';
  }
  return files;
}

EfrStats oracle_efr(const Thread& thread, const Formula& precondition,
                    const Atom& consequence, int delta_t_act) {
  if (delta_t_act < 1) throw ConfigError("delta_t_act must be at least 1");
  if (!consequence.is_action()) {
    throw std::invalid_argument("rule consequence must be an action atom");
  }
  if (!precondition.condition_only()) {
    throw std::invalid_argument(
        "rule precondition must contain only condition atoms");
  }
  int support = 0;
  int successes = 0;
  for (int t = 1; t <= thread.t_max() - delta_t_act; ++t) {
    bool satisfied = true;
    for (const Atom& want : precondition.atoms()) {
      bool found = false;
      for (const Atom& have : thread.world(t).atoms()) {
        if (have == want) {
          found = true;
          break;
        }
      }
      if (!found) {
        satisfied = false;
        break;
      }
    }
    if (!satisfied) continue;
    ++support;
    bool hit = false;
    for (int u = t + 1; u <= t + delta_t_act && !hit; ++u) {
      for (const Atom& have : thread.world(u).atoms()) {
        if (have == consequence) {
          hit = true;
          break;
        }
      }
    }
    if (hit) ++successes;
  }
  EfrStats stats;
  stats.support = support;
  stats.successes = successes;
  stats.probability =
      support > 0 ? static_cast<double>(successes) / support : 1.0;
  return stats;
}

namespace {

void enumerate_subsets(const std::vector<Atom>& atoms, std::size_t start,
                       std::vector<Atom>& current, int max_size,
                       const Thread& thread, int min_support,
                       std::vector<FrequentItemset>& out) {
  if (!current.empty()) {
    int count = 0;
    for (const World& w : thread.worlds()) {
      bool all = true;
      for (const Atom& a : current) {
        bool found = false;
        for (const Atom& have : w.atoms()) {
          if (have == a) {
            found = true;
            break;
          }
        }
        if (!found) {
          all = false;
          break;
        }
      }
      if (all) ++count;
    }
    if (count >= min_support) {
      out.push_back(FrequentItemset{Formula(current), count});
    }
  }
  if (static_cast<int>(current.size()) >= max_size) return;
  for (std::size_t i = start; i < atoms.size(); ++i) {
    current.push_back(atoms[i]);
    enumerate_subsets(atoms, i + 1, current, max_size, thread, min_support,
                      out);
    current.pop_back();
  }
}

}  // namespace

std::vector<FrequentItemset> oracle_frequent_itemsets(const Thread& thread,
                                                      int min_support,
                                                      int max_size) {
  if (min_support < 1) throw ConfigError("min support must be at least 1");
  if (max_size < 1) throw ConfigError("max itemset size must be at least 1");
  std::set<Atom> distinct;
  for (const World& w : thread.worlds()) {
    for (const Atom& a : w.atoms()) distinct.insert(a);
  }
  if (distinct.size() > 20) {
    throw ConfigError("oracle enumeration refuses more than 20 distinct atoms");
  }
  std::vector<Atom> atoms(distinct.begin(), distinct.end());
  std::vector<FrequentItemset> out;
  std::vector<Atom> current;
  enumerate_subsets(atoms, 0, current, max_size, thread, min_support, out);
  std::sort(out.begin(), out.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              if (a.itemset.size() != b.itemset.size()) {
                return a.itemset.size() < b.itemset.size();
              }
              return a.itemset < b.itemset;
            });
  return out;
}

}  // namespace aptmine
