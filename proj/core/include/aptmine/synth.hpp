#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aptmine/apriori.hpp"
#include "aptmine/rules.hpp"
#include "aptmine/thread.hpp"

namespace aptmine {

// Stateless counter-based generator: every draw is a pure function of
// (seed, stream, counter), so threads regenerate bit-for-bit from the
// seed alone regardless of evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64(std::uint64_t stream, std::uint64_t counter) const;
  double next_unit(std::uint64_t stream, std::uint64_t counter) const;  // [0,1)
  int next_int(std::uint64_t stream, std::uint64_t counter, int lo,
               int hi) const;  // inclusive

  static constexpr std::string_view id() { return "splitmix64-counter"; }

 private:
  std::uint64_t seed_;
};

// Background condition atom: fires independently each day.
struct SynthAtom {
  std::string tag;
  Category category = Category::General;
  double daily_rate = 0.0;  // [0, 1)
};

// A rule implanted into the generated thread. Each day, with probability
// precondition_rate, every precondition atom is placed (atom i at
// t + lag_i, lag_i uniform in [0, max_plant_lag]); with probability
// true_probability the consequence is placed uniformly within
// delta_t_act days after the last placed atom. Background noise adds
// independent consequence occurrences.
struct PlantedRuleSpec {
  Formula precondition;
  Atom consequence;
  double true_probability = 1.0;     // [0, 1]
  int delta_t_act = 1;               // >= 1, < t_max
  double precondition_rate = 0.1;    // (0, 1)
  double background_action_rate = 0.0;  // [0, 1)
  int max_plant_lag = 0;

  PlantedRuleSpec(Formula pre, Atom cons)
      : precondition(std::move(pre)), consequence(std::move(cons)) {}
};

struct SynthConfig {
  int t_max = 0;
  std::vector<SynthAtom> atoms;
  double pairwise_correlation = 0.0;  // per-day co-fire rate, consecutive pairs
  int correlation_max_lag = 0;
  std::vector<PlantedRuleSpec> planted_rules;
  std::uint64_t seed = 0;
};

struct PlantedRuleTruth {
  std::vector<Atom> precondition_atoms;
  Atom consequence;
  double true_probability = 0.0;
  int delta_t_act = 0;
  int planted_events = 0;       // days the precondition was planted
  int placed_successes = 0;     // consequences actually placed in-window
  int background_occurrences = 0;
  double realized_probability = 0.0;  // placed_successes / planted_events
};

struct GroundTruth {
  std::uint64_t seed = 0;
  std::string generator;
  int t_max = 0;
  std::vector<std::pair<Atom, int>> atom_days;  // (atom, days true)
  std::vector<PlantedRuleTruth> rules;
};

// Deterministic thread plus the realized statistics of everything planted.
std::pair<Thread, GroundTruth> generate_thread(const SynthConfig& config);

// Emits the generated thread as ingestion-format files under `dir`:
// tags.csv (dense daily counts, firing days get count kSynthHighCount),
// incidents.csv, and ground_truth.json. The ingest -> atomize pipeline
// reproduces the thread exactly provided every tag fires on at most 30%
// of days (checked; the default 1.5-sigma threshold then separates the
// two count levels).
struct SynthFiles {
  std::filesystem::path tags;
  std::filesystem::path incidents;
  std::filesystem::path ground_truth;
};
SynthFiles write_synth_files(const SynthConfig& config,
                             const std::filesystem::path& dir);

inline constexpr int kSynthHighCount = 100;
inline constexpr const char* kSynthStartDate = "2020-01-01";

// Naive reference implementations used to validate the mining path; they
// share no scanning code with the rule engine.
EfrStats oracle_efr(const Thread& thread, const Formula& precondition,
                    const Atom& consequence, int delta_t_act);
std::vector<FrequentItemset> oracle_frequent_itemsets(const Thread& thread,
                                                      int min_support,
                                                      int max_size);

}  // namespace aptmine
