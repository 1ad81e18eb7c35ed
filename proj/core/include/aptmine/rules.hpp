#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aptmine/apriori.hpp"
#include "aptmine/ingest.hpp"
#include "aptmine/thread.hpp"

namespace aptmine {

enum class PreconditionKind { Itemset, SingleAtom };
enum class Significance { PositiveLift, None };

std::string_view to_string(PreconditionKind kind);
std::string_view to_string(Significance significance);

// An existential frequency rule: when the precondition is satisfied, the
// consequence occurs within delta_t_act time points with probability p.
struct EfrRule {
  Formula precondition;
  Atom consequence;
  int delta_t_act = 0;
  int delta_t_con = 0;
  double probability = 0.0;
  int support = 0;
  int successes = 0;
  double null_probability = 0.0;
  double relative_likelihood_pct = 0.0;  // +inf when null probability is 0
  PreconditionKind precondition_kind = PreconditionKind::SingleAtom;
  std::optional<double> avg_loss;  // USD, when matched incidents carry losses
  std::optional<std::pair<double, double>> probability_interval;

  // "Mentioned(Coinbase, financial, 10) AND Mentioned(Gmail, software, 13)
  //  =[efr]=> Attacked(general): [21, 0.94, 5]"
  std::string display() const;
};

struct LearnConfig {
  int delta_t_act = 21;
  int supp_lb = 5;
  Significance significance = Significance::PositiveLift;
  int delta_t_con = 5;  // annotation carried onto emitted rules
  bool with_interval = false;
};

struct EfrStats {
  int support = 0;
  int successes = 0;
  double probability = 1.0;

  friend bool operator==(const EfrStats&, const EfrStats&) = default;
};

// Thread over composite items: each world holds the frequent itemsets
// contained in the rolled world, the rolled world's condition atoms, and
// the base world's action atoms. Satisfaction of a candidate formula at a
// time point is a single membership test.
class ItemsetThread {
 public:
  explicit ItemsetThread(int t_max);

  int t_max() const { return static_cast<int>(itemsets_.size()); }

  bool satisfied_at(int t, const Formula& candidate) const;
  bool action_at(int t, const Atom& action) const;

  const std::vector<Formula>& itemsets_at(int t) const;
  const std::vector<Atom>& conditions_at(int t) const;
  const std::vector<Atom>& actions_at(int t) const;

  // All distinct action atoms, in canonical order.
  std::vector<Atom> action_atoms() const;

 private:
  friend ItemsetThread construct_itemset_thread(
      const Thread&, const Thread&, std::span<const FrequentItemset>);

  std::size_t index(int t) const;

  std::vector<std::vector<Formula>> itemsets_;  // sorted per world
  std::vector<std::vector<Atom>> conditions_;   // sorted per world
  std::vector<std::vector<Atom>> actions_;      // sorted per world
};

// Assigns every frequent itemset I to each time point t with
// I a subset of rolled(t), and copies base(t)'s action atoms.
ItemsetThread construct_itemset_thread(
    const Thread& base, const Thread& rolled,
    std::span<const FrequentItemset> freq_itemsets);

// Point-estimate efr statistics over complete windows: support counts the
// time points t <= t_max - delta_t_act satisfying the precondition, a
// success means the consequence holds at some t' in [t+1, t+delta_t_act].
// With zero support the probability is 1 by convention.
EfrStats efr_probability(const Thread& thread, const Formula& precondition,
                         const Atom& consequence, int delta_t_act);

// [lower, upper] variant over every satisfying time point: windows cut off
// by the thread end count as failures (lower) or successes (upper).
std::pair<double, double> efr_probability_interval(const Thread& thread,
                                                   const Formula& precondition,
                                                   const Atom& consequence,
                                                   int delta_t_act);

// Probability of the null rule: the chance the consequence occurs in any
// window of delta_t_act time points, over all t_max - delta_t_act eligible
// starting points. Requires delta_t_act < t_max.
double null_probability(const Thread& thread, const Atom& consequence,
                        int delta_t_act);
double null_probability(const ItemsetThread& thread, const Atom& consequence,
                        int delta_t_act);

// Percentage increase of `probability` over `null_prob`:
// 100 * (probability / null_prob - 1). Returns +inf when null_prob is 0
// and probability > 0, and 0 when both are 0.
double relative_likelihood(double probability, double null_prob);

struct Candidate {
  Formula formula;
  PreconditionKind kind = PreconditionKind::SingleAtom;
};

// Emits one rule per (candidate, action) pair with support >= supp_lb
// and, under positive-lift significance, probability strictly above the
// null probability. Sorted by (lift desc, support desc, precondition,
// consequence).
std::vector<EfrRule> apt_extract(const ItemsetThread& thread,
                                 std::span<const Candidate> candidates,
                                 std::span<const Atom> actions,
                                 const LearnConfig& config);

// Eligible time points where the candidate is satisfied and the
// consequence follows within delta_t_act.
std::vector<int> efr_success_points(const ItemsetThread& thread,
                                    const Formula& candidate,
                                    const Atom& consequence, int delta_t_act);

// Mean estimated loss over incidents that match the consequence target
// ("general" matches every incident) and fall inside any of the inclusive
// [first, last] time-point windows; nullopt when no matched incident
// carries a loss.
std::optional<double> aggregate_loss(
    const Calendar& calendar, std::span<const IncidentRecord> incidents,
    const Atom& consequence,
    std::span<const std::pair<int, int>> success_windows);

// Success windows [t+1, min(t+delta_t_act, t_max)] for the given points.
std::vector<std::pair<int, int>> success_windows(
    std::span<const int> success_points, int delta_t_act, int t_max);

}  // namespace aptmine
