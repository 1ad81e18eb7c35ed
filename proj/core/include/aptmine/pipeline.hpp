#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aptmine/atomize.hpp"
#include "aptmine/ingest.hpp"
#include "aptmine/rules.hpp"
#include "aptmine/store.hpp"

namespace aptmine {

enum class OutputFormat { Table, Json, Csv };

std::optional<OutputFormat> output_format_from_string(std::string_view name);

struct RunConfig {
  std::filesystem::path tags_path;
  std::filesystem::path incidents_path;
  int delta_t_con = 5;
  int delta_t_act = 21;
  int supp_lb = 5;
  int max_itemset_size = 2;
  double min_support_factor = 0.13;
  double threshold_multiplier = 1.5;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::string> target_filter;
  bool interval = false;
  Significance significance = Significance::PositiveLift;
};

struct MineResult {
  Date start_date;
  int t_max = 0;
  int tag_count = 0;
  int condition_atom_count = 0;
  int action_atom_count = 0;
  int frequent_itemset_count = 0;
  int candidate_count = 0;
  RunConfig config;
  std::vector<EfrRule> rules;
};

// ingest -> atomize -> forward_roll -> apriori -> itemset thread ->
// apt_extract -> loss aggregation. The record-level entry point is the
// testable core; run_mine adds file loading.
MineResult mine_from_records(std::span<const TagCountRecord> tag_records,
                             std::span<const IncidentRecord> incident_records,
                             const RunConfig& config);
MineResult run_mine(const RunConfig& config);

// Deterministic report in the requested format; contains no timing or
// wall-clock fields.
std::string format_mine_report(const MineResult& result);

RunParameters parameters_of(const RunConfig& config);

// Rule store for a finished run; digests cover the exact input files.
RuleStore make_rule_store(const MineResult& result, const std::string& created);

struct SweepCell {
  int delta_t_con = 0;
  int delta_t_act = 0;
  std::string target;
  int significant_rules = 0;
  std::optional<double> mean_lift_pct;  // absent when no rules
  double extract_ms = 0.0;              // apt_extract wall time for the pair
};

struct SweepResult {
  std::vector<SweepCell> cells;
  bool with_timing = true;
};

// One cell per (delta_t_con, delta_t_act, target). Sequential by default
// so the timing column is honest; `parallel` runs the grid concurrently
// and drops the timing column.
SweepResult run_sweep(const RunConfig& config,
                      std::span<const int> delta_t_cons,
                      std::span<const int> delta_t_acts, bool parallel = false);
SweepResult sweep_from_records(std::span<const TagCountRecord> tag_records,
                               std::span<const IncidentRecord> incident_records,
                               const RunConfig& config,
                               std::span<const int> delta_t_cons,
                               std::span<const int> delta_t_acts,
                               bool parallel = false);

std::string format_sweep_csv(const SweepResult& result);

}  // namespace aptmine
