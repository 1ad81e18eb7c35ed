#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "aptmine/rules.hpp"

namespace aptmine {

inline constexpr int kRuleStoreSchemaVersion = 1;
inline constexpr const char* kDigestAlgorithm = "fnv1a-64";

struct RunParameters {
  int delta_t_con = 5;
  int delta_t_act = 21;
  int supp_lb = 5;
  int max_itemset_size = 2;
  double min_support_factor = 0.13;
  double threshold_multiplier = 1.5;
  std::string significance = "positive-lift";
  bool interval = false;

  friend bool operator==(const RunParameters&, const RunParameters&) = default;
};

// A persisted rule set with enough metadata to tell whether the inputs
// that produced it have changed since.
struct RuleStore {
  int schema_version = kRuleStoreSchemaVersion;
  std::string created;  // ISO-8601 timestamp, part of the stored value
  std::string digest_algorithm = kDigestAlgorithm;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path, hex
  RunParameters parameters;
  std::vector<EfrRule> rules;
};

// Single canonical JSON document; rewriting an unchanged store is
// byte-identical.
void save_rules(const RuleStore& store, const std::filesystem::path& path);
RuleStore load_rules(const std::filesystem::path& path);

std::string file_digest_hex(const std::filesystem::path& path);

struct RuleChange {
  EfrRule before;
  EfrRule after;
  double probability_delta = 0.0;
  double lift_delta = 0.0;
};

struct DiffReport {
  std::vector<EfrRule> added;
  std::vector<EfrRule> removed;
  std::vector<RuleChange> changed;
  std::vector<std::string> warnings;  // e.g. input digests differ

  bool empty() const {
    return added.empty() && removed.empty() && changed.empty();
  }
};

// Rules keyed by (precondition, consequence, delta_t_act, delta_t_con);
// an entry is "changed" when its probability or lift moved.
DiffReport diff_rules(const RuleStore& old_store, const RuleStore& new_store);

std::string format_diff(const DiffReport& report);

}  // namespace aptmine
