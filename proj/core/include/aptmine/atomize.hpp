#pragma once

#include <span>
#include <string>
#include <vector>

#include "aptmine/ingest.hpp"
#include "aptmine/thread.hpp"

namespace aptmine {

// Per-tag activity statistics; threshold = mean + multiplier * stddev,
// both computed over every calendar day (absent days count as zero,
// population standard deviation).
struct TagThreshold {
  std::string tag;
  Category category = Category::General;
  double mean = 0.0;
  double stddev = 0.0;
  double threshold = 0.0;
  double multiplier = 1.5;

  friend bool operator==(const TagThreshold&, const TagThreshold&) = default;
};

// One TagThreshold per distinct (tag, category), sorted by (tag, category).
std::vector<TagThreshold> compute_thresholds(
    const Calendar& calendar, std::span<const TagCountRecord> tag_records,
    double multiplier = 1.5);

// Builds the base thread: world t holds Mentioned(tag, category,
// floor(threshold)) for every tag whose count that day strictly exceeds
// its (real-valued) threshold, Attacked(target) for every incident
// target that day, and Attacked(general) for every incident day.
Thread atomize(const Calendar& calendar,
               std::span<const TagCountRecord> tag_records,
               std::span<const TagThreshold> thresholds,
               std::span<const IncidentRecord> incident_records);

// CSV table: tag,category,mean,stddev,threshold
std::string thresholds_to_csv(std::span<const TagThreshold> thresholds);

inline constexpr const char* kGeneralTarget = "general";

}  // namespace aptmine
