#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aptmine/atom.hpp"
#include "aptmine/date.hpp"
#include "aptmine/errors.hpp"

namespace aptmine {

// One day's mention count for one tag.
struct TagCountRecord {
  Date date;
  std::string tag;
  Category category = Category::General;
  long long count = 0;

  friend bool operator==(const TagCountRecord&,
                         const TagCountRecord&) = default;
};

// One recorded incident against a target (currency name or "general").
struct IncidentRecord {
  Date date;
  std::string target;
  std::optional<double> estimated_loss;  // USD
  std::optional<std::string> name;

  friend bool operator==(const IncidentRecord&,
                         const IncidentRecord&) = default;
};

enum class InputFormat { Csv, Jsonl };

// Infers Csv/Jsonl from the file extension (".jsonl"/".ndjson" vs rest).
InputFormat format_from_path(const std::filesystem::path& path);

// Dense bijection between calendar days [start, start + t_max - 1] and
// time points 1..t_max.
class Calendar {
 public:
  Calendar(Date start, int t_max);

  Date start() const { return start_; }
  int t_max() const { return t_max_; }
  Date end() const { return start_ + (t_max_ - 1); }

  bool covers(Date d) const;
  int point_of(Date d) const;  // DataError when outside the range
  Date date_of(int t) const;   // t in 1..t_max

 private:
  Date start_;
  int t_max_;
};

// CSV columns: date,tag,category,count (header row required).
// JSONL: one object per line with the same field names.
// Duplicate (date, tag, category) rows are summed, keeping first-seen order.
std::vector<TagCountRecord> parse_tag_counts(std::istream& in,
                                             InputFormat format);

// CSV columns: date,target,estimated_loss,name (loss and name may be empty).
std::vector<IncidentRecord> parse_incidents(std::istream& in,
                                            InputFormat format);

// File wrappers; parse errors are rethrown with the path attached.
std::vector<TagCountRecord> parse_tag_counts_file(
    const std::filesystem::path& path);
std::vector<IncidentRecord> parse_incidents_file(
    const std::filesystem::path& path);

// Spans the earliest through latest date across both inputs, inclusive.
// Days without records still receive time points.
Calendar build_calendar(std::span<const TagCountRecord> tag_records,
                        std::span<const IncidentRecord> incident_records);

}  // namespace aptmine
