#include "aptmine/atomize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "aptmine/errors.hpp"
#include "aptmine/util.hpp"

namespace aptmine {

namespace {

using TagKey = std::pair<std::string, Category>;

std::map<TagKey, std::vector<long long>> daily_counts(
    const Calendar& calendar, std::span<const TagCountRecord> records) {
  std::map<TagKey, std::vector<long long>> counts;
  for (const auto& r : records) {
    int t = calendar.point_of(r.date);  // throws if the calendar misses it
    auto& series = counts[{r.tag, r.category}];
    if (series.empty()) {
      series.assign(static_cast<std::size_t>(calendar.t_max()), 0);
    }
    series[static_cast<std::size_t>(t - 1)] += r.count;
  }
  return counts;
}

}  // namespace

std::vector<TagThreshold> compute_thresholds(
    const Calendar& calendar, std::span<const TagCountRecord> tag_records,
    double multiplier) {
  if (multiplier < 0) {
    throw ConfigError("threshold multiplier must be non-negative");
  }
  const double n = static_cast<double>(calendar.t_max());
  std::vector<TagThreshold> result;
  for (const auto& [key, series] : daily_counts(calendar, tag_records)) {
    double sum = 0;
    for (long long c : series) sum += static_cast<double>(c);
    const double mean = sum / n;
    double sq = 0;
    for (long long c : series) {
      const double d = static_cast<double>(c) - mean;
      sq += d * d;
    }
    const double stddev = std::sqrt(sq / n);
    result.push_back(TagThreshold{key.first, key.second, mean, stddev,
                                  mean + multiplier * stddev, multiplier});
  }
  return result;  // map iteration order is already (tag, category)
}

Thread atomize(const Calendar& calendar,
               std::span<const TagCountRecord> tag_records,
               std::span<const TagThreshold> thresholds,
               std::span<const IncidentRecord> incident_records) {
  std::map<TagKey, const TagThreshold*> by_tag;
  for (const auto& th : thresholds) {
    by_tag[{th.tag, th.category}] = &th;
  }

  Thread thread(calendar.t_max());
  for (const auto& [key, series] : daily_counts(calendar, tag_records)) {
    auto it = by_tag.find(key);
    if (it == by_tag.end()) {
      throw DataError("no threshold for tag '" + key.first + "' (" +
                      std::string(to_string(key.second)) + ")");
    }
    const TagThreshold& th = *it->second;
    const Atom atom = Atom::mentioned(
        key.first, key.second, static_cast<int>(std::floor(th.threshold)));
    for (int t = 1; t <= calendar.t_max(); ++t) {
      if (static_cast<double>(series[static_cast<std::size_t>(t - 1)]) >
          th.threshold) {
        thread.world(t).insert(atom);
      }
    }
  }

  for (const auto& inc : incident_records) {
    int t = calendar.point_of(inc.date);
    thread.world(t).insert(Atom::attacked(inc.target));
    thread.world(t).insert(Atom::attacked(kGeneralTarget));
  }
  return thread;
}

std::string thresholds_to_csv(std::span<const TagThreshold> thresholds) {
  std::string out = "tag,category,mean,stddev,threshold\n";
  for (const auto& th : thresholds) {
    out += csv_escape(th.tag);
    out += ',';
    out += to_string(th.category);
    out += ',';
    out += fmt_double(th.mean);
    out += ',';
    out += fmt_double(th.stddev);
    out += ',';
    out += fmt_double(th.threshold);
    out += '\n';
  }
  return out;
}

}  // namespace aptmine
