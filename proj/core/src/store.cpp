#include "aptmine/store.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "aptmine/errors.hpp"
#include "aptmine/util.hpp"
#include "json_io.hpp"

namespace aptmine {

void save_rules(const RuleStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << detail::store_to_json(store).dump(2) << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

RuleStore load_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  detail::ordered_json j =
      detail::ordered_json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw DataError("invalid rule store json in " + path.string());
  }
  return detail::store_from_json(j);
}

std::string file_digest_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return hex;
}

namespace {

using RuleKey = std::tuple<Formula, Atom, int, int>;

RuleKey key_of(const EfrRule& rule) {
  return {rule.precondition, rule.consequence, rule.delta_t_act,
          rule.delta_t_con};
}

bool lift_equal(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  return a == b;
}

}  // namespace

DiffReport diff_rules(const RuleStore& old_store, const RuleStore& new_store) {
  DiffReport report;

  std::map<RuleKey, const EfrRule*> old_rules;
  for (const EfrRule& r : old_store.rules) old_rules.emplace(key_of(r), &r);
  std::map<RuleKey, const EfrRule*> new_rules;
  for (const EfrRule& r : new_store.rules) new_rules.emplace(key_of(r), &r);

  for (const auto& [key, rule] : new_rules) {
    auto it = old_rules.find(key);
    if (it == old_rules.end()) {
      report.added.push_back(*rule);
    } else if (rule->probability != it->second->probability ||
               !lift_equal(rule->relative_likelihood_pct,
                           it->second->relative_likelihood_pct)) {
      RuleChange change{*it->second, *rule};
      change.probability_delta =
          rule->probability - it->second->probability;
      change.lift_delta = rule->relative_likelihood_pct -
                          it->second->relative_likelihood_pct;
      report.changed.push_back(std::move(change));
    }
  }
  for (const auto& [key, rule] : old_rules) {
    if (!new_rules.count(key)) report.removed.push_back(*rule);
  }

  if (old_store.input_digests != new_store.input_digests) {
    report.warnings.push_back(
        "input digests differ between stores; the rule sets were mined from "
        "different data");
  }
  return report;
}

std::string format_diff(const DiffReport& report) {
  std::string out;
  for (const auto& w : report.warnings) {
    out += "warning: " + w + "\n";
  }
  if (report.empty()) {
    out += "no differences\n";
    return out;
  }
  for (const auto& r : report.added) {
    out += "added:   " + r.display() + "\n";
  }
  for (const auto& r : report.removed) {
    out += "removed: " + r.display() + "\n";
  }
  for (const auto& c : report.changed) {
    out += "changed: " + c.after.display() + "  p " +
           fmt_double(c.before.probability) + " -> " +
           fmt_double(c.after.probability) + " (" +
           (c.probability_delta >= 0 ? "+" : "") +
           fmt_double(c.probability_delta) + "), lift " +
           fmt_percent(c.before.relative_likelihood_pct) + " -> " +
           fmt_percent(c.after.relative_likelihood_pct) + "\n";
  }
  return out;
}

}  // namespace aptmine
