#include "aptmine/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "aptmine/errors.hpp"
#include "aptmine/util.hpp"

namespace aptmine {

namespace {

using Itemset = std::vector<Atom>;  // sorted, unique

bool world_contains(const World& world, const Itemset& items) {
  const auto& w = world.atoms();
  return std::includes(w.begin(), w.end(), items.begin(), items.end());
}

int count_support(const Thread& thread, const Itemset& items) {
  int n = 0;
  for (const World& w : thread.worlds()) {
    if (world_contains(w, items)) ++n;
  }
  return n;
}

// Classic join step: two (k-1)-itemsets sharing their first k-2 atoms
// produce one k-candidate; prune candidates with an infrequent subset.
std::vector<Itemset> generate_candidates(const std::vector<Itemset>& prev) {
  std::set<Itemset> prev_set(prev.begin(), prev.end());
  std::vector<Itemset> candidates;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    for (std::size_t j = i + 1; j < prev.size(); ++j) {
      const Itemset& a = prev[i];
      const Itemset& b = prev[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) {
        continue;  // lists are sorted, so shared prefixes are adjacent
      }
      Itemset cand = a;
      cand.push_back(b.back());
      bool all_frequent = true;
      for (std::size_t skip = 0; skip + 1 < cand.size() && all_frequent;
           ++skip) {
        Itemset sub;
        for (std::size_t k = 0; k < cand.size(); ++k) {
          if (k != skip) sub.push_back(cand[k]);
        }
        all_frequent = prev_set.count(sub) > 0;
      }
      if (all_frequent) candidates.push_back(std::move(cand));
    }
  }
  return candidates;
}

}  // namespace

int absolute_min_support(int t_max, double factor) {
  if (t_max < 1) throw ConfigError("t_max must be positive");
  if (!(factor > 0.0 && factor <= 1.0)) {
    throw ConfigError("min support factor must be in (0, 1]");
  }
  const double product = factor * static_cast<double>(t_max);
  const double rounded = std::round(product);
  long long v;
  if (std::abs(product - rounded) < 1e-9) {
    v = static_cast<long long>(rounded);
  } else {
    v = static_cast<long long>(std::ceil(product));
  }
  return static_cast<int>(std::max<long long>(1, v));
}

std::vector<FrequentItemset> mine_frequent_itemsets(const Thread& rolled,
                                                    int min_support,
                                                    int max_size) {
  if (min_support < 1) throw ConfigError("min support must be at least 1");
  if (max_size < 1) throw ConfigError("max itemset size must be at least 1");
  for (const World& w : rolled.worlds()) {
    for (const Atom& a : w.atoms()) {
      if (!a.is_condition()) {
        throw std::invalid_argument(
            "itemset mining expects a condition-only thread");
      }
    }
  }

  std::map<Atom, int> singles;
  for (const World& w : rolled.worlds()) {
    for (const Atom& a : w.atoms()) ++singles[a];
  }

  std::vector<FrequentItemset> result;
  std::vector<Itemset> level;
  for (const auto& [atom, count] : singles) {
    if (count >= min_support) {
      level.push_back({atom});
      result.push_back(FrequentItemset{Formula::single(atom), count});
    }
  }

  for (int size = 2; size <= max_size && level.size() > 1; ++size) {
    std::vector<Itemset> next;
    for (Itemset& cand : generate_candidates(level)) {
      int count = count_support(rolled, cand);
      if (count >= min_support) {
        result.push_back(FrequentItemset{Formula(cand), count});
        next.push_back(std::move(cand));
      }
    }
    level = std::move(next);
  }

  std::sort(result.begin(), result.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              if (a.itemset.size() != b.itemset.size()) {
                return a.itemset.size() < b.itemset.size();
              }
              return a.itemset < b.itemset;
            });
  return result;
}

std::vector<FrequentItemset> mine_frequent_itemsets(
    const Thread& rolled, const MiningConfig& config) {
  return mine_frequent_itemsets(
      rolled, absolute_min_support(rolled.t_max(), config.min_support_factor),
      config.max_size);
}

std::string itemsets_to_csv(std::span<const FrequentItemset> itemsets) {
  std::string out = "itemset,size,support\n";
  for (const auto& fi : itemsets) {
    out += csv_escape(fi.itemset.to_string());
    out += ',';
    out += std::to_string(fi.itemset.size());
    out += ',';
    out += std::to_string(fi.support_count);
    out += '\n';
  }
  return out;
}

}  // namespace aptmine
