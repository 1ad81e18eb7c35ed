#pragma once

#include <span>
#include <string>
#include <vector>

#include "aptmine/thread.hpp"

namespace aptmine {

// A condition-atom itemset with the number of worlds containing it.
struct FrequentItemset {
  Formula itemset;
  int support_count = 0;

  friend bool operator==(const FrequentItemset&,
                         const FrequentItemset&) = default;
};

struct MiningConfig {
  double min_support_factor = 0.13;  // in (0, 1]
  int max_size = 2;
};

// ceil(factor * t_max), never below 1. Exact at representable products
// (0.13 * 100 -> 13, not 14).
int absolute_min_support(int t_max, double factor);

// Level-wise Apriori over the rolled thread, each world a transaction.
// Returns every itemset of size 1..max_size whose containing-world count
// is >= min_support, sorted by (size, canonical atom order).
std::vector<FrequentItemset> mine_frequent_itemsets(const Thread& rolled,
                                                    int min_support,
                                                    int max_size);
std::vector<FrequentItemset> mine_frequent_itemsets(const Thread& rolled,
                                                    const MiningConfig& config);

// CSV table: itemset,size,support
std::string itemsets_to_csv(std::span<const FrequentItemset> itemsets);

}  // namespace aptmine
