#include "json_io.hpp"

#include <cmath>
#include <limits>

#include "aptmine/errors.hpp"

namespace aptmine::detail {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw DataError("invalid rule store json: " + what);
}

}  // namespace

ordered_json atom_to_json(const Atom& atom) {
  ordered_json j;
  if (atom.is_condition()) {
    j["kind"] = "condition";
    j["tag"] = atom.name();
    j["category"] = to_string(atom.category());
    j["threshold"] = atom.threshold();
  } else {
    j["kind"] = "action";
    j["target"] = atom.name();
  }
  return j;
}

Atom atom_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("atom without kind");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "condition") {
    auto cat = category_from_string(j.value("category", ""));
    if (!cat) bad("unknown category in atom");
    return Atom::mentioned(j.value("tag", ""), *cat, j.value("threshold", 0));
  }
  if (kind == "action") return Atom::attacked(j.value("target", ""));
  bad("unknown atom kind '" + kind + "'");
}

ordered_json formula_to_json(const Formula& formula) {
  ordered_json arr = ordered_json::array();
  for (const Atom& a : formula.atoms()) arr.push_back(atom_to_json(a));
  return arr;
}

Formula formula_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty()) bad("formula must be a non-empty array");
  std::vector<Atom> atoms;
  for (const auto& item : j) atoms.push_back(atom_from_json(item));
  return Formula(std::move(atoms));
}

ordered_json rule_to_json(const EfrRule& rule) {
  ordered_json j;
  j["precondition"] = formula_to_json(rule.precondition);
  j["consequence"] = atom_to_json(rule.consequence);
  j["delta_t_act"] = rule.delta_t_act;
  j["delta_t_con"] = rule.delta_t_con;
  j["probability"] = rule.probability;
  j["support"] = rule.support;
  j["successes"] = rule.successes;
  j["null_probability"] = rule.null_probability;
  if (std::isinf(rule.relative_likelihood_pct)) {
    j["relative_likelihood_pct"] = "inf";
  } else {
    j["relative_likelihood_pct"] = rule.relative_likelihood_pct;
  }
  j["precondition_kind"] = to_string(rule.precondition_kind);
  if (rule.avg_loss) j["avg_loss"] = *rule.avg_loss;
  if (rule.probability_interval) {
    j["probability_interval"] = {rule.probability_interval->first,
                                 rule.probability_interval->second};
  }
  return j;
}

EfrRule rule_from_json(const ordered_json& j) {
  if (!j.is_object()) bad("rule must be an object");
  EfrRule rule{formula_from_json(j.at("precondition")),
               atom_from_json(j.at("consequence"))};
  rule.delta_t_act = j.value("delta_t_act", 0);
  rule.delta_t_con = j.value("delta_t_con", 0);
  rule.probability = j.value("probability", 0.0);
  rule.support = j.value("support", 0);
  rule.successes = j.value("successes", 0);
  rule.null_probability = j.value("null_probability", 0.0);
  const auto& lift = j.at("relative_likelihood_pct");
  if (lift.is_string()) {
    rule.relative_likelihood_pct = std::numeric_limits<double>::infinity();
  } else {
    rule.relative_likelihood_pct = lift.get<double>();
  }
  rule.precondition_kind = j.value("precondition_kind", "") == "itemset"
                               ? PreconditionKind::Itemset
                               : PreconditionKind::SingleAtom;
  if (j.contains("avg_loss")) rule.avg_loss = j["avg_loss"].get<double>();
  if (j.contains("probability_interval")) {
    const auto& iv = j["probability_interval"];
    if (!iv.is_array() || iv.size() != 2) bad("probability_interval shape");
    rule.probability_interval = {iv[0].get<double>(), iv[1].get<double>()};
  }
  return rule;
}

ordered_json parameters_to_json(const RunParameters& p) {
  ordered_json j;
  j["delta_t_con"] = p.delta_t_con;
  j["delta_t_act"] = p.delta_t_act;
  j["supp_lb"] = p.supp_lb;
  j["max_itemset_size"] = p.max_itemset_size;
  j["min_support_factor"] = p.min_support_factor;
  j["threshold_multiplier"] = p.threshold_multiplier;
  j["significance"] = p.significance;
  j["interval"] = p.interval;
  return j;
}

RunParameters parameters_from_json(const ordered_json& j) {
  RunParameters p;
  p.delta_t_con = j.value("delta_t_con", p.delta_t_con);
  p.delta_t_act = j.value("delta_t_act", p.delta_t_act);
  p.supp_lb = j.value("supp_lb", p.supp_lb);
  p.max_itemset_size = j.value("max_itemset_size", p.max_itemset_size);
  p.min_support_factor = j.value("min_support_factor", p.min_support_factor);
  p.threshold_multiplier =
      j.value("threshold_multiplier", p.threshold_multiplier);
  p.significance = j.value("significance", p.significance);
  p.interval = j.value("interval", p.interval);
  return p;
}

ordered_json store_to_json(const RuleStore& store) {
  ordered_json j;
  j["schema_version"] = store.schema_version;
  ordered_json meta;
  meta["created"] = store.created;
  meta["digest_algorithm"] = store.digest_algorithm;
  ordered_json digests;
  for (const auto& [path, hex] : store.input_digests) digests[path] = hex;
  meta["input_digests"] = std::move(digests);
  meta["parameters"] = parameters_to_json(store.parameters);
  j["metadata"] = std::move(meta);
  ordered_json rules = ordered_json::array();
  for (const EfrRule& rule : store.rules) rules.push_back(rule_to_json(rule));
  j["rules"] = std::move(rules);
  return j;
}

RuleStore store_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("schema_version")) {
    bad("missing schema_version");
  }
  RuleStore store;
  store.schema_version = j["schema_version"].get<int>();
  if (store.schema_version != kRuleStoreSchemaVersion) {
    throw DataError("unsupported schema_version " +
                    std::to_string(store.schema_version) + " (expected " +
                    std::to_string(kRuleStoreSchemaVersion) + ")");
  }
  const auto& meta = j.at("metadata");
  store.created = meta.value("created", "");
  store.digest_algorithm = meta.value("digest_algorithm", "");
  if (meta.contains("input_digests")) {
    for (const auto& [path, hex] : meta["input_digests"].items()) {
      store.input_digests.emplace_back(path, hex.get<std::string>());
    }
  }
  if (meta.contains("parameters")) {
    store.parameters = parameters_from_json(meta["parameters"]);
  }
  if (j.contains("rules")) {
    for (const auto& r : j["rules"]) {
      store.rules.push_back(rule_from_json(r));
    }
  }
  return store;
}

}  // namespace aptmine::detail
