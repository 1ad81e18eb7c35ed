#pragma once

// Internal JSON (de)serialization helpers shared by the store and the
// report writers. Not installed.

#include "json.hpp"

#include "aptmine/atom.hpp"
#include "aptmine/rules.hpp"
#include "aptmine/store.hpp"

namespace aptmine::detail {

using ordered_json = nlohmann::ordered_json;

ordered_json atom_to_json(const Atom& atom);
Atom atom_from_json(const ordered_json& j);

ordered_json formula_to_json(const Formula& formula);
Formula formula_from_json(const ordered_json& j);

ordered_json rule_to_json(const EfrRule& rule);
EfrRule rule_from_json(const ordered_json& j);

ordered_json parameters_to_json(const RunParameters& params);
RunParameters parameters_from_json(const ordered_json& j);

ordered_json store_to_json(const RuleStore& store);
RuleStore store_from_json(const ordered_json& j);

}  // namespace aptmine::detail
