#pragma once

#include "rumid/choice.hpp"
#include "rumid/dag.hpp"
#include "rumid/extmodels.hpp"
#include "rumid/idset.hpp"
#include "rumid/ordered.hpp"
#include "rumid/ryser.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

// Parsers throw rumid::InvalidInput on anything malformed; writers produce
// sorted keys and canonical "p/q" strings so output is byte-deterministic.
namespace rumid::json_io {

using nlohmann::json;

/// Accepts "p/q", "p", or an integer literal. Floats are refused.
Rational rational(const json& j, const std::string& where);
json to_json(const Rational& r);

Universe universe(const json& doc, std::size_t cap = kDefaultUniverseCap);
json alternatives(const Universe& u);

/// {"alternatives": [...], "mass": {"abcd": "1/4", ...}}
SignedMeasure measure(const Universe& u, const json& mass);
std::pair<Universe, SignedMeasure> distribution(const json& doc, std::size_t cap = kDefaultUniverseCap);
json distribution_doc(const Universe& u, const SignedMeasure& mu);
json mass_object(const Universe& u, const SignedMeasure& mu);

/// {"alternatives": [...], "probabilities": {"ab": {"a": "5/8", ...}, ...}}
ChoiceRule choice_rule(const Universe& u, const json& probabilities);
std::pair<Universe, ChoiceRule> choice_rule_doc(const json& doc, std::size_t cap = kDefaultUniverseCap);
json choice_rule_doc(const Universe& u, const ChoiceRule& rho);

std::vector<Preference> preference_list(const Universe& u, const json& arr);
json preference_list(const Universe& u, const std::vector<Preference>& s);

/// {"nodes": [...], "edges": [{"id", "tail", "head"}], "source", "sink"}
Dag dag(const json& doc);
json dag_doc(const Dag& g);
/// {"edge-id": "p/q"}; missing edges carry zero.
QuasiFlow quasiflow(const Dag& g, const json& doc);
json quasiflow_doc(const Dag& g, const QuasiFlow& f);
json path_doc(const Dag& g, const Path& p);
json decomposition_doc(const Dag& g, const PathDecomposition& pi);

json swap_doc(const Universe& u, const RyserSwap& s);

/// {"functional": {...}, "base": <distribution> | "rule": <choice rule>, "support": [...]?}
std::pair<Universe, BoundsQuery> bounds_query(const json& doc, std::size_t cap = kDefaultUniverseCap);
json bounds_doc(const Universe& u, const Bounds& b);

/// {"order": ["a", "b", "d", "c"]}
AltOrder order(const Universe& u, const json& doc);

/// Random choice on a menu collection: the choice-rule document with an
/// explicit "menus" list. Choice functions are keyed like preferences.
struct RcRuleDoc {
  Universe u;
  MenuCollection sigma;
  ChoiceRule rho;
};
RcRuleDoc rc_rule(const json& doc, std::size_t cap = kDefaultUniverseCap);
json rc_rule_doc(const Universe& u, const MenuCollection& sigma, const ChoiceRule& rho);
/// {"alternatives", "menus", "mass": {"aab": "1/2", ...}}
ChoiceMeasure rc_measure(const RcGraph& g, const json& mass);
json rc_measure_doc(const RcGraph& g, const ChoiceMeasure& mu);
MenuCollection menu_list(const Universe& u, const json& arr);

/// {"alternatives", "T", "rho1": {"x": "1/2"}, "cond": [{"x": {"y": "1/3"}}, ...]}
std::pair<Universe, DdcData> ddc(const json& doc, std::size_t cap = kDefaultUniverseCap);
json ddc_doc(const Universe& u, const DdcData& d);
/// {"alternatives", "T", "mass": {"aba": "1/4", ...}}
SequenceMeasure ddc_measure(const Universe& u, int horizon, const json& mass);
json ddc_measure_doc(const Universe& u, int horizon, const SequenceMeasure& mu);

/// {"alternatives", "probabilities": {"{}": {...}, "ab": {...}}}, keyed by the
/// recommended set; every row is a distribution over the whole universe.
std::pair<Universe, FdRule> fd_rule(const json& doc, std::size_t cap = kDefaultUniverseCap);
json fd_rule_doc(const Universe& u, const FdRule& r);
/// {"alternatives", "mass": {"ab|a": "1/3", ...}}
FdMeasure fd_measure(const Universe& u, const json& mass);
json fd_measure_doc(const Universe& u, const FdMeasure& mu);

/// Schema summary for `--schema <name>`; throws InvalidInput for unknown names.
json schema(const std::string& name);
std::vector<std::string> schema_names();

}  // namespace rumid::json_io
