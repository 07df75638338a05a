#include "rumid/json_io.hpp"

#include "rumid/error.hpp"

#include <set>

namespace rumid::json_io {

namespace {

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw InvalidInput("expected a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw InvalidInput(std::string("missing field \"") + name + "\"");
  return *it;
}

const json& object_field(const json& doc, const char* name) {
  const json& j = field(doc, name);
  if (!j.is_object()) throw InvalidInput(std::string("field \"") + name + "\" must be an object");
  return j;
}

const json& array_field(const json& doc, const char* name) {
  const json& j = field(doc, name);
  if (!j.is_array()) throw InvalidInput(std::string("field \"") + name + "\" must be an array");
  return j;
}

std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidInput(where + " must be a string");
  return j.get<std::string>();
}

int int_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InvalidInput(where + " must be an integer");
  return j.get<int>();
}

std::vector<Rational> row_over(const Universe& u, const json& row, const std::string& where) {
  if (!row.is_object()) throw InvalidInput(where + " must be an object");
  std::vector<Rational> out(static_cast<std::size_t>(u.size()), Rational(0));
  for (const auto& [k, v] : row.items()) out[static_cast<std::size_t>(u.index(k))] = rational(v, where + "." + k);
  return out;
}

json row_doc(const Universe& u, const std::vector<Rational>& row, Menu restrict_to) {
  json out = json::object();
  for (int x = 0; x < u.size(); ++x)
    if (restrict_to >> x & 1u) out[u.label(x)] = to_json(row[static_cast<std::size_t>(x)]);
  return out;
}

}  // namespace

Rational rational(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw InvalidInput(where + " must be a rational string like \"3/8\"");
}

json to_json(const Rational& r) { return format_rational(r); }

Universe universe(const json& doc, std::size_t cap) {
  std::vector<std::string> labels;
  for (const auto& a : array_field(doc, "alternatives")) labels.push_back(string_of(a, "alternative"));
  return Universe(std::move(labels), cap);
}

json alternatives(const Universe& u) { return u.labels(); }

SignedMeasure measure(const Universe& u, const json& mass) {
  if (!mass.is_object()) throw InvalidInput("mass must be an object");
  SignedMeasure mu;
  for (const auto& [k, v] : mass.items()) mu[u.parse_preference(k)] += rational(v, "mass." + k);
  return mu;
}

std::pair<Universe, SignedMeasure> distribution(const json& doc, std::size_t cap) {
  Universe u = universe(doc, cap);
  SignedMeasure mu = measure(u, object_field(doc, "mass"));
  return {std::move(u), std::move(mu)};
}

json mass_object(const Universe& u, const SignedMeasure& mu) {
  json out = json::object();
  for (const auto& [p, w] : mu)
    if (!w.is_zero()) out[u.pref_key(p)] = to_json(w);
  return out;
}

json distribution_doc(const Universe& u, const SignedMeasure& mu) {
  return {{"alternatives", alternatives(u)}, {"mass", mass_object(u, mu)}};
}

ChoiceRule choice_rule(const Universe& u, const json& probabilities) {
  if (!probabilities.is_object()) throw InvalidInput("probabilities must be an object");
  ChoiceRule rho;
  for (const auto& [k, row] : probabilities.items()) {
    const Menu m = u.parse_menu(k);
    if (m == 0) throw InvalidInput("choice rule has an entry for the empty menu");
    rho.probs[m] = row_over(u, row, "probabilities." + k);
  }
  return rho;
}

std::pair<Universe, ChoiceRule> choice_rule_doc(const json& doc, std::size_t cap) {
  Universe u = universe(doc, cap);
  ChoiceRule rho = choice_rule(u, object_field(doc, "probabilities"));
  return {std::move(u), std::move(rho)};
}

json choice_rule_doc(const Universe& u, const ChoiceRule& rho) {
  json probs = json::object();
  for (const auto& [m, row] : rho.probs) probs[u.menu_key(m)] = row_doc(u, row, m);
  return {{"alternatives", alternatives(u)}, {"probabilities", probs}};
}

std::vector<Preference> preference_list(const Universe& u, const json& arr) {
  if (!arr.is_array()) throw InvalidInput("expected an array of preferences");
  std::vector<Preference> out;
  std::set<Preference> seen;
  for (const auto& k : arr) {
    Preference p = u.parse_preference(string_of(k, "preference"));
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

json preference_list(const Universe& u, const std::vector<Preference>& s) {
  json out = json::array();
  for (const auto& p : s) out.push_back(u.pref_key(p));
  return out;
}

// ---------------------------------------------------------------------------

Dag dag(const json& doc) {
  std::vector<std::string> nodes;
  for (const auto& n : array_field(doc, "nodes")) nodes.push_back(string_of(n, "node"));
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!index.emplace(nodes[i], static_cast<int>(i)).second) throw InvalidInput("duplicate node \"" + nodes[i] + "\"");
  auto node = [&](const json& j, const char* what) {
    const std::string name = string_of(j, what);
    auto it = index.find(name);
    if (it == index.end()) throw InvalidInput(std::string(what) + " \"" + name + "\" is not a node");
    return it->second;
  };
  std::vector<Edge> edges;
  for (const auto& e : array_field(doc, "edges")) {
    const json& id = field(e, "id");
    if (!id.is_number_integer()) throw InvalidInput("edge id must be an integer");
    edges.push_back({id.get<long>(), node(field(e, "tail"), "tail"), node(field(e, "head"), "head")});
  }
  Dag g(std::move(nodes), std::move(edges));
  if (doc.contains("source") && node(doc["source"], "source") != g.source())
    throw InvalidInput("declared source is not the unique node without incoming edges");
  if (doc.contains("sink") && node(doc["sink"], "sink") != g.sink())
    throw InvalidInput("declared sink is not the unique node without outgoing edges");
  return g;
}

json dag_doc(const Dag& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"id", e.id}, {"tail", g.label(e.tail)}, {"head", g.label(e.head)}});
  return {{"nodes", g.labels()}, {"edges", edges}, {"source", g.label(g.source())}, {"sink", g.label(g.sink())}};
}

QuasiFlow quasiflow(const Dag& g, const json& doc) {
  if (!doc.is_object()) throw InvalidInput("quasi-flow must be an object keyed by edge id");
  QuasiFlow f = QuasiFlow::Zero(g.edge_count());
  for (const auto& [k, v] : doc.items()) {
    long id = 0;
    try {
      std::size_t used = 0;
      id = std::stol(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      throw InvalidInput("quasi-flow key \"" + k + "\" is not an edge id");
    }
    f(g.edge_index(id)) = rational(v, "flow." + k);
  }
  return f;
}

json quasiflow_doc(const Dag& g, const QuasiFlow& f) {
  // keyed by id string; numeric ids sort lexicographically, which keeps
  // output stable
  json out = json::object();
  for (int e = 0; e < g.edge_count(); ++e) out[std::to_string(g.edge(e).id)] = to_json(f(e));
  return out;
}

json path_doc(const Dag& g, const Path& p) {
  json out = json::array();
  for (int e : p) out.push_back(g.edge(e).id);
  return out;
}

json decomposition_doc(const Dag& g, const PathDecomposition& pi) {
  json out = json::array();
  for (const auto& [p, w] : pi)
    if (!w.is_zero()) out.push_back({{"path", path_doc(g, p)}, {"mass", to_json(w)}});
  return out;
}

json swap_doc(const Universe& u, const RyserSwap& s) {
  return {{"minus", {u.pref_key(s.minus_p), u.pref_key(s.minus_q)}},
          {"plus", {u.pref_key(s.plus_p), u.pref_key(s.plus_q)}},
          {"k", s.k}};
}

// ---------------------------------------------------------------------------

std::pair<Universe, BoundsQuery> bounds_query(const json& doc, std::size_t cap) {
  const bool has_base = doc.is_object() && doc.contains("base");
  const bool has_rule = doc.is_object() && doc.contains("rule");
  if (has_base == has_rule) throw InvalidInput("bounds query needs exactly one of \"base\" and \"rule\"");
  BoundsQuery q;
  std::optional<Universe> u;
  if (has_base) {
    auto [uu, mu] = distribution(doc["base"], cap);
    check_distribution(uu, mu);
    u = std::move(uu);
    q.base = std::move(mu);
  } else {
    auto [uu, rho] = choice_rule_doc(doc["rule"], cap);
    check_choice_rule(uu, rho, uu.menus());
    u = std::move(uu);
    q.base = rationalization_of(RumGraph(*u), rho);
  }
  q.functional = measure(*u, object_field(doc, "functional"));
  if (doc.contains("support")) q.support = preference_list(*u, doc["support"]);
  return {std::move(*u), std::move(q)};
}

json bounds_doc(const Universe& u, const Bounds& b) {
  return {{"min", to_json(b.min)},
          {"max", to_json(b.max)},
          {"argmin", distribution_doc(u, b.argmin)},
          {"argmax", distribution_doc(u, b.argmax)}};
}

AltOrder order(const Universe& u, const json& doc) {
  AltOrder o;
  for (const auto& a : array_field(doc, "order")) o.push_back(u.index(string_of(a, "order entry")));
  check_order(u, o);
  return o;
}

// ---------------------------------------------------------------------------

MenuCollection menu_list(const Universe& u, const json& arr) {
  if (!arr.is_array()) throw InvalidInput("menus must be an array");
  MenuCollection out;
  for (const auto& k : arr) out.push_back(u.parse_menu(string_of(k, "menu")));
  return out;
}

RcRuleDoc rc_rule(const json& doc, std::size_t cap) {
  Universe u = universe(doc, cap);
  MenuCollection sigma = menu_list(u, array_field(doc, "menus"));
  ChoiceRule rho = choice_rule(u, object_field(doc, "probabilities"));
  const std::set<Menu> listed(sigma.begin(), sigma.end());
  for (const auto& [m, row] : rho.probs)
    if (!listed.count(m)) throw InvalidInput("probabilities given for unlisted menu " + u.menu_key(m));
  return {std::move(u), std::move(sigma), std::move(rho)};
}

json rc_rule_doc(const Universe& u, const MenuCollection& sigma, const ChoiceRule& rho) {
  json doc = choice_rule_doc(u, rho);
  json menus = json::array();
  for (Menu m : sigma) menus.push_back(u.menu_key(m));
  doc["menus"] = menus;
  return doc;
}

ChoiceMeasure rc_measure(const RcGraph& g, const json& mass) {
  if (!mass.is_object()) throw InvalidInput("mass must be an object");
  ChoiceMeasure mu;
  for (const auto& [k, v] : mass.items()) {
    ChoiceFunction c = g.universe().parse_sequence(k);
    rc_path(g, c);
    mu[c] += rational(v, "mass." + k);
  }
  return mu;
}

json rc_measure_doc(const RcGraph& g, const ChoiceMeasure& mu) {
  json mass = json::object();
  for (const auto& [c, w] : mu)
    if (!w.is_zero()) mass[g.universe().key(c)] = to_json(w);
  json menus = json::array();
  for (Menu m : g.sigma()) menus.push_back(g.universe().menu_key(m));
  return {{"alternatives", alternatives(g.universe())}, {"menus", menus}, {"mass", mass}};
}

std::pair<Universe, DdcData> ddc(const json& doc, std::size_t cap) {
  Universe u = universe(doc, cap);
  DdcData d;
  d.horizon = int_of(field(doc, "T"), "T");
  d.rho1 = row_over(u, object_field(doc, "rho1"), "rho1");
  for (const auto& table : array_field(doc, "cond")) {
    if (!table.is_object()) throw InvalidInput("each cond entry must be an object");
    RatMatrix c = RatMatrix::Zero(u.size(), u.size());
    for (const auto& [x, row] : table.items()) {
      const auto r = row_over(u, row, "cond." + x);
      for (int y = 0; y < u.size(); ++y) c(u.index(x), y) = r[static_cast<std::size_t>(y)];
    }
    d.cond.push_back(std::move(c));
  }
  check_ddc(u, d);
  return {std::move(u), std::move(d)};
}

json ddc_doc(const Universe& u, const DdcData& d) {
  json cond = json::array();
  for (const auto& c : d.cond) {
    json table = json::object();
    for (int x = 0; x < u.size(); ++x) {
      json row = json::object();
      for (int y = 0; y < u.size(); ++y) row[u.label(y)] = to_json(c(x, y));
      table[u.label(x)] = row;
    }
    cond.push_back(table);
  }
  return {{"alternatives", alternatives(u)},
          {"T", d.horizon},
          {"rho1", row_doc(u, d.rho1, u.full())},
          {"cond", cond}};
}

SequenceMeasure ddc_measure(const Universe& u, int horizon, const json& mass) {
  if (!mass.is_object()) throw InvalidInput("mass must be an object");
  SequenceMeasure mu;
  for (const auto& [k, v] : mass.items()) {
    ChoiceSequence s = u.parse_sequence(k);
    if (static_cast<int>(s.size()) != horizon) throw InvalidInput("sequence \"" + k + "\" does not have length T");
    mu[s] += rational(v, "mass." + k);
  }
  return mu;
}

json ddc_measure_doc(const Universe& u, int horizon, const SequenceMeasure& mu) {
  json mass = json::object();
  for (const auto& [s, w] : mu)
    if (!w.is_zero()) mass[u.key(s)] = to_json(w);
  return {{"alternatives", alternatives(u)}, {"T", horizon}, {"mass", mass}};
}

std::pair<Universe, FdRule> fd_rule(const json& doc, std::size_t cap) {
  Universe u = universe(doc, cap);
  FdRule r;
  for (const auto& [k, row] : object_field(doc, "probabilities").items()) {
    const auto vals = row_over(u, row, "probabilities." + k);
    Rational total = 0;
    for (const auto& v : vals) {
      if (v < 0 || v > 1) throw InvalidInput("probability outside [0,1] for recommended set " + k);
      total += v;
    }
    if (total != 1) throw InvalidInput("recommended set " + k + " sums to " + format_rational(total));
    r[u.parse_menu(k)] = vals;
  }
  for (Menu a = 0; a <= u.full(); ++a)
    if (!r.count(a)) throw InvalidInput("missing recommended set " + u.menu_key(a));
  return {std::move(u), std::move(r)};
}

json fd_rule_doc(const Universe& u, const FdRule& r) {
  json probs = json::object();
  for (const auto& [a, row] : r) probs[u.menu_key(a)] = row_doc(u, row, u.full());
  return {{"alternatives", alternatives(u)}, {"probabilities", probs}};
}

FdMeasure fd_measure(const Universe& u, const json& mass) {
  if (!mass.is_object()) throw InvalidInput("mass must be an object");
  FdMeasure mu;
  for (const auto& [k, v] : mass.items()) mu[parse_fd_key(u, k)] += rational(v, "mass." + k);
  return mu;
}

json fd_measure_doc(const Universe& u, const FdMeasure& mu) {
  json mass = json::object();
  for (const auto& [p, w] : mu)
    if (!w.is_zero()) mass[fd_key(u, p)] = to_json(w);
  return {{"alternatives", alternatives(u)}, {"mass", mass}};
}

// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, json>& schemas() {
  static const std::map<std::string, json> s = [] {
    const json rat = {{"type", "string"}, {"pattern", "^-?[0-9]+(/[0-9]+)?$"}};
    const json alts = {{"type", "array"}, {"items", {{"type", "string"}}}};
    const json ratmap = {{"type", "object"}, {"additionalProperties", rat}};
    std::map<std::string, json> m;
    m["distribution"] = {{"type", "object"},
                         {"required", {"alternatives", "mass"}},
                         {"properties", {{"alternatives", alts}, {"mass", ratmap}}}};
    m["choice-rule"] = {{"type", "object"},
                        {"required", {"alternatives", "probabilities"}},
                        {"properties",
                         {{"alternatives", alts},
                          {"probabilities", {{"type", "object"}, {"additionalProperties", ratmap}}}}}};
    m["dag"] = {{"type", "object"},
                {"required", {"nodes", "edges"}},
                {"properties",
                 {{"nodes", alts},
                  {"edges",
                   {{"type", "array"},
                    {"items",
                     {{"type", "object"},
                      {"required", {"id", "tail", "head"}},
                      {"properties",
                       {{"id", {{"type", "integer"}}}, {"tail", {{"type", "string"}}}, {"head", {{"type", "string"}}}}}}}}},
                  {"source", {{"type", "string"}}},
                  {"sink", {{"type", "string"}}}}}};
    m["quasi-flow"] = ratmap;
    m["swap"] = {{"type", "object"},
                 {"required", {"minus", "plus", "k"}},
                 {"properties", {{"minus", alts}, {"plus", alts}, {"k", {{"type", "integer"}}}}}};
    m["bounds-query"] = {{"type", "object"},
                         {"required", {"functional"}},
                         {"oneOf", {{{"required", {"base"}}}, {{"required", {"rule"}}}}},
                         {"properties",
                          {{"functional", ratmap},
                           {"base", {{"$ref", "distribution"}}},
                           {"rule", {{"$ref", "choice-rule"}}},
                           {"support", alts}}}};
    m["order"] = {{"type", "object"}, {"required", {"order"}}, {"properties", {{"order", alts}}}};
    m["rc-rule"] = {{"type", "object"},
                    {"required", {"alternatives", "menus", "probabilities"}},
                    {"properties",
                     {{"alternatives", alts},
                      {"menus", alts},
                      {"probabilities", {{"type", "object"}, {"additionalProperties", ratmap}}}}}};
    m["ddc"] = {{"type", "object"},
                {"required", {"alternatives", "T", "rho1", "cond"}},
                {"properties",
                 {{"alternatives", alts},
                  {"T", {{"type", "integer"}, {"minimum", 1}}},
                  {"rho1", ratmap},
                  {"cond",
                   {{"type", "array"},
                    {"items", {{"type", "object"}, {"additionalProperties", ratmap}}}}}}}};
    m["fd-rule"] = m["choice-rule"];
    m["model-spec"] = {{"type", "object"},
                       {"required", {"model", "n"}},
                       {"properties",
                        {{"model", {{"enum", {"luce", "habit-submodel", "habit-full"}}}},
                         {"n", {{"type", "integer"}, {"minimum", 1}}}}}};
    const json num = {{"type", "number"}};
    m["probe-config"] = {
        {"type", "object"},
        {"properties",
         {{"grid",
           {{"type", "array"},
            {"items",
             {{"type", "object"},
              {"properties", {{"lo", num}, {"hi", num}, {"count", {{"type", "integer"}}}}}}}}},
          {"points", {{"type", "array"}, {"items", {{"type", "array"}, {"items", num}}}}},
          {"det_tol", num},
          {"step", num},
          {"rays", {{"type", "object"}, {"properties", {{"center", {{"type", "array"}}}, {"steps", {{"type", "integer"}}}}}}},
          {"converge_tol", num},
          {"preimage_tol", num},
          {"margin", num},
          {"collision",
           {{"type", "object"},
            {"properties",
             {{"attempts", {{"type", "integer"}}},
              {"tol", num},
              {"separation", num},
              {"seed", {{"type", "integer"}}}}}}}}}};
    return m;
  }();
  return s;
}

}  // namespace

json schema(const std::string& name) {
  auto it = schemas().find(name);
  if (it == schemas().end()) throw InvalidInput("unknown schema \"" + name + "\"");
  json out = it->second;
  out["title"] = name;
  return out;
}

std::vector<std::string> schema_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : schemas()) out.push_back(k);
  return out;
}

}  // namespace rumid::json_io
