#include "rumid/cli.hpp"

#include "rumid/error.hpp"
#include "rumid/extmodels.hpp"
#include "rumid/idset.hpp"
#include "rumid/json_io.hpp"
#include "rumid/ordered.hpp"
#include "rumid/param.hpp"
#include "rumid/rum_graph.hpp"
#include "rumid/ryser.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace rumid::cli {

namespace {

using json_io::json;

struct Context {
  std::vector<std::string> files;
  std::optional<std::uint64_t> cap;
  std::string method = "ryser";

  std::size_t universe_cap() const { return cap ? static_cast<std::size_t>(*cap) : kDefaultUniverseCap; }
  std::uint64_t path_cap() const { return cap ? *cap : kDefaultPathCap; }
  std::uint64_t extension_cap() const { return cap ? *cap : 5000; }
  std::size_t extreme_cap() const { return cap ? static_cast<std::size_t>(*cap) : kDefaultExtremeCap; }

  json load(std::size_t i) const {
    if (i >= files.size()) throw InvalidInput("expected " + std::to_string(i + 1) + " input file(s)");
    const std::string& path = files[i];
    std::string text;
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(path);
      if (!in) throw InvalidInput("cannot read \"" + path + "\"");
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InvalidInput("\"" + path + "\" is not valid JSON: " + e.what());
    }
  }
};

struct Command {
  std::string summary;
  std::size_t min_files, max_files;
  std::function<json(const Context&)> body;
};

ChoiceRule rum_rule(const Universe& u, const json& doc) {
  ChoiceRule rho = json_io::choice_rule(u, doc.at("probabilities"));
  check_choice_rule(u, rho, u.menus());
  return rho;
}

std::vector<Preference> support_or_all(const Universe& u, const json& doc) {
  if (doc.contains("support")) return json_io::preference_list(u, doc["support"]);
  return u.preferences();
}

void same_universe(const Universe& a, const Universe& b) {
  if (!(a == b)) throw InvalidInput("inputs use different alternatives");
}

json negative_doc(const Universe& u, const std::vector<NegativeEdge>& neg) {
  json out = json::array();
  for (const auto& n : neg)
    out.push_back({{"menu", u.menu_key(n.menu)}, {"alternative", u.label(n.alt)}, {"value", json_io::to_json(n.value)}});
  return out;
}

json flow_view(const Dag& g, const QuasiFlow& f) {
  return {{"graph", json_io::dag_doc(g)}, {"flow", json_io::quasiflow_doc(g, f)}};
}

// Functional over paths given as {key: weight}; unknown keys are malformed.
std::vector<Rational> path_functional(const std::vector<std::string>& keys, const json& doc) {
  if (!doc.is_object()) throw InvalidInput("functional must be an object");
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < keys.size(); ++i) idx[keys[i]] = i;
  std::vector<Rational> out(keys.size(), Rational(0));
  for (const auto& [k, v] : doc.items()) {
    auto it = idx.find(k);
    if (it == idx.end()) throw InvalidInput("functional names \"" + k + "\", which is not an admissible path");
    out[it->second] = json_io::rational(v, "functional." + k);
  }
  return out;
}

json path_bounds_doc(const PathBounds& b, const std::function<std::string(const Path&)>& key, json header) {
  auto mass = [&](const PathDecomposition& pi) {
    json m = json::object();
    for (const auto& [p, w] : pi)
      if (!w.is_zero()) m[key(p)] = json_io::to_json(w);
    return m;
  };
  header["min"] = json_io::to_json(b.min);
  header["max"] = json_io::to_json(b.max);
  header["argmin"] = mass(b.argmin);
  header["argmax"] = mass(b.argmax);
  return header;
}

// ---------------------------------------------------------------------------
// param-check

param::VectorXd vec(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of numbers");
  param::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidInput(std::string(what) + " must be an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json vec_doc(const param::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

double num(const json& cfg, const char* name, double fallback) {
  if (!cfg.contains(name)) return fallback;
  if (!cfg[name].is_number()) throw InvalidInput(std::string(name) + " must be a number");
  return cfg[name].get<double>();
}

json param_check(const Context& ctx) {
  const json spec = ctx.load(0);
  const json cfg = ctx.files.size() > 1 ? ctx.load(1) : json::object();
  if (!cfg.is_object()) throw InvalidInput("probe config must be an object");
  if (!spec.is_object() || !spec.contains("model") || !spec["model"].is_string())
    throw InvalidInput("model spec needs a \"model\" name");
  const int n = spec.contains("n") ? spec["n"].get<int>() : 1;
  const param::ParametricModel m = param::builtin(spec["model"].get<std::string>(), n);

  const double det_tol = num(cfg, "det_tol", 1e-10);
  const double step = num(cfg, "step", 1e-6);

  std::vector<param::GridAxis> grid;
  param::LocalReport local;
  if (cfg.contains("points")) {
    std::vector<param::VectorXd> pts;
    for (const auto& p : cfg["points"]) {
      pts.push_back(vec(p, "points"));
      if (pts.back().size() != m.dim) throw InvalidInput("probe point has the wrong dimension");
      if (!m.inside(pts.back())) throw InvalidInput("probe point lies outside the parameter box");
    }
    local = param::check_local(m, pts, det_tol, step);
  } else {
    if (cfg.contains("grid")) {
      for (const auto& a : cfg["grid"]) grid.push_back({num(a, "lo", 0), num(a, "hi", 0), a.value("count", 1)});
      if (static_cast<int>(grid.size()) != m.dim) throw InvalidInput("grid needs one axis per parameter");
    } else {
      for (int i = 0; i < m.dim; ++i) {
        const double lo = std::isfinite(m.lower(i)) ? m.lower(i) + 0.25 : -2.0;
        const double hi = std::isfinite(m.upper(i)) ? m.upper(i) - 0.25 : lo + 3.0;
        grid.push_back({lo, hi, 4});
      }
    }
    local = param::check_local(m, grid, det_tol, step);
  }

  param::VectorXd center(m.dim);
  if (cfg.contains("rays") && cfg["rays"].contains("center")) {
    center = vec(cfg["rays"]["center"], "rays.center");
    if (center.size() != m.dim || !m.inside(center)) throw InvalidInput("ray center must be an interior point");
  } else if (!local.points.empty()) {
    center = local.points[local.points.size() / 2].theta;
  }
  const int steps = cfg.contains("rays") ? cfg["rays"].value("steps", 40) : 40;
  param::ProperOptions popt;
  popt.converge_tol = num(cfg, "converge_tol", popt.converge_tol);
  popt.preimage_tol = num(cfg, "preimage_tol", popt.preimage_tol);
  popt.margin = num(cfg, "margin", popt.margin);
  popt.restarts = cfg.value("restarts", popt.restarts);
  popt.seed = cfg.value("seed", popt.seed);
  const param::ProperReport proper = param::properness_probe(m, param::coordinate_rays(m, center, steps), popt);

  json report;
  report["model"] = m.name;
  report["dim"] = m.dim;
  report["tolerances"] = {{"det_tol", det_tol},
                          {"step", step},
                          {"converge_tol", popt.converge_tol},
                          {"preimage_tol", popt.preimage_tol},
                          {"margin", popt.margin}};
  json witnesses = json::array();
  for (const auto& w : local.witnesses) witnesses.push_back(vec_doc(w));
  report["local"] = {{"points", local.points.size()}, {"min_abs_det", local.min_abs_det}, {"witnesses", witnesses}};
  json trajs = json::array();
  for (const auto& t : proper.trajectories) {
    json tj = {{"label", t.label}, {"behavior", param::to_string(t.behavior)}};
    if (t.limit) tj["limit"] = vec_doc(*t.limit);
    if (t.preimage) {
      tj["preimage"] = vec_doc(*t.preimage);
      tj["preimage_residual"] = t.preimage_residual;
    }
    trajs.push_back(tj);
  }
  report["properness"] = {{"violation", proper.violation}, {"trajectories", trajs}};
  report["verdict"] = param::to_string(param::verdict_of(local, proper));

  if (cfg.contains("collision")) {
    const json& c = cfg["collision"];
    param::CollisionOptions copt;
    if (c.is_object()) {
      copt.attempts = c.value("attempts", copt.attempts);
      copt.tol = num(c, "tol", copt.tol);
      copt.separation = num(c, "separation", copt.separation);
      copt.seed = c.value("seed", copt.seed);
    }
    json cj = {{"attempts", copt.attempts}, {"tol", copt.tol}, {"separation", copt.separation}};
    if (auto hit = param::collision_search(m, copt)) {
      cj["found"] = true;
      cj["theta"] = vec_doc(hit->theta);
      cj["theta_prime"] = vec_doc(hit->theta_prime);
      cj["max_gap"] = hit->max_gap;
      cj["residual"] = hit->residual;
    } else {
      cj["found"] = false;
    }
    report["collision"] = cj;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::map<std::string, Command> commands() {
  std::map<std::string, Command> c;

  c["rationalize"] = {"choice rule -> rationalizable flag, witness distribution, negative edges", 1, 1,
                      [](const Context& ctx) {
                        const json doc = ctx.load(0);
                        const Universe u = json_io::universe(doc, ctx.universe_cap());
                        const ChoiceRule rho = rum_rule(u, doc);
                        const Rationalization r = is_rationalizable(RumGraph(u), rho);
                        return json{{"rationalizable", r.rationalizable},
                                    {"witness", r.rationalizable ? json_io::distribution_doc(u, r.witness) : json()},
                                    {"negative", negative_doc(u, r.negative)}};
                      }};

  c["phi"] = {"distribution -> choice rule", 1, 1, [](const Context& ctx) {
                auto [u, mu] = json_io::distribution(ctx.load(0), ctx.universe_cap());
                return json_io::choice_rule_doc(u, phi(u, mu));
              }};

  c["bm"] = {"choice rule -> alternating-sum flow on every (menu, alternative) edge", 1, 1, [](const Context& ctx) {
               const json doc = ctx.load(0);
               const Universe u = json_io::universe(doc, ctx.universe_cap());
               const ChoiceRule rho = json_io::choice_rule(u, doc.at("probabilities"));
               const RumGraph g(u);
               const QuasiFlow f = bm_flow(g, rho);
               json flows = json::object();
               for (int e = 0; e < g.dag().edge_count(); ++e)
                 flows[u.menu_key(g.menu_of(e))][u.label(g.alt_of(e))] = json_io::to_json(f(e));
               return json{{"alternatives", json_io::alternatives(u)}, {"flows", flows}};
             }};

  c["equiv"] = {"two distributions -> observational equivalence", 2, 2, [](const Context& ctx) {
                  auto [u, mu] = json_io::distribution(ctx.load(0), ctx.universe_cap());
                  auto [v, nu] = json_io::distribution(ctx.load(1), ctx.universe_cap());
                  same_universe(u, v);
                  return json{{"equivalent", obs_equiv(u, mu, nu)}};
                }};

  c["ryser-basis"] = {"{\"alternatives\": [...]} -> dimension and a basis of swaps", 1, 1, [](const Context& ctx) {
                        const Universe u = json_io::universe(ctx.load(0), ctx.universe_cap());
                        const RyserSpace r(u, ctx.cap.has_value());
                        json basis = json::array();
                        for (const auto& s : r.basis()) basis.push_back(json_io::swap_doc(u, s));
                        return json{{"alternatives", json_io::alternatives(u)},
                                    {"dimension", r.dimension()},
                                    {"basis", basis}};
                      }};

  c["bounds"] = {"bounds query -> exact min/max of the functional and optimizers", 1, 1, [](const Context& ctx) {
                   auto [u, q] = json_io::bounds_query(ctx.load(0), ctx.universe_cap());
                   BoundsMethod method;
                   if (ctx.method == "ryser") method = BoundsMethod::ryser;
                   else if (ctx.method == "simplex") method = BoundsMethod::simplex;
                   else throw InvalidInput("unknown method \"" + ctx.method + "\"");
                   if (method == BoundsMethod::ryser) return json_io::bounds_doc(u, bounds(RyserSpace(u, ctx.cap.has_value()), q));
                   return json_io::bounds_doc(u, bounds(u, q, method));
                 }};

  c["extreme"] = {"distribution (optional \"support\") -> extreme-point flag", 1, 1, [](const Context& ctx) {
                    const json doc = ctx.load(0);
                    auto [u, mu] = json_io::distribution(doc, ctx.universe_cap());
                    check_distribution(u, mu);
                    return json{{"extreme", is_extreme(RumGraph(u), mu, support_or_all(u, doc))}};
                  }};

  c["extreme-points"] = {"choice rule (optional \"support\") -> every vertex of the identified set", 1, 1,
                         [](const Context& ctx) {
                           const json doc = ctx.load(0);
                           const Universe u = json_io::universe(doc, ctx.universe_cap());
                           const ChoiceRule rho = rum_rule(u, doc);
                           json pts = json::array();
                           for (const auto& mu : extreme_points(RumGraph(u), rho, support_or_all(u, doc), ctx.extreme_cap()))
                             pts.push_back(json_io::mass_object(u, mu));
                           return json{{"alternatives", json_io::alternatives(u)}, {"points", pts}};
                         }};

  c["support-id"] = {"{\"alternatives\", \"support\"} -> identifying flag", 1, 1, [](const Context& ctx) {
                       const json doc = ctx.load(0);
                       const Universe u = json_io::universe(doc, ctx.universe_cap());
                       if (!doc.contains("support")) throw InvalidInput("missing field \"support\"");
                       return json{{"identifying", is_identifying_support(RumGraph(u), support_or_all(u, doc))}};
                     }};

  c["swap-progressive"] = {"choice rule, order -> the swap-progressive rationalization", 2, 2, [](const Context& ctx) {
                             const json doc = ctx.load(0);
                             const Universe u = json_io::universe(doc, ctx.universe_cap());
                             const ChoiceRule rho = rum_rule(u, doc);
                             const AltOrder o = json_io::order(u, ctx.load(1));
                             return json_io::distribution_doc(u, swap_progressive(RumGraph(u), rho, o));
                           }};

  c["param-check"] = {"model spec [probe config] -> numerical identification report", 1, 2, param_check};

  // random choice on a menu collection -------------------------------------

  c["rc-phi"] = {"rc measure -> rc choice rule", 1, 1, [](const Context& ctx) {
                   const json doc = ctx.load(0);
                   const Universe u = json_io::universe(doc, ctx.universe_cap());
                   const RcGraph g(u, json_io::menu_list(u, doc.at("menus")));
                   return json_io::rc_rule_doc(u, g.sigma(), rc_phi(g, json_io::rc_measure(g, doc.at("mass"))));
                 }};

  c["rc-equiv"] = {"two rc measures -> observational equivalence", 2, 2, [](const Context& ctx) {
                     const json a = ctx.load(0), b = ctx.load(1);
                     const Universe u = json_io::universe(a, ctx.universe_cap());
                     same_universe(u, json_io::universe(b, ctx.universe_cap()));
                     const MenuCollection sa = json_io::menu_list(u, a.at("menus"));
                     if (sa != json_io::menu_list(u, b.at("menus"))) throw InvalidInput("inputs use different menus");
                     const RcGraph g(u, sa);
                     return json{{"equivalent", rc_obs_equiv(g, json_io::rc_measure(g, a.at("mass")),
                                                             json_io::rc_measure(g, b.at("mass")))}};
                   }};

  c["rc-flow"] = {"rc choice rule -> chain graph and its flow", 1, 1, [](const Context& ctx) {
                    const auto d = json_io::rc_rule(ctx.load(0), ctx.universe_cap());
                    const RcGraph g(d.u, d.sigma);
                    return flow_view(g.dag(), rc_flow(g, d.rho));
                  }};

  c["rc-bounds"] = {"{\"rule\", \"functional\", \"support\"?} -> bounds over choice-function distributions", 1, 1,
                    [](const Context& ctx) {
                      const json doc = ctx.load(0);
                      const auto d = json_io::rc_rule(doc.at("rule"), ctx.universe_cap());
                      const RcGraph g(d.u, d.sigma);
                      std::vector<Path> paths;
                      if (!doc.contains("support")) {
                        paths = enumerate_paths(g.dag(), ctx.path_cap());
                      } else if (doc["support"] == "rational") {
                        std::set<Path> uniq;
                        for (const auto& p : d.u.preferences()) uniq.insert(rc_path(g, rational_choice(g, p)));
                        paths.assign(uniq.begin(), uniq.end());
                      } else {
                        for (const auto& k : doc["support"]) paths.push_back(rc_path(g, d.u.parse_sequence(k.get<std::string>())));
                      }
                      auto key = [&](const Path& p) { return d.u.key(rc_function(g, p)); };
                      std::vector<std::string> keys;
                      for (const auto& p : paths) keys.push_back(key(p));
                      const PathBounds b = path_bounds(g.dag(), rc_flow(g, d.rho), paths, path_functional(keys, doc.at("functional")));
                      return path_bounds_doc(b, key, {{"alternatives", json_io::alternatives(d.u)}});
                    }};

  c["rc-swap-progressive"] = {"rc choice rule, order -> swap-progressive choice-function distribution", 2, 2,
                              [](const Context& ctx) {
                                const auto d = json_io::rc_rule(ctx.load(0), ctx.universe_cap());
                                const RcGraph g(d.u, d.sigma);
                                const AltOrder o = json_io::order(d.u, ctx.load(1));
                                return json_io::rc_measure_doc(g, rc_swap_progressive(g, d.rho, o));
                              }};

  // dynamic discrete choice -------------------------------------------------

  c["ddc-phi"] = {"sequence measure -> first-period and conditional choice probabilities", 1, 1, [](const Context& ctx) {
                    const json doc = ctx.load(0);
                    const Universe u = json_io::universe(doc, ctx.universe_cap());
                    const int horizon = doc.at("T").get<int>();
                    return json_io::ddc_doc(u, ddc_phi(u, horizon, json_io::ddc_measure(u, horizon, doc.at("mass"))));
                  }};

  c["ddc-equiv"] = {"two sequence measures -> observational equivalence", 2, 2, [](const Context& ctx) {
                      const json a = ctx.load(0), b = ctx.load(1);
                      const Universe u = json_io::universe(a, ctx.universe_cap());
                      same_universe(u, json_io::universe(b, ctx.universe_cap()));
                      const int horizon = a.at("T").get<int>();
                      if (b.at("T").get<int>() != horizon) throw InvalidInput("inputs use different horizons");
                      return json{{"equivalent", ddc_obs_equiv(u, horizon, json_io::ddc_measure(u, horizon, a.at("mass")),
                                                               json_io::ddc_measure(u, horizon, b.at("mass")))}};
                    }};

  c["ddc-flow"] = {"dynamic choice data -> period graph and its flow", 1, 1, [](const Context& ctx) {
                     auto [u, d] = json_io::ddc(ctx.load(0), ctx.universe_cap());
                     const DdcGraph g(u, d.horizon);
                     return flow_view(g.dag(), ddc_flow(g, d));
                   }};

  c["ddc-bounds"] = {"{\"data\", \"functional\"} -> bounds over sequence distributions", 1, 1, [](const Context& ctx) {
                       const json doc = ctx.load(0);
                       auto [u, d] = json_io::ddc(doc.at("data"), ctx.universe_cap());
                       const DdcGraph g(u, d.horizon);
                       const auto paths = enumerate_paths(g.dag(), ctx.path_cap());
                       auto key = [&, &u = u](const Path& p) { return u.key(ddc_sequence(g, p)); };
                       std::vector<std::string> keys;
                       for (const auto& p : paths) keys.push_back(key(p));
                       const PathBounds b = path_bounds(g.dag(), ddc_flow(g, d), paths, path_functional(keys, doc.at("functional")));
                       return path_bounds_doc(b, key, {{"alternatives", json_io::alternatives(u)}, {"T", d.horizon}});
                     }};

  // frame-dependent choice --------------------------------------------------

  c["fd-phi"] = {"truncated-preference measure -> choice rule over recommended sets", 1, 1, [](const Context& ctx) {
                   const json doc = ctx.load(0);
                   const Universe u = json_io::universe(doc, ctx.universe_cap());
                   return json_io::fd_rule_doc(u, fd_phi(u, json_io::fd_measure(u, doc.at("mass"))));
                 }};

  c["fd-equiv"] = {"two truncated-preference measures -> observational equivalence", 2, 2, [](const Context& ctx) {
                     const json a = ctx.load(0), b = ctx.load(1);
                     const Universe u = json_io::universe(a, ctx.universe_cap());
                     same_universe(u, json_io::universe(b, ctx.universe_cap()));
                     return json{{"equivalent", fd_obs_equiv(u, json_io::fd_measure(u, a.at("mass")),
                                                             json_io::fd_measure(u, b.at("mass")))}};
                   }};

  c["fd-bounds"] = {"{\"base\": fd measure, \"functional\"} -> bounds over equivalent measures", 1, 1,
                    [](const Context& ctx) {
                      const json doc = ctx.load(0);
                      const json& base = doc.at("base");
                      const Universe u = json_io::universe(base, ctx.universe_cap());
                      const FdMeasure mu = json_io::fd_measure(u, base.at("mass"));
                      Rational total = 0;
                      for (const auto& [p, w] : mu) {
                        if (w < 0) throw InvalidInput("base measure has negative mass");
                        total += w;
                      }
                      if (total != 1) throw InvalidInput("base measure sums to " + format_rational(total));
                      const FdModel model(u);
                      PathDecomposition pi;
                      for (const auto& [p, w] : mu) pi[model.path_of(p)] += w;
                      std::vector<Path> paths;
                      for (const auto& p : model.preferences()) paths.push_back(model.path_of(p));
                      auto key = [&](const Path& p) { return fd_key(u, model.preference_of(p)); };
                      std::vector<std::string> keys;
                      for (const auto& p : paths) keys.push_back(key(p));
                      const PathBounds b = path_bounds(model.dag(), recompose(model.dag(), pi), paths,
                                                       path_functional(keys, doc.at("functional")));
                      return path_bounds_doc(b, key, {{"alternatives", json_io::alternatives(u)}});
                    }};

  return c;
}

json error_doc(const char* reason, const std::string& message) {
  return {{"error", {{"reason", reason}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto table = commands();
  CLI::App app{"Identified sets of stochastic choice models", "rumid"};
  app.require_subcommand(0, 1);
  std::optional<std::string> schema;
  std::optional<std::uint64_t> cap;
  app.add_option("--schema", schema, "Print the JSON schema with this name and exit");
  app.add_option("--cap", cap, "Override size guards (universe size, path counts); logged as a warning");

  Context ctx;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, cmd] : table) {
    CLI::App* s = app.add_subcommand(name, cmd.summary);
    s->add_option("files", ctx.files, "Input JSON files (\"-\" reads stdin)")
        ->expected(static_cast<int>(cmd.min_files), static_cast<int>(cmd.max_files));
    if (name == "bounds") s->add_option("--method", ctx.method, "ryser (default) or simplex");
    subs[name] = s;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << error_doc("usage", e.what()).dump(2) << '\n';
    return kExitMalformed;
  }

  try {
    if (schema) {
      out << json_io::schema(*schema).dump(2) << '\n';
      return kExitOk;
    }
    const CLI::App* chosen = nullptr;
    std::string name;
    for (const auto& [n, s] : subs)
      if (s->parsed()) {
        chosen = s;
        name = n;
      }
    if (!chosen) {
      err << app.help();
      out << error_doc("usage", "no subcommand given").dump(2) << '\n';
      return kExitMalformed;
    }
    ctx.cap = cap;
    if (cap) err << "warning: size guards overridden with --cap " << *cap << '\n';
    const Command& cmd = table.at(name);
    if (ctx.files.size() < cmd.min_files) throw InvalidInput(name + " needs " + std::to_string(cmd.min_files) + " input file(s)");
    out << cmd.body(ctx).dump(2) << '\n';
    return kExitOk;
  } catch (const InvalidInput& e) {
    out << error_doc(e.reason(), e.what()).dump(2) << '\n';
    return kExitMalformed;
  } catch (const Error& e) {
    out << error_doc(e.reason(), e.what()).dump(2) << '\n';
    return kExitDomain;
  } catch (const json::exception& e) {
    out << error_doc("invalid-input", e.what()).dump(2) << '\n';
    return kExitMalformed;
  }
}

}  // namespace rumid::cli
