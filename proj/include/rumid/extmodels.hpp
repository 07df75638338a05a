#pragma once

#include "rumid/choice.hpp"
#include "rumid/dag.hpp"
#include "rumid/linalg.hpp"
#include "rumid/ordered.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace rumid {

// ---------------------------------------------------------------------------
// Random choice on an ordered menu collection.

using MenuCollection = std::vector<Menu>;
/// Chosen alternative per menu of the collection.
using ChoiceFunction = std::vector<int>;
using ChoiceMeasure = std::map<ChoiceFunction, Rational>;

/// Chain graph: layer i carries one parallel edge per member of menu i.
class RcGraph {
 public:
  RcGraph(Universe u, MenuCollection sigma);

  const Universe& universe() const { return u_; }
  const MenuCollection& sigma() const { return sigma_; }
  const Dag& dag() const { return dag_; }
  int layers() const { return static_cast<int>(sigma_.size()); }
  int edge_of(int layer, int x) const;
  int layer_of(int edge) const { return layer_[static_cast<std::size_t>(edge)]; }
  int alt_of(int edge) const { return alt_[static_cast<std::size_t>(edge)]; }

 private:
  Universe u_;
  MenuCollection sigma_;
  std::vector<int> layer_, alt_;
  std::map<std::pair<int, int>, int> lookup_;
  Dag dag_;  // last: built by filling the tables above
};

RcGraph build_rc_graph(const Universe& u, const MenuCollection& sigma);

Path rc_path(const RcGraph& g, const ChoiceFunction& c);
ChoiceFunction rc_function(const RcGraph& g, const Path& p);
/// Choice function induced by maximizing a preference on every menu.
ChoiceFunction rational_choice(const RcGraph& g, const Preference& p);
/// The preference inducing c, if c is rational and unique (full collections).
std::optional<Preference> rc_preference(const RcGraph& g, const ChoiceFunction& c);

/// f(e) = rho(x, A_i); the rule must cover every menu of the collection.
QuasiFlow rc_flow(const RcGraph& g, const ChoiceRule& rho);
ChoiceRule rc_phi(const RcGraph& g, const ChoiceMeasure& mu);
bool rc_obs_equiv(const RcGraph& g, const ChoiceMeasure& mu, const ChoiceMeasure& nu);

struct RcSwap {
  ChoiceFunction minus1, minus2, plus1, plus2;
  int layer = 0;
};

/// Exchanges of a single menu's choice between two functions, nonzero and
/// deduplicated up to sign. Pairs come from `support` when given, else from
/// every choice function (refused above `cap` functions).
std::vector<RcSwap> rc_swaps(const RcGraph& g, const std::optional<std::vector<ChoiceFunction>>& support = std::nullopt,
                             std::uint64_t cap = 5000);
bool rc_in_span(const RcGraph& g, const ChoiceMeasure& m, std::uint64_t cap = 5000);

/// Lift of an alternative order to the chain graph (layer breaks ties).
EdgeOrder rc_lift_order(const RcGraph& g, const AltOrder& o);
ChoiceMeasure rc_swap_progressive(const RcGraph& g, const ChoiceRule& rho, const AltOrder& o);

// ---------------------------------------------------------------------------
// Markovian dynamic discrete choice with a fixed menu.

struct DdcData {
  int horizon = 1;
  std::vector<Rational> rho1;   // first-period choice probabilities
  std::vector<RatMatrix> cond;  // cond[t-2](x, y) = rho_t(y | x), t = 2..T
};

void check_ddc(const Universe& u, const DdcData& d);

/// Choice sequence x_1..x_T.
using ChoiceSequence = std::vector<int>;
using SequenceMeasure = std::map<ChoiceSequence, Rational>;

/// Optional menu-evolution hook: the menu available at period t given the
/// previous choice. Only the fixed-menu case (no hook) is exercised.
using MenuEvolution = std::function<Menu(int t, int previous)>;

class DdcGraph {
 public:
  DdcGraph(Universe u, int horizon, MenuEvolution evolution = nullptr);

  const Universe& universe() const { return u_; }
  int horizon() const { return horizon_; }
  const Dag& dag() const { return dag_; }
  int node(int t, int x) const { return 1 + (t - 1) * u_.size() + x; }
  int source_edge(int x) const;
  int step_edge(int t, int x, int y) const;  // (t-1, x) -> (t, y)
  int sink_edge(int x) const;

 private:
  Universe u_;
  int horizon_;
  Dag dag_;
  std::map<std::tuple<int, int, int>, int> lookup_;  // (t, x, y); t = 1 for source, T+1 for sink
};

DdcGraph build_ddc_graph(const Universe& u, int horizon);
QuasiFlow ddc_flow(const DdcGraph& g, const DdcData& d);
Path ddc_path(const DdcGraph& g, const ChoiceSequence& s);
ChoiceSequence ddc_sequence(const DdcGraph& g, const Path& p);
/// Observable data generated by a distribution over choice sequences.
DdcData ddc_phi(const Universe& u, int horizon, const SequenceMeasure& mu);
bool ddc_obs_equiv(const Universe& u, int horizon, const SequenceMeasure& mu, const SequenceMeasure& nu);

struct DdcSwap {
  ChoiceSequence minus1, minus2, plus1, plus2;
  int t = 0;  // the pair shares its choice at t-1; the first t-1 choices are exchanged
};

std::vector<DdcSwap> ddc_swaps(const Universe& u, int horizon, std::uint64_t cap = 5000);
bool ddc_in_span(const Universe& u, int horizon, const SequenceMeasure& m, std::uint64_t cap = 5000);

// ---------------------------------------------------------------------------
// Frame-dependent choice with two frames.

/// Distinct framed alternatives in order, then the non-framed copy of an
/// alternative already listed.
struct TruncatedPreference {
  std::vector<int> framed;
  int last = 0;

  auto operator<=>(const TruncatedPreference&) const = default;
};

using FdMeasure = std::map<TruncatedPreference, Rational>;
/// probs[A][x] for every recommendation set A (including the empty one).
using FdRule = std::map<Menu, std::vector<Rational>>;

std::string fd_key(const Universe& u, const TruncatedPreference& p);
TruncatedPreference parse_fd_key(const Universe& u, const std::string& key);
bool is_truncated_preference(const Universe& u, const TruncatedPreference& p);

class FdModel {
 public:
  explicit FdModel(Universe u);

  const Universe& universe() const { return u_; }
  const Dag& dag() const { return dag_; }
  const std::vector<TruncatedPreference>& preferences() const { return prefs_; }
  Path path_of(const TruncatedPreference& p) const;
  TruncatedPreference preference_of(const Path& p) const;

 private:
  Universe u_;
  Dag dag_;
  std::vector<TruncatedPreference> prefs_;
  std::map<std::pair<int, int>, int> lookup_;  // (mask node, framed x) -> edge, and (mask, n + x) for exits
};

FdModel build_fd_model(const Universe& u);

/// Alternative chosen when the recommended set is A.
int fd_choice(const TruncatedPreference& p, Menu recommended);
FdRule fd_phi(const Universe& u, const FdMeasure& mu);
bool fd_obs_equiv(const Universe& u, const FdMeasure& mu, const FdMeasure& nu);

struct FdSwap {
  TruncatedPreference minus1, minus2, plus1, plus2;
  int k = 0;
};

std::vector<FdSwap> fd_swaps(const Universe& u);
bool fd_in_span(const FdModel& model, const FdMeasure& m);

}  // namespace rumid
