#pragma once

#include "rumid/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rumid {

inline constexpr std::uint64_t kDefaultPathCap = 100000;

struct Edge {
  long id = 0;
  int tail = 0;
  int head = 0;
};

/// Acyclic multigraph with a unique source and a unique sink. Edges are
/// stored sorted by id; everything else in the library refers to edges by
/// their position in that order.
class Dag {
 public:
  Dag(std::vector<std::string> nodes, std::vector<Edge> edges);

  int node_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& label(int node) const { return labels_[static_cast<std::size_t>(node)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_index(long id) const;
  int node_index(const std::string& label) const;
  const std::vector<int>& out_edges(int node) const { return out_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& in_edges(int node) const { return in_[static_cast<std::size_t>(node)]; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  /// Nodes ordered by longest distance from the source, ties by label.
  const std::vector<int>& topo_order() const { return topo_; }

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_, in_;
  std::map<long, int> by_id_;
  std::map<std::string, int> by_label_;
  int source_ = -1;
  int sink_ = -1;
  std::vector<int> topo_;
};

/// Edge masses indexed by edge position.
using QuasiFlow = RatVector;
/// Edge positions from source to sink.
using Path = std::vector<int>;
using PathDecomposition = std::map<Path, Rational>;

std::vector<int> topo_enumerate(const Dag& g);

struct FlowViolation {
  enum class Kind { size, negative, conservation, source_outflow };
  Kind kind;
  int node = -1;  // offending node (conservation, source outflow)
  int edge = -1;  // offending edge (negative mass)
  Rational amount;  // negative mass, or inflow minus outflow, or source outflow
  std::string message;
};

const char* to_string(FlowViolation::Kind k);

/// Nonnegativity and exact conservation at interior nodes; with
/// `unit_source` also requires source outflow 1. Reports the first
/// offender in topological order.
std::optional<FlowViolation> validate_quasiflow(const Dag& g, const QuasiFlow& f, bool unit_source = false);

/// Repeatedly follows, from the source, the highest-priority edge with
/// positive residual and removes the path bottleneck. `priority[e]` smaller
/// is preferred; by default the edge position (least id).
PathDecomposition decompose_greedy(const Dag& g, const QuasiFlow& f);
PathDecomposition decompose_by_priority(const Dag& g, const QuasiFlow& f, const std::vector<int>& priority);
/// Same as decompose_by_priority, also returning the paths in discovery order.
std::vector<std::pair<Path, Rational>> decompose_sequence(const Dag& g, const QuasiFlow& f,
                                                          const std::vector<int>& priority);

QuasiFlow recompose(const Dag& g, const PathDecomposition& pi);

bool is_path(const Dag& g, const Path& p);
void check_path(const Dag& g, const Path& p);
/// Nodes visited by p, source first.
std::vector<int> path_nodes(const Dag& g, const Path& p);
/// Number of edges of p traversed before reaching `node`, or -1.
int depth_of(const Dag& g, const Path& p, int node);

/// Follow p1 until `node`, then p2; and the reverse.
std::pair<Path, Path> path_conjugates(const Dag& g, const Path& p1, const Path& p2, int node);

/// Path count, saturating at UINT64_MAX.
std::uint64_t count_paths(const Dag& g);
/// All source-sink paths in lexicographic edge order; refuses more than cap.
std::vector<Path> enumerate_paths(const Dag& g, std::uint64_t cap = kDefaultPathCap);

/// Edge-indicator vector of a path.
RatVector indicator(const Dag& g, const Path& p);

}  // namespace rumid
