#include "rumid/dag.hpp"

#include "rumid/error.hpp"

#include <algorithm>
#include <limits>

namespace rumid {

namespace {

// Returns one directed cycle among the nodes Kahn's algorithm could not
// remove, as a list of labels.
std::string describe_cycle(const std::vector<std::string>& labels, const std::vector<Edge>& edges,
                           const std::vector<int>& indeg) {
  const auto n = labels.size();
  std::vector<int> next(n, -1);
  for (const auto& e : edges)
    if (indeg[static_cast<std::size_t>(e.tail)] > 0 && indeg[static_cast<std::size_t>(e.head)] > 0 &&
        next[static_cast<std::size_t>(e.tail)] < 0)
      next[static_cast<std::size_t>(e.tail)] = e.head;
  int start = -1;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] > 0 && next[i] >= 0) {
      start = static_cast<int>(i);
      break;
    }
  if (start < 0) return "cycle";
  // walk until a repeat, then print the loop
  std::vector<int> seen(n, -1);
  int v = start;
  for (int step = 0; seen[static_cast<std::size_t>(v)] < 0; ++step) {
    seen[static_cast<std::size_t>(v)] = step;
    v = next[static_cast<std::size_t>(v)];
    if (v < 0) return "cycle";
  }
  std::string out = labels[static_cast<std::size_t>(v)];
  for (int w = next[static_cast<std::size_t>(v)];; w = next[static_cast<std::size_t>(w)]) {
    out += " -> " + labels[static_cast<std::size_t>(w)];
    if (w == v) break;
  }
  return out;
}

}  // namespace

Dag::Dag(std::vector<std::string> nodes, std::vector<Edge> edges)
    : labels_(std::move(nodes)), edges_(std::move(edges)) {
  const int n = static_cast<int>(labels_.size());
  if (n < 2) throw InvalidInput("a DAG needs at least a source and a sink");
  for (int i = 0; i < n; ++i)
    if (!by_label_.emplace(labels_[static_cast<std::size_t>(i)], i).second)
      throw InvalidInput("duplicate node label \"" + labels_[static_cast<std::size_t>(i)] + "\"");
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  out_.assign(static_cast<std::size_t>(n), {});
  in_.assign(static_cast<std::size_t>(n), {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (!by_id_.emplace(ed.id, e).second) throw InvalidInput("duplicate edge id " + std::to_string(ed.id));
    if (ed.tail < 0 || ed.tail >= n || ed.head < 0 || ed.head >= n)
      throw InvalidInput("edge " + std::to_string(ed.id) + " has an unknown endpoint");
    if (ed.tail == ed.head) throw InvalidInput("edge " + std::to_string(ed.id) + " is a self-loop");
    out_[static_cast<std::size_t>(ed.tail)].push_back(e);
    in_[static_cast<std::size_t>(ed.head)].push_back(e);
  }

  std::vector<int> indeg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) indeg[static_cast<std::size_t>(v)] = static_cast<int>(in_[static_cast<std::size_t>(v)].size());
  std::vector<int> order, queue;
  for (int v = 0; v < n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    order.push_back(v);
    for (int e : out_[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].head)] == 0)
        queue.push_back(edges_[static_cast<std::size_t>(e)].head);
  }
  if (static_cast<int>(order.size()) != n)
    throw InvalidInput("graph is cyclic: " + describe_cycle(labels_, edges_, indeg));

  for (int v = 0; v < n; ++v) {
    if (in_[static_cast<std::size_t>(v)].empty()) {
      if (source_ >= 0) throw InvalidInput("more than one node without incoming edges");
      source_ = v;
    }
    if (out_[static_cast<std::size_t>(v)].empty()) {
      if (sink_ >= 0) throw InvalidInput("more than one node without outgoing edges");
      sink_ = v;
    }
  }
  if (source_ < 0 || sink_ < 0 || source_ == sink_) throw InvalidInput("graph lacks a distinct source and sink");

  std::vector<int> dist(static_cast<std::size_t>(n), 0);
  for (int v : order)
    for (int e : out_[static_cast<std::size_t>(v)]) {
      auto& d = dist[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].head)];
      d = std::max(d, dist[static_cast<std::size_t>(v)] + 1);
    }
  topo_.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) topo_[static_cast<std::size_t>(v)] = v;
  std::sort(topo_.begin(), topo_.end(), [&](int a, int b) {
    const int da = dist[static_cast<std::size_t>(a)], db = dist[static_cast<std::size_t>(b)];
    if (da != db) return da < db;
    return labels_[static_cast<std::size_t>(a)] < labels_[static_cast<std::size_t>(b)];
  });
}

int Dag::edge_index(long id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw InvalidInput("unknown edge id " + std::to_string(id));
  return it->second;
}

int Dag::node_index(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) throw InvalidInput("unknown node \"" + label + "\"");
  return it->second;
}

std::vector<int> topo_enumerate(const Dag& g) { return g.topo_order(); }

const char* to_string(FlowViolation::Kind k) {
  switch (k) {
    case FlowViolation::Kind::size: return "size";
    case FlowViolation::Kind::negative: return "negative";
    case FlowViolation::Kind::conservation: return "conservation";
    case FlowViolation::Kind::source_outflow: return "source-outflow";
  }
  return "?";
}

std::optional<FlowViolation> validate_quasiflow(const Dag& g, const QuasiFlow& f, bool unit_source) {
  if (f.size() != g.edge_count()) {
    FlowViolation v{FlowViolation::Kind::size, -1, -1, Rational(static_cast<long>(f.size())), ""};
    v.message = "flow has " + std::to_string(f.size()) + " entries for " + std::to_string(g.edge_count()) + " edges";
    return v;
  }
  for (int node : g.topo_order()) {
    for (int e : g.out_edges(node)) {
      if (f(e) < 0) {
        FlowViolation v{FlowViolation::Kind::negative, -1, e, f(e), ""};
        v.message = "negative mass " + format_rational(f(e)) + " on edge " + std::to_string(g.edge(e).id);
        return v;
      }
    }
    if (node == g.source() || node == g.sink()) continue;
    Rational in = 0, out = 0;
    for (int e : g.in_edges(node)) in += f(e);
    for (int e : g.out_edges(node)) out += f(e);
    if (in != out) {
      FlowViolation v{FlowViolation::Kind::conservation, node, -1, Rational(in - out), ""};
      v.message = "inflow " + format_rational(in) + " differs from outflow " + format_rational(out) + " at node " +
                  g.label(node);
      return v;
    }
  }
  if (unit_source) {
    Rational out = 0;
    for (int e : g.out_edges(g.source())) out += f(e);
    if (out != 1) {
      FlowViolation v{FlowViolation::Kind::source_outflow, g.source(), -1, out, ""};
      v.message = "source outflow is " + format_rational(out) + ", not 1";
      return v;
    }
  }
  return std::nullopt;
}

std::vector<std::pair<Path, Rational>> decompose_sequence(const Dag& g, const QuasiFlow& f,
                                                          const std::vector<int>& priority) {
  if (auto v = validate_quasiflow(g, f)) throw InvalidInput("not a quasi-flow: " + v->message);
  if (static_cast<int>(priority.size()) != g.edge_count()) throw InvalidInput("edge priority has the wrong length");
  QuasiFlow r = f;
  std::vector<std::pair<Path, Rational>> out;
  for (int iter = 0; iter <= g.edge_count(); ++iter) {
    Path p;
    int node = g.source();
    while (node != g.sink()) {
      int pick = -1;
      for (int e : g.out_edges(node))
        if (r(e) > 0 && (pick < 0 || priority[static_cast<std::size_t>(e)] < priority[static_cast<std::size_t>(pick)]))
          pick = e;
      if (pick < 0) break;
      p.push_back(pick);
      node = g.edge(pick).head;
    }
    if (p.empty()) return out;
    if (node != g.sink()) throw InvalidInput("residual mass is stranded at node " + g.label(node));
    Rational b = r(p.front());
    for (int e : p) b = std::min(b, r(e));
    for (int e : p) r(e) -= b;
    out.emplace_back(std::move(p), b);
  }
  throw InvalidInput("decomposition did not terminate within |E| iterations");
}

PathDecomposition decompose_by_priority(const Dag& g, const QuasiFlow& f, const std::vector<int>& priority) {
  PathDecomposition pi;
  for (auto& [p, w] : decompose_sequence(g, f, priority)) pi[p] += w;
  return pi;
}

PathDecomposition decompose_greedy(const Dag& g, const QuasiFlow& f) {
  std::vector<int> prio(static_cast<std::size_t>(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) prio[static_cast<std::size_t>(e)] = e;
  return decompose_by_priority(g, f, prio);
}

bool is_path(const Dag& g, const Path& p) {
  if (p.empty()) return false;
  int node = g.source();
  for (int e : p) {
    if (e < 0 || e >= g.edge_count() || g.edge(e).tail != node) return false;
    node = g.edge(e).head;
  }
  return node == g.sink();
}

void check_path(const Dag& g, const Path& p) {
  if (!is_path(g, p)) throw InvalidInput("edge sequence is not a source-to-sink path");
}

QuasiFlow recompose(const Dag& g, const PathDecomposition& pi) {
  QuasiFlow f = QuasiFlow::Zero(g.edge_count());
  for (const auto& [p, w] : pi) {
    check_path(g, p);
    if (w.is_zero()) continue;
    for (int e : p) f(e) += w;
  }
  return f;
}

std::vector<int> path_nodes(const Dag& g, const Path& p) {
  std::vector<int> out{g.source()};
  for (int e : p) out.push_back(g.edge(e).head);
  return out;
}

int depth_of(const Dag& g, const Path& p, int node) {
  if (node == g.source()) return 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (g.edge(p[i]).head == node) return static_cast<int>(i) + 1;
  return -1;
}

std::pair<Path, Path> path_conjugates(const Dag& g, const Path& p1, const Path& p2, int node) {
  check_path(g, p1);
  check_path(g, p2);
  const int d1 = depth_of(g, p1, node), d2 = depth_of(g, p2, node);
  if (d1 < 0 || d2 < 0) throw InvalidInput("node " + (node >= 0 && node < g.node_count() ? g.label(node) : std::string("?")) +
                                         " is not on both paths");
  Path a(p1.begin(), p1.begin() + d1), b(p2.begin(), p2.begin() + d2);
  a.insert(a.end(), p2.begin() + d2, p2.end());
  b.insert(b.end(), p1.begin() + d1, p1.end());
  return {a, b};
}

std::uint64_t count_paths(const Dag& g) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(g.node_count()), 0);
  ways[static_cast<std::size_t>(g.sink())] = 1;
  const auto& order = g.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it == g.sink()) continue;
    std::uint64_t total = 0;
    for (int e : g.out_edges(*it)) {
      const std::uint64_t w = ways[static_cast<std::size_t>(g.edge(e).head)];
      total = (kMax - total < w) ? kMax : total + w;
    }
    ways[static_cast<std::size_t>(*it)] = total;
  }
  return ways[static_cast<std::size_t>(g.source())];
}

std::vector<Path> enumerate_paths(const Dag& g, std::uint64_t cap) {
  const std::uint64_t n = count_paths(g);
  if (n > cap) throw CapExceeded("path count", n, cap);
  std::vector<Path> out;
  out.reserve(n);
  Path cur;
  auto rec = [&](auto&& self, int node) -> void {
    if (node == g.sink()) {
      out.push_back(cur);
      return;
    }
    for (int e : g.out_edges(node)) {
      cur.push_back(e);
      self(self, g.edge(e).head);
      cur.pop_back();
    }
  };
  rec(rec, g.source());
  return out;
}

RatVector indicator(const Dag& g, const Path& p) {
  RatVector v = RatVector::Zero(g.edge_count());
  for (int e : p) v(e) = 1;
  return v;
}

}  // namespace rumid
