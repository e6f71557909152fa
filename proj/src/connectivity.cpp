#include "splink/connectivity.hpp"

#include <algorithm>
#include <stdexcept>

namespace splink {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Unit-capacity flow on the vertex-split transform: vertex v becomes
// v_in = 2v and v_out = 2v+1 joined by a capacity-1 arc; an arc (u,v)
// becomes u_out -> v_in. Source is x_out, sink is y_in, so x and y are
// uncapacitated and a direct arc x->y carries one unit on its own.
struct SplitFlow {
  const Digraph& d;
  Vertex x, y;
  int rotation;
  // through[v]: the v_in -> v_out arc carries flow.
  // arc_flow[u][v]: u_out -> v_in carries flow (stored per tail as bits).
  std::vector<char> through;
  std::vector<Bits> arc_flow;
  std::vector<int> parent_node;  // BFS predecessors over split nodes

  SplitFlow(const Digraph& dg, Vertex from, Vertex to, int rot)
      : d(dg), x(from), y(to), rotation(rot), through(static_cast<std::size_t>(dg.order()), 0),
        arc_flow(static_cast<std::size_t>(dg.order()), Bits(dg.order())),
        parent_node(static_cast<std::size_t>(2 * dg.order()), -1) {}

  // Visits out-neighbours of u in ascending order shifted by the rotation.
  template <class F>
  void for_each_out(Vertex u, F f) const {
    const Bits& row = d.out(u);
    if (rotation == 0) {
      for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) f(v);
      return;
    }
    for (Vertex v = row.next(rotation); v != -1; v = row.next(v + 1)) f(v);
    for (Vertex v = row.next(0); v != -1 && v < rotation; v = row.next(v + 1)) f(v);
  }
  template <class F>
  void for_each_in(Vertex u, F f) const {
    const Bits& row = d.in(u);
    if (rotation == 0) {
      for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) f(v);
      return;
    }
    for (Vertex v = row.next(rotation); v != -1; v = row.next(v + 1)) f(v);
    for (Vertex v = row.next(0); v != -1 && v < rotation; v = row.next(v + 1)) f(v);
  }

  int node_in(Vertex v) const { return 2 * v; }
  int node_out(Vertex v) const { return 2 * v + 1; }

  // One augmenting breadth-first search in the residual network.
  bool augment() {
    const int source = node_out(x), target = node_in(y);
    std::fill(parent_node.begin(), parent_node.end(), -1);
    std::vector<int> queue{source};
    parent_node[static_cast<std::size_t>(source)] = source;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int node = queue[head];
      if (node == target) break;
      Vertex v = node / 2;
      auto push = [&](int next) {
        if (parent_node[static_cast<std::size_t>(next)] == -1) {
          parent_node[static_cast<std::size_t>(next)] = node;
          queue.push_back(next);
        }
      };
      if (node & 1) {
        // v_out: forward residual u_out -> w_in where no flow yet.
        for_each_out(v, [&](Vertex w) {
          if (!arc_flow[static_cast<std::size_t>(v)].test(w)) push(node_in(w));
        });
        // Residual of the internal arc: v_out -> v_in when v carries flow.
        if (v != x && v != y && through[static_cast<std::size_t>(v)]) push(node_in(v));
      } else {
        // v_in: internal arc v_in -> v_out when v carries no flow.
        if (v != x && v != y && !through[static_cast<std::size_t>(v)]) push(node_out(v));
        // Backward residual: v_in -> u_out for flow arcs (u,v).
        for_each_in(v, [&](Vertex u) {
          if (arc_flow[static_cast<std::size_t>(u)].test(v)) push(node_out(u));
        });
      }
    }
    if (parent_node[static_cast<std::size_t>(target)] == -1) return false;
    int node = target;
    while (node != source) {
      int prev = parent_node[static_cast<std::size_t>(node)];
      Vertex pv = prev / 2, nv = node / 2;
      if (pv == nv) {
        through[static_cast<std::size_t>(pv)] = (prev & 1) == 0 ? 1 : 0;
      } else if ((prev & 1) && !(node & 1)) {
        arc_flow[static_cast<std::size_t>(pv)].set(nv);
      } else {
        arc_flow[static_cast<std::size_t>(nv)].reset(pv);
      }
      node = prev;
    }
    return true;
  }

  int run(int cap) {
    int value = 0;
    while (cap == -1 || value < cap) {
      if (!augment()) break;
      ++value;
    }
    return value;
  }

  // Removes one flow path starting at x, following the lowest saturated
  // out-arc under the rotation. Vertex capacities keep the trace simple.
  std::vector<Vertex> extract_path() {
    std::vector<Vertex> verts{x};
    Vertex v = x;
    while (v != y) {
      Vertex next = -1;
      for_each_out(v, [&](Vertex w) {
        if (next == -1 && arc_flow[static_cast<std::size_t>(v)].test(w)) next = w;
      });
      if (next == -1) fail("flow trace stalled");
      arc_flow[static_cast<std::size_t>(v)].reset(next);
      if (next != y) through[static_cast<std::size_t>(next)] = 0;
      verts.push_back(next);
      v = next;
    }
    return verts;
  }
};

std::vector<Vertex> bfs_path(const Digraph& d, Vertex from, Vertex to, const Bits& blocked);

}  // namespace

PathSystem::PathSystem(Vertex source, Vertex sink, std::vector<Path> paths)
    : source_(source), sink_(sink), paths_(std::move(paths)) {
  if (source_ == sink_) fail("path system endpoints coincide");
  Bits interior_seen;
  for (const Path& p : paths_) {
    if (p.source() != source_ || p.sink() != sink_) fail("path system endpoint mismatch");
    Bits interior = p.members();
    interior.reset(source_);
    interior.reset(sink_);
    if (interior_seen.size() == 0) interior_seen = Bits(interior.size());
    if (interior_seen.intersects(interior)) fail("path system paths share interior vertices");
    interior_seen |= interior;
  }
}

int local_connectivity(const Digraph& d, Vertex x, Vertex y, int cap) {
  d.check_vertex(x);
  d.check_vertex(y);
  if (x == y) fail("local connectivity needs distinct endpoints");
  SplitFlow flow(d, x, y, 0);
  return flow.run(cap);
}

std::optional<PathSystem> disjoint_path_system(const Digraph& d, Vertex x, Vertex y, int k,
                                               int rotation) {
  d.check_vertex(x);
  d.check_vertex(y);
  if (x == y) fail("path system needs distinct endpoints");
  if (k <= 0) fail("path system size must be positive");
  int n = d.order();
  int rot = n > 0 ? ((rotation % n) + n) % n : 0;
  SplitFlow flow(d, x, y, rot);
  if (flow.run(k) < k) return std::nullopt;
  std::vector<Path> paths;
  for (int i = 0; i < k; ++i) {
    Path raw(d, flow.extract_path());
    paths.push_back(make_minimal(d, raw));
  }
  return PathSystem(x, y, std::move(paths));
}

bool is_k_strong(const Digraph& d, int k) {
  if (k < 0) fail("negative strongness");
  if (k == 0) return true;
  if (d.order() < k + 1) return false;
  for (Vertex x = 0; x < d.order(); ++x)
    for (Vertex y = 0; y < d.order(); ++y)
      if (x != y && local_connectivity(d, x, y, k) < k) return false;
  return true;
}

bool is_separator(const Digraph& d, const Bits& s_set, Vertex s, Vertex t) {
  d.check_vertex(s);
  d.check_vertex(t);
  if (s_set.size() != d.order()) fail("vertex set size mismatch");
  if (s_set.test(s) || s_set.test(t)) fail("separator contains an endpoint");
  if (s == t) fail("separator endpoints coincide");
  return bfs_path(d, s, t, s_set).empty();
}

namespace {

// Shortest (from,to)-path avoiding `blocked`, parents assigned in ascending
// vertex order; empty when unreachable.
std::vector<Vertex> bfs_path(const Digraph& d, Vertex from, Vertex to, const Bits& blocked) {
  std::vector<int> parent(static_cast<std::size_t>(d.order()), -1);
  std::vector<Vertex> queue{from};
  parent[static_cast<std::size_t>(from)] = from;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    if (u == to) break;
    const Bits& row = d.out(u);
    for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) {
      if (blocked.test(v) || parent[static_cast<std::size_t>(v)] != -1) continue;
      parent[static_cast<std::size_t>(v)] = u;
      queue.push_back(v);
    }
  }
  if (parent[static_cast<std::size_t>(to)] == -1) return {};
  std::vector<Vertex> verts;
  for (Vertex v = to; v != from; v = parent[static_cast<std::size_t>(v)]) verts.push_back(v);
  verts.push_back(from);
  std::reverse(verts.begin(), verts.end());
  return verts;
}

}  // namespace

// Minimality here means: no (source,sink)-path in the subdigraph induced by
// V(p) is shorter than p. A single breadth-first pass over that subdigraph
// returns a shortest such path directly, so the usual iterate-until-fixpoint
// formulation collapses to one pass: the result's own induced subdigraph is
// a subset of V(p), and a shortest path there is still shortest.
Path make_minimal(const Digraph& d, const Path& p) {
  Bits blocked = p.members();
  blocked.flip_all();
  std::vector<Vertex> verts = bfs_path(d, p.source(), p.sink(), blocked);
  if (verts.empty()) fail("path lost its endpoints");
  return Path(d, verts);
}

bool is_minimal(const Digraph& d, const Path& p) {
  return make_minimal(d, p).length() == p.length();
}

}  // namespace splink
