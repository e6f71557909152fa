#include "splink/classes.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace splink {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

bool independent(const Digraph& d, const Bits& set) {
  for (Vertex u = set.next(0); u != -1; u = set.next(u + 1))
    if (d.out(u).intersects(set)) return false;
  return true;
}

bool semicomplete_within(const Digraph& d, const std::vector<Vertex>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (!d.adjacent(set[i], set[j])) return false;
  return true;
}

SplitPartition make_partition(const Digraph& d, const Bits& v2) {
  SplitPartition p;
  for (Vertex v = 0; v < d.order(); ++v)
    (v2.test(v) ? p.v2 : p.v1).push_back(v);
  return p;
}

bool valid_sides(const Digraph& d, const Bits& v2bits) {
  if (v2bits.none()) return false;
  Bits v1bits = v2bits;
  v1bits.flip_all();
  if (v1bits.none()) return false;
  if (!independent(d, v1bits)) return false;
  auto v2 = v2bits.to_vector();
  return semicomplete_within(d, v2);
}

// Candidate V2 sides for any valid split partition. The degree
// characterization of split graphs (underlying graph, degrees sorted
// non-increasingly, m = max{i : d_i >= i-1}, split iff
// sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i) yields one clique/independent
// partition (K, I). Any other valid side differs from K by at most one
// vertex in each direction: two vertices of K cannot both move to an
// independent side, nor two of I into a semicomplete side. Enumerating
// K - {u} + {v} over u in K+{none}, v in I+{none} is therefore complete.
std::vector<Bits> candidate_sides(const Digraph& d) {
  const int n = d.order();
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    Bits nbrs = d.out(v);
    nbrs |= d.in(v);
    deg[static_cast<std::size_t>(v)] = nbrs.count();
  }
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
  });
  long long left = 0, right = 0;
  int m = 0;
  for (int i = 1; i <= n; ++i)
    if (deg[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])] >= i - 1) m = i;
  for (int i = 0; i < n; ++i) {
    long long dv = deg[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    (i < m ? left : right) += dv;
  }
  if (left != static_cast<long long>(m) * (m - 1) + right) return {};

  Bits clique(n);
  for (int i = 0; i < m; ++i) clique.set(order[static_cast<std::size_t>(i)]);
  std::vector<Bits> sides;
  for (Vertex u = -1; u < n; ++u) {
    if (u != -1 && !clique.test(u)) continue;
    for (Vertex v = -1; v < n; ++v) {
      if (v != -1 && clique.test(v)) continue;
      Bits side = clique;
      if (u != -1) side.reset(u);
      if (v != -1) side.set(v);
      sides.push_back(std::move(side));
    }
  }
  return sides;
}

}  // namespace

bool validate_partition(const Digraph& d, const SplitPartition& p) {
  Bits v1 = Bits::of(d.order(), p.v1);
  Bits v2 = Bits::of(d.order(), p.v2);
  if (v1.intersects(v2)) fail("partition sides overlap");
  Bits all = v1;
  all |= v2;
  if (all.count() != d.order()) fail("partition does not cover the vertex set");
  if (p.v1.empty() || p.v2.empty()) return false;
  if (!independent(d, v1)) return false;
  return semicomplete_within(d, v2.to_vector());
}

std::optional<SplitPartition> split_partition(const Digraph& d) {
  std::optional<Bits> best;
  for (Bits& side : candidate_sides(d)) {
    if (!valid_sides(d, side)) continue;
    if (!best) {
      best = std::move(side);
      continue;
    }
    int bc = best->count(), sc = side.count();
    if (sc > bc || (sc == bc && side.to_vector() < best->to_vector())) best = std::move(side);
  }
  if (!best) return std::nullopt;
  return make_partition(d, *best);
}

bool is_semicomplete(const Digraph& d) {
  for (Vertex u = 0; u < d.order(); ++u)
    for (Vertex v = u + 1; v < d.order(); ++v)
      if (!d.adjacent(u, v)) return false;
  return true;
}

bool is_tournament(const Digraph& d) {
  for (Vertex u = 0; u < d.order(); ++u)
    for (Vertex v = u + 1; v < d.order(); ++v)
      if (d.has_arc(u, v) == d.has_arc(v, u)) return false;
  return true;
}

bool is_semicomplete_split(const Digraph& d, const SplitPartition& p) {
  if (!validate_partition(d, p)) fail("not a valid split partition");
  for (Vertex u : p.v1)
    for (Vertex v : p.v2)
      if (!d.adjacent(u, v)) return false;
  return true;
}

bool is_semicomplete_split(const Digraph& d) {
  for (Bits& side : candidate_sides(d)) {
    if (!valid_sides(d, side)) continue;
    SplitPartition p = make_partition(d, side);
    bool ok = true;
    for (Vertex u : p.v1) {
      for (Vertex v : p.v2)
        if (!d.adjacent(u, v)) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

std::optional<std::vector<std::vector<Vertex>>> semicomplete_multipartite_parts(const Digraph& d) {
  const int n = d.order();
  std::vector<int> part(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> parts;
  for (Vertex v = 0; v < n; ++v) {
    if (part[static_cast<std::size_t>(v)] != -1) continue;
    int id = static_cast<int>(parts.size());
    parts.push_back({});
    // Component of v under non-adjacency; must come out pairwise non-adjacent.
    std::vector<Vertex> stack{v};
    part[static_cast<std::size_t>(v)] = id;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      parts[static_cast<std::size_t>(id)].push_back(u);
      for (Vertex w = 0; w < n; ++w) {
        if (w == u || d.adjacent(u, w)) continue;
        if (part[static_cast<std::size_t>(w)] == -1) {
          part[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
  }
  for (auto& cls : parts) {
    std::sort(cls.begin(), cls.end());
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j)
        if (d.adjacent(cls[i], cls[j])) return std::nullopt;
  }
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return parts;
}

}  // namespace splink
