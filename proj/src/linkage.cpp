#include "splink/linkage.hpp"

#include <algorithm>
#include <stdexcept>

namespace splink {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

bool reaches(const Digraph& d, Vertex from, Vertex to, const Bits& blocked,
             std::vector<int>& seen, int stamp) {
  if (from == to) return true;
  std::vector<Vertex> queue{from};
  seen[static_cast<std::size_t>(from)] = stamp;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Bits& row = d.out(queue[head]);
    for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) {
      if (v == to) return true;
      if (blocked.test(v) || seen[static_cast<std::size_t>(v)] == stamp) continue;
      seen[static_cast<std::size_t>(v)] = stamp;
      queue.push_back(v);
    }
  }
  return false;
}

std::vector<Vertex> bfs_verts(const Digraph& d, Vertex from, Vertex to, const Bits& blocked) {
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

struct Searcher {
  const Digraph& d;
  LinkageQuery q;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<Vertex> first_path;
  Bits on_path;
  std::vector<int> seen;
  int stamp = 0;
  std::optional<std::vector<Vertex>> second_path;

  Searcher(const Digraph& dg, const LinkageQuery& query, std::uint64_t b)
      : d(dg), q(query), budget(b), on_path(dg.order()),
        seen(static_cast<std::size_t>(dg.order()), -1) {}

  // Extends the (s1,t1)-path vertex by vertex. The first path never touches
  // s2 or t2 since those must stay free for the second path.
  SearchStatus extend(Vertex u) {
    if (nodes >= budget) return SearchStatus::budget_exceeded;
    ++nodes;
    if (u == q.t1) {
      Bits blocked = on_path;
      auto verts = bfs_verts(d, q.s2, q.t2, blocked);
      if (verts.empty()) return SearchStatus::not_good;
      second_path = std::move(verts);
      return SearchStatus::found;
    }
    const Bits& row = d.out(u);
    for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) {
      if (on_path.test(v) || v == q.s2 || v == q.t2) continue;
      on_path.set(v);
      first_path.push_back(v);
      Bits ahead = on_path;
      ahead.set(q.s2);
      ahead.set(q.t2);
      bool viable = reaches(d, v, q.t1, ahead, seen, ++stamp);
      if (viable) {
        Bits blocked = on_path;
        blocked.set(q.t1);
        viable = reaches(d, q.s2, q.t2, blocked, seen, ++stamp);
      }
      if (viable) {
        SearchStatus status = extend(v);
        if (status != SearchStatus::not_good) return status;
      }
      first_path.pop_back();
      on_path.reset(v);
    }
    return SearchStatus::not_good;
  }

  SearchResult run() {
    on_path.set(q.s1);
    first_path.push_back(q.s1);
    SearchResult result;
    Bits ahead = on_path;
    ahead.set(q.s2);
    ahead.set(q.t2);
    Bits others = on_path;
    others.set(q.t1);
    if (!reaches(d, q.s1, q.t1, ahead, seen, ++stamp) ||
        !reaches(d, q.s2, q.t2, others, seen, ++stamp)) {
      result.status = SearchStatus::not_good;
      result.nodes = nodes;
      return result;
    }
    result.status = extend(q.s1);
    result.nodes = nodes;
    if (result.status == SearchStatus::found) {
      Path p1(d, first_path);
      Path p2(d, *second_path);
      result.witness.emplace(d, q, std::move(p1), std::move(p2), "exact-search");
    }
    return result;
  }
};

}  // namespace

void LinkageQuery::check(const Digraph& d) const {
  d.check_vertex(s1);
  d.check_vertex(t1);
  d.check_vertex(s2);
  d.check_vertex(t2);
  if (s1 == t1 || s1 == s2 || s1 == t2 || t1 == s2 || t1 == t2 || s2 == t2)
    fail("terminal quadruple must be pairwise distinct");
}

LinkageWitness::LinkageWitness(const Digraph& d, const LinkageQuery& q, Path p1, Path p2,
                               std::string provenance)
    : p1_(std::move(p1)), p2_(std::move(p2)), provenance_(std::move(provenance)) {
  q.check(d);
  if (p1_.source() != q.s1 || p1_.sink() != q.t1) fail("witness first path endpoints");
  if (p2_.source() != q.s2 || p2_.sink() != q.t2) fail("witness second path endpoints");
  if (!p1_.disjoint_from(p2_)) fail("witness paths intersect");
}

bool validate_witness(const Digraph& d, const LinkageQuery& q, const Path& p1, const Path& p2) {
  auto valid_in = [&](const Path& p) {
    const auto& vs = p.vertices();
    Bits seen(d.order());
    for (Vertex v : vs) {
      if (v < 0 || v >= d.order() || seen.test(v)) return false;
      seen.set(v);
    }
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
      if (!d.has_arc(vs[i], vs[i + 1])) return false;
    return true;
  };
  return valid_in(p1) && valid_in(p2) && p1.source() == q.s1 && p1.sink() == q.t1 &&
         p2.source() == q.s2 && p2.sink() == q.t2 && p1.disjoint_from(p2);
}

SearchResult two_disjoint_paths(const Digraph& d, const LinkageQuery& q, std::uint64_t budget) {
  q.check(d);
  // Branching happens along the first path, so hand that role to the
  // terminal pair with the smaller out-degree sum.
  bool swap = d.out_degree(q.s2) + d.out_degree(q.t2) < d.out_degree(q.s1) + d.out_degree(q.t1);
  LinkageQuery actual = swap ? q.swapped() : q;
  Searcher searcher(d, actual, budget);
  SearchResult result = searcher.run();
  if (result.status == SearchStatus::found && swap) {
    LinkageWitness w = *result.witness;
    result.witness.emplace(d, q, w.p2(), w.p1(), w.provenance());
  }
  return result;
}

bool is_good_tuple(const Digraph& d, const LinkageQuery& q) {
  return two_disjoint_paths(d, q, ~std::uint64_t{0}).status == SearchStatus::found;
}

TwoLinkedVerdict is_2_linked(const Digraph& d) {
  if (d.order() < 4) fail("2-linkedness needs at least four vertices");
  for (Vertex s1 = 0; s1 < d.order(); ++s1)
    for (Vertex t1 = 0; t1 < d.order(); ++t1)
      for (Vertex s2 = 0; s2 < d.order(); ++s2)
        for (Vertex t2 = 0; t2 < d.order(); ++t2) {
          if (s1 == t1 || s1 == s2 || s1 == t2 || t1 == s2 || t1 == t2 || s2 == t2) continue;
          LinkageQuery q{s1, t1, s2, t2};
          if (!is_good_tuple(d, q)) return {false, q};
        }
  return {true, std::nullopt};
}

}  // namespace splink
