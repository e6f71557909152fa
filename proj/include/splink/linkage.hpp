#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "splink/core.hpp"

namespace splink {

/// Ordered terminal quadruple (s1, t1, s2, t2), pairwise distinct.
struct LinkageQuery {
  Vertex s1 = 0;
  Vertex t1 = 0;
  Vertex s2 = 0;
  Vertex t2 = 0;

  void check(const Digraph& d) const;
  LinkageQuery swapped() const { return {s2, t2, s1, t1}; }
  friend bool operator==(const LinkageQuery&, const LinkageQuery&) = default;
};

/// Vertex-disjoint (s1,t1)- and (s2,t2)-paths, checked on construction.
/// `provenance` names what produced the pair: "exact-search" or a template id.
class LinkageWitness {
 public:
  LinkageWitness(const Digraph& d, const LinkageQuery& q, Path p1, Path p2,
                 std::string provenance);

  const Path& p1() const { return p1_; }
  const Path& p2() const { return p2_; }
  const std::string& provenance() const { return provenance_; }

 private:
  Path p1_;
  Path p2_;
  std::string provenance_;
};

/// Re-checks a candidate pair without constructing: endpoints, arcs,
/// distinctness, disjointness.
bool validate_witness(const Digraph& d, const LinkageQuery& q, const Path& p1, const Path& p2);

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

enum class SearchStatus { found, not_good, budget_exceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::not_good;
  std::optional<LinkageWitness> witness;
  std::uint64_t nodes = 0;  // search tree nodes expanded
};

/// Exact search for disjoint (s1,t1)- and (s2,t2)-paths: depth-first
/// extension of the first path with reachability pruning on both terminals.
/// not_good is a proof of non-existence; budget_exceeded is not.
SearchResult two_disjoint_paths(const Digraph& d, const LinkageQuery& q,
                                std::uint64_t budget = kDefaultNodeBudget);

/// Unbounded exact decision for one quadruple.
bool is_good_tuple(const Digraph& d, const LinkageQuery& q);

/// linked, or the lexicographically first failing quadruple.
struct TwoLinkedVerdict {
  bool linked = false;
  std::optional<LinkageQuery> counterexample;
};
TwoLinkedVerdict is_2_linked(const Digraph& d);

}  // namespace splink
