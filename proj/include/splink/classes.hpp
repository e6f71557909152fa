#pragma once

#include <optional>
#include <vector>

#include "splink/core.hpp"

namespace splink {

/// Partition (V1, V2) of a digraph's vertex set: V1 induces no arcs, V2
/// induces a semicomplete digraph. Sides are kept sorted.
struct SplitPartition {
  std::vector<Vertex> v1;
  std::vector<Vertex> v2;
  friend bool operator==(const SplitPartition&, const SplitPartition&) = default;
};

/// True iff p is a valid split partition of d: both sides nonempty, V1
/// independent, V2 semicomplete. Non-covering or overlapping sides are a
/// caller error and throw.
bool validate_partition(const Digraph& d, const SplitPartition& p);

/// Valid split partition maximizing |V2|, ties broken by the
/// lexicographically smallest V2. none when d is not a split digraph.
std::optional<SplitPartition> split_partition(const Digraph& d);

/// Every pair of distinct vertices adjacent.
bool is_semicomplete(const Digraph& d);

/// Exactly one arc between every pair of distinct vertices.
bool is_tournament(const Digraph& d);

/// Split digraph in which every V1-V2 pair is adjacent. The overload without
/// a partition searches all valid partitions; the other checks just the one
/// given (which must be valid, else it throws).
bool is_semicomplete_split(const Digraph& d);
bool is_semicomplete_split(const Digraph& d, const SplitPartition& p);

/// Partite classes when non-adjacency is transitive (each class sorted,
/// classes ordered by first member); none otherwise. Vertices in no
/// non-adjacent pair form singleton classes.
std::optional<std::vector<std::vector<Vertex>>> semicomplete_multipartite_parts(const Digraph& d);

}  // namespace splink
