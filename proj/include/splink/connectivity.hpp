#pragma once

#include <optional>
#include <vector>

#include "splink/core.hpp"

namespace splink {

/// Internally disjoint paths sharing a common source and sink.
class PathSystem {
 public:
  PathSystem(Vertex source, Vertex sink, std::vector<Path> paths);

  Vertex source() const { return source_; }
  Vertex sink() const { return sink_; }
  int size() const { return static_cast<int>(paths_.size()); }
  const Path& path(int i) const { return paths_[static_cast<std::size_t>(i)]; }
  const std::vector<Path>& paths() const { return paths_; }

 private:
  Vertex source_;
  Vertex sink_;
  std::vector<Path> paths_;
};

/// Maximum number of internally disjoint (x,y)-paths, by unit-capacity
/// augmentation on the vertex-split network. A direct arc x->y counts as
/// one path. `cap` stops the augmentation early once that many paths are
/// established (-1 = exact value).
int local_connectivity(const Digraph& d, Vertex x, Vertex y, int cap = -1);

/// Exactly k internally disjoint (x,y)-paths extracted from a flow of value
/// k, each minimalized afterwards; none when fewer than k exist. Path
/// tracing follows the lowest-numbered saturated out-arc; `rotation` shifts
/// that preference cyclically to reach alternative decompositions.
std::optional<PathSystem> disjoint_path_system(const Digraph& d, Vertex x, Vertex y, int k,
                                               int rotation = 0);

/// |V| >= k+1 and every ordered pair has local connectivity >= k.
bool is_k_strong(const Digraph& d, int k);

/// True iff no (s,t)-path survives deleting S. s,t must lie outside S.
bool is_separator(const Digraph& d, const Bits& s_set, Vertex s, Vertex t);

/// Minimal path with p's endpoints inside the subdigraph induced by V(p):
/// a shortest source->sink path there. One breadth-first pass suffices; see
/// the note in the implementation.
Path make_minimal(const Digraph& d, const Path& p);

/// True iff p is already minimal in the above sense.
bool is_minimal(const Digraph& d, const Path& p);

}  // namespace splink
