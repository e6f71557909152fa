#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splink {

/// Dense vertex id, 0-based within a fixed digraph.
using Vertex = int;

struct Arc {
  Vertex from = 0;
  Vertex to = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Dynamic bitset over vertex ids. A single word covers orders up to 64,
/// which is the common case here; larger orders spill into further words.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int size) : size_(size), words_((size + 63) / 64, 0) {}
  static Bits of(int size, std::span<const Vertex> members);
  static Bits of(int size, std::initializer_list<Vertex> members);

  int size() const { return size_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const;
  bool none() const;
  bool any() const { return !none(); }
  bool intersects(const Bits& other) const;
  bool contains(const Bits& other) const;
  /// First set bit at or after `from`, -1 when there is none.
  int next(int from) const;

  Bits& operator|=(const Bits& other);
  Bits& operator&=(const Bits& other);
  Bits& subtract(const Bits& other);
  void flip_all();

  std::vector<Vertex> to_vector() const;
  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple digraph: no loops, no parallel arcs. Immutable once constructed;
/// assemble the arc list first, then build.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int order, std::span<const Arc> arcs, std::vector<std::string> labels = {});
  Digraph(int order, std::initializer_list<Arc> arcs, std::vector<std::string> labels = {});

  int order() const { return order_; }
  int arc_count() const { return arc_count_; }
  bool has_arc(Vertex u, Vertex v) const { return out_[u].test(v); }
  bool adjacent(Vertex u, Vertex v) const { return out_[u].test(v) || out_[v].test(u); }
  int out_degree(Vertex u) const { return out_[u].count(); }
  int in_degree(Vertex u) const { return in_[u].count(); }
  const Bits& out(Vertex u) const { return out_[u]; }
  const Bits& in(Vertex u) const { return in_[u]; }
  /// All arcs sorted by (from, to).
  std::vector<Arc> arcs() const;

  bool labeled() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Label when present, decimal id otherwise.
  std::string display(Vertex v) const;
  std::optional<Vertex> find_label(std::string_view name) const;
  /// Resolves a token to a vertex: label first, then decimal id.
  std::optional<Vertex> resolve(std::string_view token) const;

  void check_vertex(Vertex v) const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  int order_ = 0;
  int arc_count_ = 0;
  std::vector<Bits> out_;
  std::vector<Bits> in_;
  std::vector<std::string> labels_;
};

enum class Clusivity { closed, half_open };

/// Directed path with pairwise distinct vertices. Validated on construction
/// against a concrete digraph; slicing and concatenation preserve validity.
class Path {
 public:
  Path(const Digraph& d, std::vector<Vertex> vertices);

  Vertex source() const { return verts_.front(); }
  Vertex sink() const { return verts_.back(); }
  int length() const { return static_cast<int>(verts_.size()) - 1; }
  int order() const { return static_cast<int>(verts_.size()); }
  const std::vector<Vertex>& vertices() const { return verts_; }
  Vertex at(int i) const { return verts_[static_cast<std::size_t>(i)]; }
  bool contains(Vertex v) const { return v >= 0 && v < members_.size() && members_.test(v); }
  /// Position of v along the path, -1 when absent.
  int position(Vertex v) const;
  const Bits& members() const { return members_; }
  bool disjoint_from(const Path& other) const { return !members_.intersects(other.members_); }

  friend bool operator==(const Path& a, const Path& b) { return a.verts_ == b.verts_; }

 private:
  friend Path subpath(const Path&, Vertex, Vertex, Clusivity);
  friend Path concat(const Path&, const Path&);
  struct Trusted {};
  Path(Trusted, std::vector<Vertex> vertices, int graph_order);

  std::vector<Vertex> verts_;
  Bits members_;
};

Digraph reverse(const Digraph& d);

/// Subdigraph induced by `keep`, reindexed to 0..|keep|-1 preserving id order.
struct Induced {
  Digraph graph;
  std::vector<Vertex> to_parent;  // new id -> original id
  std::vector<int> from_parent;   // original id -> new id, -1 when dropped
};
Induced induced(const Digraph& d, const Bits& keep);
Induced delete_vertices(const Digraph& d, const Bits& drop);

/// Relations between disjoint vertex sets X and Y:
///   arrow   - every x sends an arc to every y
///   no_back - no arc from Y to X
///   maps_to - both of the above
struct Dominance {
  bool arrow = false;
  bool no_back = false;
  bool maps_to = false;
};
Dominance dominance(const Digraph& d, const Bits& xs, const Bits& ys);

/// Slice of `p` from x to y in path order; half_open drops y.
Path subpath(const Path& p, Vertex x, Vertex y, Clusivity c = Clusivity::closed);

/// Joins p and q where p ends at q's first vertex; no other shared vertex.
Path concat(const Path& p, const Path& q);

}  // namespace splink
