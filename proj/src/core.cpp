#include "splink/core.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace splink {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_same_size(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) fail("bit set size mismatch");
}

}  // namespace

Bits Bits::of(int size, std::span<const Vertex> members) {
  Bits b(size);
  for (Vertex v : members) {
    if (v < 0 || v >= size) fail("vertex out of range");
    b.set(v);
  }
  return b;
}

Bits Bits::of(int size, std::initializer_list<Vertex> members) {
  return of(size, std::span<const Vertex>(members.begin(), members.size()));
}

int Bits::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool Bits::none() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

bool Bits::intersects(const Bits& other) const {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

bool Bits::contains(const Bits& other) const {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (other.words_[i] & ~words_[i]) return false;
  return true;
}

int Bits::next(int from) const {
  if (from < 0) from = 0;
  if (from >= size_) return -1;
  std::size_t wi = static_cast<std::size_t>(from) >> 6;
  std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (w != 0) {
      int bit = static_cast<int>(wi * 64) + std::countr_zero(w);
      return bit < size_ ? bit : -1;
    }
    if (++wi >= words_.size()) return -1;
    w = words_[wi];
  }
}

Bits& Bits::operator|=(const Bits& other) {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bits& Bits::operator&=(const Bits& other) {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bits& Bits::subtract(const Bits& other) {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

void Bits::flip_all() {
  for (auto& w : words_) w = ~w;
  if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  if (size_ == 0) words_.clear();
}

std::vector<Vertex> Bits::to_vector() const {
  std::vector<Vertex> out;
  for (int v = next(0); v != -1; v = next(v + 1)) out.push_back(v);
  return out;
}

Digraph::Digraph(int order, std::span<const Arc> arcs, std::vector<std::string> labels)
    : order_(order) {
  if (order < 0) fail("negative order");
  out_.assign(static_cast<std::size_t>(order), Bits(order));
  in_.assign(static_cast<std::size_t>(order), Bits(order));
  for (const Arc& a : arcs) {
    if (a.from < 0 || a.from >= order || a.to < 0 || a.to >= order)
      fail("arc endpoint out of range");
    if (a.from == a.to) fail("loop arc " + std::to_string(a.from));
    if (out_[a.from].test(a.to))
      fail("duplicate arc " + std::to_string(a.from) + " -> " + std::to_string(a.to));
    out_[a.from].set(a.to);
    in_[a.to].set(a.from);
    ++arc_count_;
  }
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != order) fail("label count does not match order");
    for (const auto& s : labels) {
      if (s.empty()) fail("empty label");
      for (char ch : s)
        if (ch == '#' || ch == ',' || static_cast<unsigned char>(ch) <= ' ')
          fail("label contains reserved character: " + s);
    }
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("duplicate label");
    labels_ = std::move(labels);
  }
}

Digraph::Digraph(int order, std::initializer_list<Arc> arcs, std::vector<std::string> labels)
    : Digraph(order, std::span<const Arc>(arcs.begin(), arcs.size()), std::move(labels)) {}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(static_cast<std::size_t>(arc_count_));
  for (Vertex u = 0; u < order_; ++u)
    for (Vertex v = out_[u].next(0); v != -1; v = out_[u].next(v + 1))
      out.push_back({u, v});
  return out;
}

std::string Digraph::display(Vertex v) const {
  check_vertex(v);
  return labeled() ? labels_[static_cast<std::size_t>(v)] : std::to_string(v);
}

std::optional<Vertex> Digraph::find_label(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<Vertex>(i);
  return std::nullopt;
}

std::optional<Vertex> Digraph::resolve(std::string_view token) const {
  if (auto v = find_label(token)) return v;
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  if (value < 0 || value >= order_) return std::nullopt;
  return value;
}

void Digraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= order_) fail("vertex " + std::to_string(v) + " out of range");
}

Path::Path(const Digraph& d, std::vector<Vertex> vertices)
    : verts_(std::move(vertices)), members_(d.order()) {
  if (verts_.empty()) fail("empty path");
  for (Vertex v : verts_) {
    d.check_vertex(v);
    if (members_.test(v)) fail("repeated path vertex " + d.display(v));
    members_.set(v);
  }
  for (std::size_t i = 0; i + 1 < verts_.size(); ++i)
    if (!d.has_arc(verts_[i], verts_[i + 1]))
      fail("missing arc " + d.display(verts_[i]) + " -> " + d.display(verts_[i + 1]));
}

Path::Path(Trusted, std::vector<Vertex> vertices, int graph_order)
    : verts_(std::move(vertices)), members_(graph_order) {
  for (Vertex v : verts_) members_.set(v);
}

int Path::position(Vertex v) const {
  if (!contains(v)) return -1;
  for (std::size_t i = 0; i < verts_.size(); ++i)
    if (verts_[i] == v) return static_cast<int>(i);
  return -1;
}

Digraph reverse(const Digraph& d) {
  std::vector<Arc> rev;
  rev.reserve(static_cast<std::size_t>(d.arc_count()));
  for (const Arc& a : d.arcs()) rev.push_back({a.to, a.from});
  return Digraph(d.order(), rev, d.labels());
}

Induced induced(const Digraph& d, const Bits& keep) {
  if (keep.size() != d.order()) fail("vertex set size mismatch");
  Induced result;
  result.from_parent.assign(static_cast<std::size_t>(d.order()), -1);
  for (Vertex v = keep.next(0); v != -1; v = keep.next(v + 1)) {
    result.from_parent[static_cast<std::size_t>(v)] = static_cast<int>(result.to_parent.size());
    result.to_parent.push_back(v);
  }
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs()) {
    int nf = result.from_parent[static_cast<std::size_t>(a.from)];
    int nt = result.from_parent[static_cast<std::size_t>(a.to)];
    if (nf != -1 && nt != -1) arcs.push_back({nf, nt});
  }
  std::vector<std::string> labels;
  if (d.labeled())
    for (Vertex v : result.to_parent) labels.push_back(d.labels()[static_cast<std::size_t>(v)]);
  result.graph = Digraph(static_cast<int>(result.to_parent.size()), arcs, std::move(labels));
  return result;
}

Induced delete_vertices(const Digraph& d, const Bits& drop) {
  if (drop.size() != d.order()) fail("vertex set size mismatch");
  Bits keep = drop;
  keep.flip_all();
  return induced(d, keep);
}

Dominance dominance(const Digraph& d, const Bits& xs, const Bits& ys) {
  if (xs.size() != d.order() || ys.size() != d.order()) fail("vertex set size mismatch");
  if (xs.intersects(ys)) fail("dominance sets overlap");
  Dominance rel;
  rel.arrow = true;
  rel.no_back = true;
  for (Vertex x = xs.next(0); x != -1; x = xs.next(x + 1))
    if (!d.out(x).contains(ys)) {
      rel.arrow = false;
      break;
    }
  for (Vertex y = ys.next(0); y != -1; y = ys.next(y + 1))
    if (d.out(y).intersects(xs)) {
      rel.no_back = false;
      break;
    }
  rel.maps_to = rel.arrow && rel.no_back;
  return rel;
}

Path subpath(const Path& p, Vertex x, Vertex y, Clusivity c) {
  int px = p.position(x);
  int py = p.position(y);
  if (px == -1 || py == -1) fail("subpath endpoint not on path");
  if (px > py) fail("subpath endpoints out of order");
  int end = c == Clusivity::closed ? py : py - 1;
  if (end < px) fail("empty subpath");
  std::vector<Vertex> verts(p.vertices().begin() + px, p.vertices().begin() + end + 1);
  return Path(Path::Trusted{}, std::move(verts), p.members().size());
}

Path concat(const Path& p, const Path& q) {
  if (p.members().size() != q.members().size()) fail("paths from different digraphs");
  if (p.sink() != q.source()) fail("concat endpoint mismatch");
  std::vector<Vertex> verts = p.vertices();
  for (std::size_t i = 1; i < q.vertices().size(); ++i) {
    Vertex v = q.vertices()[i];
    if (p.contains(v)) fail("concat repeats vertex");
    verts.push_back(v);
  }
  return Path(Path::Trusted{}, std::move(verts), p.members().size());
}

}  // namespace splink
