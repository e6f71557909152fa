#include "splink/constructive.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace splink {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Walk assembler for the template surgeries. Segments of existing paths and
// single-arc hops are appended left to right; every joint must be an arc of
// the digraph and every segment must run forward along its path. finish()
// shortcuts repeated vertices away (a walk always contains a path between
// its endpoints), so a template can never emit an invalid sequence: it
// either produces a genuine path or nothing.
class Splice {
 public:
  explicit Splice(const Digraph& d) : d_(d) {}

  Splice& seg(const Path& p, Vertex from, Vertex to) {
    if (!ok_) return *this;
    int a = p.position(from), b = p.position(to);
    if (a == -1 || b == -1 || a > b) {
      ok_ = false;
      return *this;
    }
    for (int i = a; i <= b; ++i) append(p.at(i));
    return *this;
  }

  Splice& hop(Vertex v) {
    if (ok_) append(v);
    return *this;
  }

  std::optional<std::vector<Vertex>> finish(Vertex source, Vertex sink) {
    if (!ok_ || seq_.empty() || seq_.front() != source || seq_.back() != sink)
      return std::nullopt;
    std::vector<Vertex> path;
    std::vector<int> at(static_cast<std::size_t>(d_.order()), -1);
    for (Vertex v : seq_) {
      int pos = at[static_cast<std::size_t>(v)];
      if (pos != -1) {
        while (static_cast<int>(path.size()) > pos + 1) {
          at[static_cast<std::size_t>(path.back())] = -1;
          path.pop_back();
        }
        continue;
      }
      at[static_cast<std::size_t>(v)] = static_cast<int>(path.size());
      path.push_back(v);
    }
    return path;
  }

 private:
  void append(Vertex v) {
    if (v < 0 || v >= d_.order()) {
      ok_ = false;
      return;
    }
    if (!seq_.empty()) {
      if (seq_.back() == v) return;
      if (!d_.has_arc(seq_.back(), v)) {
        ok_ = false;
        return;
      }
    }
    seq_.push_back(v);
  }

  const Digraph& d_;
  std::vector<Vertex> seq_;
  bool ok_ = true;
};

bool valid_seq(const Digraph& d, Vertex s, Vertex t, const std::vector<Vertex>& seq) {
  if (seq.empty() || seq.front() != s || seq.back() != t) return false;
  Bits seen(d.order());
  for (Vertex v : seq) {
    if (v < 0 || v >= d.order() || seen.test(v)) return false;
    seen.set(v);
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!d.has_arc(seq[i], seq[i + 1])) return false;
  return true;
}

bool seqs_disjoint(const Digraph& d, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  Bits in_a(d.order());
  for (Vertex v : a) in_a.set(v);
  for (Vertex v : b)
    if (in_a.test(v)) return false;
  return true;
}

// Engine state shared by the three template passes. Candidate emission goes
// through emit_*, which validate against the effective roles and restore the
// original ones in the witness.
struct Engine {
  const Digraph& d;
  const TemplateContext& ctx;
  Vertex s1, t1, s2, t2;  // effective roles
  std::optional<LinkageWitness> out;

  Engine(const Digraph& dg, const TemplateContext& c)
      : d(dg), ctx(c), s1(c.effective.s1), t1(c.effective.t1), s2(c.effective.s2),
        t2(c.effective.t2) {}

  const Path& P(int i) const { return ctx.primary[static_cast<std::size_t>(i)]; }
  const Path& Q(int i) const { return ctx.secondary[static_cast<std::size_t>(i)]; }
  int np() const { return static_cast<int>(ctx.primary.size()); }
  int nq() const { return static_cast<int>(ctx.secondary.size()); }

  bool emit(const std::vector<Vertex>& pseq, const std::vector<Vertex>& qseq,
            const std::string& id) {
    if (out) return true;
    if (!valid_seq(d, s1, t1, pseq) || !valid_seq(d, s2, t2, qseq)) return false;
    if (!seqs_disjoint(d, pseq, qseq)) return false;
    Path p1(d, ctx.swapped ? qseq : pseq);
    Path p2(d, ctx.swapped ? pseq : qseq);
    out.emplace(d, ctx.query, std::move(p1), std::move(p2), id);
    return true;
  }

  // Secondary-side candidate against primary partners, preferred ones first.
  bool emit_q(const std::optional<std::vector<Vertex>>& qseq, std::vector<int> partners,
              const std::string& id) {
    if (!qseq) return false;
    for (int m = 0; m < np(); ++m)
      if (std::find(partners.begin(), partners.end(), m) == partners.end())
        partners.push_back(m);
    for (int m : partners)
      if (emit(P(m).vertices(), *qseq, id)) return true;
    return false;
  }

  // Primary-side candidate against every secondary.
  bool emit_p(const std::optional<std::vector<Vertex>>& pseq, const std::string& id) {
    if (!pseq) return false;
    for (int i = 0; i < nq(); ++i)
      if (emit(*pseq, Q(i).vertices(), id)) return true;
    return false;
  }

  std::vector<int> others(int skip_a, int skip_b = -1) const {
    std::vector<int> order;
    for (int m = 0; m < np(); ++m)
      if (m != skip_a && m != skip_b) order.push_back(m);
    return order;
  }

  // Anchor helpers. first/last hit of secondary i on the primary interiors.
  Vertex zhit(int i) const { return ctx.first_hit[static_cast<std::size_t>(i)]; }
  Vertex whit(int i) const { return ctx.last_hit[static_cast<std::size_t>(i)]; }
  int zpath(int i) const { return ctx.first_hit_path[static_cast<std::size_t>(i)]; }
  int wpath(int i) const { return ctx.last_hit_path[static_cast<std::size_t>(i)]; }

  // Secondary path carrying v in its interior, -1 when none does.
  int secondary_holding(Vertex v) const {
    if (v < 0) return -1;
    for (int i = 0; i < nq(); ++i)
      if (v != s2 && v != t2 && Q(i).contains(v)) return i;
    return -1;
  }

  // Vertex of q within positions [from,to] that also lies on `target`,
  // chosen latest (or earliest) along target; -1 when none exists.
  Vertex extreme_hit(const Path& q, int from, int to, const Path& target, bool latest) const {
    Vertex best = -1;
    int best_pos = latest ? -1 : d.order() + 1;
    for (int i = std::max(from, 0); i <= to && i < q.order(); ++i) {
      Vertex v = q.at(i);
      int pos = target.position(v);
      if (pos == -1) continue;
      if (latest ? pos > best_pos : pos < best_pos) {
        best = v;
        best_pos = pos;
      }
    }
    return best;
  }

  // Every pair of one primary and one secondary path that is already
  // disjoint, which happens exactly when some secondary misses a primary.
  bool disjoint_pair(const std::string& id) {
    for (int i = 0; i < nq(); ++i)
      for (int j = 0; j < np(); ++j)
        if (emit(P(j).vertices(), Q(i).vertices(), id)) return true;
    return false;
  }

  // Primary-side paths of length <= max_len (avoiding the secondary
  // terminals) paired against the secondary system.
  bool short_primaries(int max_len, const std::string& id) {
    std::vector<Vertex> stack{s1};
    Bits used(d.order());
    used.set(s1);
    return short_dfs(stack, used, max_len, id);
  }

  bool short_dfs(std::vector<Vertex>& stack, Bits& used, int max_len, const std::string& id) {
    Vertex u = stack.back();
    if (u == t1) return emit_p(stack, id);
    if (static_cast<int>(stack.size()) > max_len) return false;
    const Bits& row = d.out(u);
    for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) {
      if (used.test(v) || v == s2 || v == t2) continue;
      if (v != t1 && static_cast<int>(stack.size()) == max_len) continue;
      used.set(v);
      stack.push_back(v);
      if (short_dfs(stack, used, max_len, id)) return true;
      stack.pop_back();
      used.reset(v);
    }
    return false;
  }
};

Vertex succ1(const Path& p) { return p.order() >= 3 ? p.at(1) : -1; }
Vertex succ2(const Path& p) { return p.order() >= 4 ? p.at(2) : -1; }
Vertex pred1(const Path& p) { return p.order() >= 3 ? p.at(p.order() - 2) : -1; }
Vertex pred2(const Path& p) { return p.order() >= 4 ? p.at(p.order() - 3) : -1; }

// Split engine. Pigeonhole vocabulary per (i0, j0): on P_i0 the two
// vertices before the sink (a then b), on P_j0 the two after the source
// (c then d). Entries ride in from a secondary prefix, exits ride out
// through a secondary suffix.
std::optional<LinkageWitness> run_split_engine(const Digraph& d, const TemplateContext& ctx) {
  Engine e(d, ctx);
  if (e.disjoint_pair("S3-disjoint-pair")) return e.out;
  if (e.short_primaries(4, "S3-short-path")) return e.out;

  struct Entry {
    int q;
    Vertex at;
  };
  std::array<std::vector<Entry>, 3> entries, exits;
  for (int i = 0; i < e.nq(); ++i) {
    if (e.zhit(i) != -1) entries[static_cast<std::size_t>(e.zpath(i))].push_back({i, e.zhit(i)});
    if (e.whit(i) != -1) exits[static_cast<std::size_t>(e.wpath(i))].push_back({i, e.whit(i)});
  }

  for (int i0 = 0; i0 < e.np(); ++i0) {
    if (entries[static_cast<std::size_t>(i0)].empty()) continue;
    Vertex b = pred1(e.P(i0)), a = pred2(e.P(i0));
    for (int j0 = 0; j0 < e.np(); ++j0) {
      if (exits[static_cast<std::size_t>(j0)].empty()) continue;
      Vertex c = succ1(e.P(j0)), dd = succ2(e.P(j0));

      // Jump from the top of P_i0 to the bottom of P_j0.
      for (Vertex f : {a, b}) {
        if (f == -1) continue;
        for (Vertex g : {c, dd}) {
          if (g == -1 || !d.has_arc(f, g)) continue;
          const char* id = g == c ? (f == b ? "S3-C3.1-case1" : "S3-C3.1-case1a")
                                  : (f == b ? "S3-C3.1-sym" : "S3-C3.2-ad");
          for (const Entry& in : entries[static_cast<std::size_t>(i0)])
            for (const Entry& outx : exits[static_cast<std::size_t>(j0)]) {
              auto q = Splice(d)
                           .seg(e.Q(in.q), e.s2, in.at)
                           .seg(e.P(i0), in.at, f)
                           .hop(g)
                           .seg(e.P(j0), g, outx.at)
                           .seg(e.Q(outx.q), outx.at, e.t2)
                           .finish(e.s2, e.t2);
              if (e.emit_q(q, e.others(i0, j0), id)) return e.out;
            }
        }
      }

      // Five-vertex primary through both pigeonhole paths.
      if (a != -1 && c != -1 && dd != -1 && d.has_arc(dd, a)) {
        auto p5 = Splice(d).hop(e.s1).hop(c).hop(dd).hop(a).hop(b).hop(e.t1).finish(e.s1, e.t1);
        if (e.emit_p(p5, "S3-P5-cdab")) return e.out;

        int qa = e.secondary_holding(a), qb = e.secondary_holding(b);
        int qc = e.secondary_holding(c), qd = e.secondary_holding(dd);

        // Escapes: leave through the secondary that owns the anchor.
        for (auto [v, qv] : {std::pair{a, qa}, std::pair{b, qb}}) {
          if (qv == -1) continue;
          for (const Entry& in : entries[static_cast<std::size_t>(i0)]) {
            auto q = Splice(d)
                         .seg(e.Q(in.q), e.s2, in.at)
                         .seg(e.P(i0), in.at, v)
                         .seg(e.Q(qv), v, e.t2)
                         .finish(e.s2, e.t2);
            if (e.emit_q(q, e.others(i0, j0), "S3-escape-top")) return e.out;
          }
        }
        for (auto [v, qv] : {std::pair{c, qc}, std::pair{dd, qd}}) {
          if (qv == -1) continue;
          for (const Entry& outx : exits[static_cast<std::size_t>(j0)]) {
            auto q = Splice(d)
                         .seg(e.Q(qv), e.s2, v)
                         .seg(e.P(j0), v, outx.at)
                         .seg(e.Q(outx.q), outx.at, e.t2)
                         .finish(e.s2, e.t2);
            if (e.emit_q(q, e.others(i0, j0), "S3-escape-bottom")) return e.out;
          }
        }

        if (qa != -1 && qb != -1 && qc != -1 && qd != -1) {
          std::array<int, 4> holders{qa, qb, qc, qd};
          std::sort(holders.begin(), holders.end());
          bool distinct = std::adjacent_find(holders.begin(), holders.end()) == holders.end();
          for (int k0 : e.others(i0, j0)) {
            if (!distinct) break;
            const Path& pk = e.P(k0);
            Vertex x1 = e.extreme_hit(e.Q(qa), e.Q(qa).position(a) + 1, e.Q(qa).order() - 1, pk, true);
            Vertex x2 = e.extreme_hit(e.Q(qb), e.Q(qb).position(b) + 1, e.Q(qb).order() - 1, pk, true);
            Vertex x3 = e.extreme_hit(e.Q(qc), 0, e.Q(qc).position(c) - 1, pk, false);
            Vertex x4 = e.extreme_hit(e.Q(qd), 0, e.Q(qd).position(dd) - 1, pk, false);
            if (x1 == -1 || x2 == -1 || x3 == -1 || x4 == -1) continue;

            // Crossed hits: ride the spare path between them.
            for (auto [xp, qp] : {std::pair{x3, qc}, std::pair{x4, qd}})
              for (auto [xq, qq] : {std::pair{x1, qa}, std::pair{x2, qb}}) {
                if (pk.position(xp) >= pk.position(xq)) continue;
                auto q = Splice(d)
                             .seg(e.Q(qp), e.s2, xp)
                             .seg(pk, xp, xq)
                             .seg(e.Q(qq), xq, e.t2)
                             .finish(e.s2, e.t2);
                if (e.emit_q(q, {k0}, "S3-C3.3-cross")) return e.out;
                if (e.emit(*p5, *q, "S3-C3.3-cross")) return e.out;
              }

            // Backward arc within the spare path.
            for (int ui = pk.position(x3); ui < pk.order() - 1; ++ui)
              for (int vi = 1; vi <= pk.position(x2); ++vi) {
                Vertex u = pk.at(ui), v = pk.at(vi);
                if (!d.has_arc(u, v)) continue;
                auto q = Splice(d)
                             .seg(e.Q(qc), e.s2, x3)
                             .seg(pk, x3, u)
                             .hop(v)
                             .seg(pk, v, x2)
                             .seg(e.Q(qb), x2, e.t2)
                             .finish(e.s2, e.t2);
                if (q && e.emit(*p5, *q, "S3-C3.4-backarc")) return e.out;
                if (e.emit_q(q, {k0}, "S3-C3.4-backarc")) return e.out;
              }

            // Final dichotomy around x2.
            if (d.has_arc(dd, x2)) {
              auto p = Splice(d)
                           .seg(e.P(j0), e.s1, dd)
                           .hop(x2)
                           .seg(pk, x2, e.t1)
                           .finish(e.s1, e.t1);
              if (e.emit_p(p, "S3-final-dx2")) return e.out;
            }
            if (d.has_arc(x2, dd)) {
              auto p = Splice(d)
                           .seg(pk, e.s1, x2)
                           .hop(dd)
                           .hop(a)
                           .seg(e.P(i0), a, e.t1)
                           .finish(e.s1, e.t1);
              if (e.emit_p(p, "S3-final-x2da")) return e.out;
            }
          }
        }
      }
    }
  }
  return e.out;
}

// Semicomplete-split engine, forward direction only.
std::optional<LinkageWitness> run_scsplit_pass(const Digraph& d, const TemplateContext& ctx) {
  Engine e(d, ctx);
  if (e.disjoint_pair("S4-disjoint-pair")) return e.out;
  if (e.short_primaries(3, "S4-short-path")) return e.out;

  struct Entry {
    int q;
    Vertex at;
  };
  std::array<std::vector<Entry>, 3> entries, exits;
  for (int i = 0; i < e.nq(); ++i) {
    if (e.zhit(i) != -1) entries[static_cast<std::size_t>(e.zpath(i))].push_back({i, e.zhit(i)});
    if (e.whit(i) != -1) exits[static_cast<std::size_t>(e.wpath(i))].push_back({i, e.whit(i)});
  }

  // Ride: enter a primary path and leave it again downstream.
  for (int m = 0; m < e.np(); ++m)
    for (const Entry& in : entries[static_cast<std::size_t>(m)])
      for (const Entry& outx : exits[static_cast<std::size_t>(m)]) {
        auto q = Splice(d)
                     .seg(e.Q(in.q), e.s2, in.at)
                     .seg(e.P(m), in.at, outx.at)
                     .seg(e.Q(outx.q), outx.at, e.t2)
                     .finish(e.s2, e.t2);
        if (e.emit_q(q, e.others(m), "S4-ride")) return e.out;
      }

  // Jump between the top of one primary and the bottom of another.
  for (int j = 0; j < e.np(); ++j) {
    Vertex top = pred1(e.P(j));
    if (top == -1) continue;
    for (int k = 0; k < e.np(); ++k) {
      Vertex bottom = succ1(e.P(k));
      if (bottom == -1 || !d.has_arc(top, bottom)) continue;
      for (const Entry& in : entries[static_cast<std::size_t>(j)])
        for (const Entry& outx : exits[static_cast<std::size_t>(k)]) {
          auto q = Splice(d)
                       .seg(e.Q(in.q), e.s2, in.at)
                       .seg(e.P(j), in.at, top)
                       .hop(bottom)
                       .seg(e.P(k), bottom, outx.at)
                       .seg(e.Q(outx.q), outx.at, e.t2)
                       .finish(e.s2, e.t2);
          if (e.emit_q(q, e.others(j, k), "S4-C4.1")) return e.out;
        }
    }
  }

  // Doubled-up pigeonhole block.
  for (int i0 = 0; i0 < e.np(); ++i0) {
    if (entries[static_cast<std::size_t>(i0)].empty()) continue;
    Vertex b = pred1(e.P(i0)), a = pred2(e.P(i0));
    for (int j0 = 0; j0 < e.np(); ++j0) {
      if (exits[static_cast<std::size_t>(j0)].empty()) continue;
      Vertex c = succ1(e.P(j0)), dd = succ2(e.P(j0));

      for (Vertex f : {a, b}) {
        if (f == -1) continue;
        for (Vertex g : {c, dd}) {
          if (g == -1 || !d.has_arc(f, g)) continue;
          for (const Entry& in : entries[static_cast<std::size_t>(i0)])
            for (const Entry& outx : exits[static_cast<std::size_t>(j0)]) {
              auto q = Splice(d)
                           .seg(e.Q(in.q), e.s2, in.at)
                           .seg(e.P(i0), in.at, f)
                           .hop(g)
                           .seg(e.P(j0), g, outx.at)
                           .seg(e.Q(outx.q), outx.at, e.t2)
                           .finish(e.s2, e.t2);
              if (e.emit_q(q, e.others(i0, j0), "S4-C1-jump")) return e.out;
            }
        }
      }

      // Loopback along the entry path through its own source successor.
      Vertex home = succ1(e.P(i0));
      if (a != -1 && home != -1 && d.has_arc(a, home)) {
        for (const Entry& in : entries[static_cast<std::size_t>(i0)])
          for (const Entry& outx : exits[static_cast<std::size_t>(i0)]) {
            auto q = Splice(d)
                         .seg(e.Q(in.q), e.s2, in.at)
                         .seg(e.P(i0), in.at, a)
                         .hop(home)
                         .seg(e.P(i0), home, outx.at)
                         .seg(e.Q(outx.q), outx.at, e.t2)
                         .finish(e.s2, e.t2);
            if (e.emit_q(q, e.others(i0), "S4-C2-loopback")) return e.out;
          }
      }

      if (a == -1 || c == -1) continue;
      if (!d.has_arc(c, a)) continue;
      auto p4 = Splice(d).hop(e.s1).hop(c).hop(a).hop(b).hop(e.t1).finish(e.s1, e.t1);
      if (e.emit_p(p4, "S4-C1-P4")) return e.out;

      int qa = e.secondary_holding(a), qb = e.secondary_holding(b);
      int qc = e.secondary_holding(c);

      for (auto [v, qv] : {std::pair{a, qa}, std::pair{b, qb}}) {
        if (qv == -1) continue;
        for (const Entry& in : entries[static_cast<std::size_t>(i0)]) {
          auto q = Splice(d)
                       .seg(e.Q(in.q), e.s2, in.at)
                       .seg(e.P(i0), in.at, v)
                       .seg(e.Q(qv), v, e.t2)
                       .finish(e.s2, e.t2);
          if (e.emit_q(q, e.others(i0, j0), "S4-C1-escape-top")) return e.out;
        }
      }
      if (qc != -1) {
        for (const Entry& outx : exits[static_cast<std::size_t>(j0)]) {
          auto q = Splice(d)
                       .seg(e.Q(qc), e.s2, c)
                       .seg(e.P(j0), c, outx.at)
                       .seg(e.Q(outx.q), outx.at, e.t2)
                       .finish(e.s2, e.t2);
          if (e.emit_q(q, e.others(i0, j0), "S4-C1-escape-bottom")) return e.out;
        }
      }

      if (qa == -1 || qb == -1 || qc == -1 || qa == qb || qa == qc || qb == qc) continue;
      for (int k0 : e.others(i0, j0)) {
        const Path& pk = e.P(k0);
        Vertex x1 = e.extreme_hit(e.Q(qa), e.Q(qa).position(a) + 1, e.Q(qa).order() - 1, pk, true);
        Vertex x2 = e.extreme_hit(e.Q(qb), e.Q(qb).position(b) + 1, e.Q(qb).order() - 1, pk, true);
        Vertex x3 = e.extreme_hit(e.Q(qc), 0, e.Q(qc).position(c) - 1, pk, false);
        if (x1 == -1 || x2 == -1 || x3 == -1) continue;

        for (auto [xq, qq] : {std::pair{x1, qa}, std::pair{x2, qb}}) {
          if (pk.position(x3) >= pk.position(xq)) continue;
          auto q = Splice(d)
                       .seg(e.Q(qc), e.s2, x3)
                       .seg(pk, x3, xq)
                       .seg(e.Q(qq), xq, e.t2)
                       .finish(e.s2, e.t2);
          if (e.emit_q(q, {k0}, "S4-C1-cross")) return e.out;
          if (p4 && q && e.emit(*p4, *q, "S4-C1-cross")) return e.out;
        }

        // Direct jumps from x3 toward the two sink-side hits.
        struct Jump {
          Vertex via;
          Vertex land;
          int q;
          const char* id;
        };
        std::vector<Jump> jumps;
        if (d.has_arc(x3, x1)) jumps.push_back({-1, x1, qa, "S4-C1-x3x1"});
        if (d.has_arc(x3, x2)) jumps.push_back({-1, x2, qb, "S4-C1-x3x2"});
        int p_x1 = pk.position(x1), p_x2 = pk.position(x2), p_x3 = pk.position(x3);
        if (p_x2 > 0) {
          Vertex u = pk.at(p_x2 - 1);
          if (d.has_arc(x3, u)) jumps.push_back({u, x2, qb, "S4-C1-x3u"});
        }
        if (p_x1 > 0) {
          Vertex v1 = pk.at(p_x1 - 1);
          if (d.has_arc(x3, v1) && d.has_arc(v1, x1)) jumps.push_back({v1, x1, qa, "S4-C1-v1"});
        }
        if (p_x1 + 1 < pk.order()) {
          Vertex v2 = pk.at(p_x1 + 1);
          if (d.has_arc(x3, v2)) jumps.push_back({v2, x2, qb, "S4-C1-v2"});
        }
        if (p_x3 + 1 < pk.order() - 1) {
          Vertex w = pk.at(p_x3 + 1);
          if (d.has_arc(w, x1)) jumps.push_back({w, x1, qa, "S4-C1-wx1"});
        }
        for (const Jump& j : jumps) {
          Splice sp(d);
          sp.seg(e.Q(qc), e.s2, x3);
          if (j.via != -1) {
            sp.hop(j.via);
            if (j.via != j.land) sp.seg(pk, j.via, j.land);
          }
          if (j.via == -1) sp.hop(j.land);
          auto q = sp.seg(e.Q(j.q), j.land, e.t2).finish(e.s2, e.t2);
          if (p4 && q && e.emit(*p4, *q, j.id)) return e.out;
          if (e.emit_q(q, {k0}, j.id)) return e.out;
        }

        // Endgame: reroute the primary through the spare path hits.
        if (d.has_arc(c, x2)) {
          auto p = Splice(d).hop(e.s1).hop(c).hop(x2).seg(pk, x2, e.t1).finish(e.s1, e.t1);
          if (e.emit_p(p, "S4-C1-cx2")) return e.out;
        }
        if (dd != -1 && d.has_arc(dd, x3)) {
          auto p =
              Splice(d).seg(e.P(j0), e.s1, dd).hop(x3).seg(pk, x3, e.t1).finish(e.s1, e.t1);
          if (e.emit_p(p, "S4-C1-dx3")) return e.out;
        }
        for (Vertex xq : {x2, x1}) {
          if (!d.has_arc(xq, c)) continue;
          auto p = Splice(d)
                       .seg(pk, e.s1, xq)
                       .hop(c)
                       .hop(a)
                       .seg(e.P(i0), a, e.t1)
                       .finish(e.s1, e.t1);
          if (e.emit_p(p, "S4-C1-final")) return e.out;
          if (dd != -1 && d.has_arc(x3, dd)) {
            for (const Entry& outx : exits[static_cast<std::size_t>(j0)]) {
              auto q = Splice(d)
                           .seg(e.Q(qc), e.s2, x3)
                           .hop(dd)
                           .seg(e.P(j0), dd, outx.at)
                           .seg(e.Q(outx.q), outx.at, e.t2)
                           .finish(e.s2, e.t2);
              if (p && q && e.emit(*p, *q, "S4-C1-final")) return e.out;
            }
          }
        }
      }

      // Cross-path exit after riding to the top of the entry path.
      for (int p = 0; p < e.np(); ++p) {
        if (p == i0) continue;
        Vertex cc = succ1(e.P(p));
        if (cc == -1 || a == -1 || !d.has_arc(a, cc)) continue;
        for (const Entry& in : entries[static_cast<std::size_t>(i0)])
          for (const Entry& outx : exits[static_cast<std::size_t>(p)]) {
            auto q = Splice(d)
                         .seg(e.Q(in.q), e.s2, in.at)
                         .seg(e.P(i0), in.at, a)
                         .hop(cc)
                         .seg(e.P(p), cc, outx.at)
                         .seg(e.Q(outx.q), outx.at, e.t2)
                         .finish(e.s2, e.t2);
            if (e.emit_q(q, e.others(i0, p), "S4-C2-ac")) return e.out;
          }
      }
    }
  }

  // Wrap: ride to the top of a primary, fall back to its bottom, leave.
  for (int m = 0; m < e.np(); ++m) {
    const Path& pm = e.P(m);
    if (pm.order() < 5) continue;
    Vertex low = pm.at(1), u = pm.at(2);
    Vertex high = pm.at(pm.order() - 2), v = pm.at(pm.order() - 3);
    if (!d.has_arc(high, u) || !d.has_arc(v, low)) continue;
    for (const Entry& in : entries[static_cast<std::size_t>(m)])
      for (const Entry& outx : exits[static_cast<std::size_t>(m)]) {
        Splice sp(d);
        sp.seg(e.Q(in.q), e.s2, in.at).seg(pm, in.at, high).hop(u);
        sp.seg(pm, u, v).hop(low).seg(pm, low, outx.at).seg(e.Q(outx.q), outx.at, e.t2);
        auto q = sp.finish(e.s2, e.t2);
        if (e.emit_q(q, e.others(m), "S4-C3-wrap")) return e.out;
      }
  }

  // Rigid five-vertex endgame: secondary and primary candidates assembled
  // from the frame {source successor, middle, sink predecessor} of each
  // primary path, matched in pairs.
  bool rigid = true;
  for (int m = 0; m < e.np(); ++m)
    if (e.P(m).order() != 5) rigid = false;
  if (rigid) {
    std::vector<Vertex> mids, lows, highs;
    for (int m = 0; m < e.np(); ++m) {
      lows.push_back(e.P(m).at(1));
      mids.push_back(e.P(m).at(2));
      highs.push_back(e.P(m).at(3));
    }
    std::vector<std::vector<Vertex>> qcands, pcands;
    for (Vertex alpha : {highs[0], highs[1], highs[2], lows[0], lows[1], lows[2]})
      for (Vertex y : mids)
        for (Vertex beta : {lows[0], lows[1], lows[2], highs[0], highs[1], highs[2]}) {
          auto q = Splice(d).hop(e.s2).hop(alpha).hop(y).hop(beta).hop(e.t2).finish(e.s2, e.t2);
          if (q && valid_seq(d, e.s2, e.t2, *q) && q->size() == 5) qcands.push_back(*q);
        }
    for (Vertex low : lows)
      for (Vertex y : mids)
        for (Vertex high : highs) {
          auto p = Splice(d).hop(e.s1).hop(low).hop(y).hop(high).hop(e.t1).finish(e.s1, e.t1);
          if (p && valid_seq(d, e.s1, e.t1, *p) && p->size() == 5) pcands.push_back(*p);
        }
    for (int m = 0; m < e.np(); ++m) pcands.push_back(e.P(m).vertices());
    for (const auto& q : qcands)
      for (const auto& p : pcands)
        if (e.emit(p, q, "S4-C3-y2-dichotomy")) return e.out;
  }

  return e.out;
}

std::optional<LinkageWitness> mirror_scsplit(const Digraph& d, const TemplateContext& ctx);

std::optional<LinkageWitness> run_smp_engine(const Digraph& d, const TemplateContext& ctx) {
  Engine e(d, ctx);

  // Short primary over the strong remainder.
  {
    std::vector<std::vector<Vertex>> shorts;
    std::vector<Vertex> stack{e.s1};
    Bits used(d.order());
    used.set(e.s1);
    std::function<void(Vertex)> dfs = [&](Vertex u) {
      if (u == e.t1) {
        shorts.push_back(stack);
        return;
      }
      if (static_cast<int>(stack.size()) > 4) return;
      const Bits& row = d.out(u);
      for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) {
        if (used.test(v) || v == e.s2 || v == e.t2) continue;
        if (v != e.t1 && static_cast<int>(stack.size()) == 4) continue;
        used.set(v);
        stack.push_back(v);
        dfs(v);
        stack.pop_back();
        used.reset(v);
      }
    };
    dfs(e.s1);
    std::stable_sort(shorts.begin(), shorts.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (const auto& pverts : shorts) {
      Bits blocked(d.order());
      for (Vertex v : pverts) blocked.set(v);
      auto rest = delete_vertices(d, blocked);
      int ns = rest.from_parent[static_cast<std::size_t>(e.s2)];
      int nt = rest.from_parent[static_cast<std::size_t>(e.t2)];
      std::vector<int> parent(static_cast<std::size_t>(rest.graph.order()), -1);
      std::vector<Vertex> queue{ns};
      parent[static_cast<std::size_t>(ns)] = ns;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Bits& row = rest.graph.out(queue[head]);
        for (Vertex v = row.next(0); v != -1; v = row.next(v + 1))
          if (parent[static_cast<std::size_t>(v)] == -1) {
            parent[static_cast<std::size_t>(v)] = queue[head];
            queue.push_back(v);
          }
      }
      if (parent[static_cast<std::size_t>(nt)] == -1) continue;
      std::vector<Vertex> qverts;
      for (Vertex v = nt; v != ns; v = parent[static_cast<std::size_t>(v)])
        qverts.push_back(rest.to_parent[static_cast<std::size_t>(v)]);
      qverts.push_back(e.s2);
      std::reverse(qverts.begin(), qverts.end());
      if (e.emit(pverts, qverts, "S5-shortcut")) return e.out;
    }
  }

  if (e.disjoint_pair("S5-disjoint")) return e.out;

  // Anchor surgery on the single secondary path.
  Vertex z = e.zhit(0), w = e.whit(0);
  if (z == -1 || w == -1) return e.out;
  int iz = e.zpath(0), j0 = e.wpath(0);
  const Path& pz = e.P(iz);
  const Path& pw = e.P(j0);
  Vertex top = pred1(pz);
  Vertex low = succ1(pw), low2 = succ2(pw);
  if (top == -1 || low == -1) return e.out;

  std::vector<int> class_of(static_cast<std::size_t>(d.order()), -1);
  if (ctx.parts) {
    int id = 0;
    for (const auto& cls : *ctx.parts) {
      for (Vertex v : cls) class_of[static_cast<std::size_t>(v)] = id;
      ++id;
    }
  }
  Vertex preferred = -1, alternate = -1;
  if (low2 != -1 && class_of[static_cast<std::size_t>(top)] == class_of[static_cast<std::size_t>(low)]) {
    preferred = low2;
    alternate = low;
  } else {
    preferred = low;
    alternate = low2;
  }
  for (Vertex sp : {preferred, alternate}) {
    if (sp == -1 || !d.has_arc(top, sp)) continue;
    auto q = Splice(d)
                 .seg(e.Q(0), e.s2, z)
                 .seg(pz, z, top)
                 .hop(sp)
                 .seg(pw, sp, w)
                 .seg(e.Q(0), w, e.t2)
                 .finish(e.s2, e.t2);
    if (e.emit_q(q, e.others(iz, j0), "S5-anchor-ride")) return e.out;
  }
  if (w == low && low2 != -1 && d.has_arc(top, low2)) {
    for (int ui = pw.position(low2); ui < pw.order() - 1; ++ui) {
      Vertex u = pw.at(ui);
      if (!d.has_arc(u, low)) continue;
      auto q = Splice(d)
                   .seg(e.Q(0), e.s2, z)
                   .seg(pz, z, top)
                   .hop(low2)
                   .seg(pw, low2, u)
                   .hop(low)
                   .seg(e.Q(0), low, e.t2)
                   .finish(e.s2, e.t2);
      if (e.emit_q(q, e.others(iz, j0), "S5-anchor-loopback")) return e.out;
    }
  }
  return e.out;
}

}  // namespace

std::string mode_name(TemplateMode m) {
  switch (m) {
    case TemplateMode::split: return "split";
    case TemplateMode::scsplit: return "scsplit";
    case TemplateMode::smp: return "smp";
  }
  return "?";
}

std::optional<TemplateContext> build_context(const Digraph& d, const LinkageQuery& q,
                                             TemplateMode mode, int rotation) {
  q.check(d);
  TemplateContext ctx;
  ctx.mode = mode;
  ctx.query = q;
  ctx.rotation = rotation;

  if (mode == TemplateMode::split || mode == TemplateMode::scsplit) {
    auto partition = split_partition(d);
    if (!partition) fail("not a split digraph");
    if (mode == TemplateMode::scsplit && !is_semicomplete_split(d))
      fail("not a semicomplete split digraph");
    ctx.partition = std::move(partition);
  } else {
    auto parts = semicomplete_multipartite_parts(d);
    if (!parts) fail("not a semicomplete multipartite digraph");
    if (!is_k_strong(d, 6)) fail("digraph is not 6-strong");
    ctx.parts = std::move(parts);
  }

  const int need_p = mode == TemplateMode::smp ? 4 : 3;
  const int need_q = mode == TemplateMode::split ? 4 : (mode == TemplateMode::scsplit ? 3 : 1);

  auto systems_for = [&](const LinkageQuery& eff)
      -> std::optional<std::pair<std::vector<Path>, std::vector<Path>>> {
    auto del_pair = [&](Vertex keep_a, Vertex keep_b, Vertex drop_a, Vertex drop_b, int k)
        -> std::optional<std::vector<Path>> {
      Bits drop = Bits::of(d.order(), {drop_a, drop_b});
      Induced sub = delete_vertices(d, drop);
      int s = sub.from_parent[static_cast<std::size_t>(keep_a)];
      int t = sub.from_parent[static_cast<std::size_t>(keep_b)];
      auto sys = disjoint_path_system(sub.graph, s, t, k, rotation);
      if (!sys) return std::nullopt;
      std::vector<Path> out;
      for (const Path& p : sys->paths()) {
        std::vector<Vertex> verts;
        for (Vertex v : p.vertices()) verts.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
        out.emplace_back(d, verts);
      }
      return out;
    };
    auto prim = del_pair(eff.s1, eff.t1, eff.s2, eff.t2, need_p);
    if (!prim) return std::nullopt;
    auto sec = del_pair(eff.s2, eff.t2, eff.s1, eff.t1, need_q);
    if (!sec) return std::nullopt;
    return std::pair{std::move(*prim), std::move(*sec)};
  };

  std::optional<std::pair<std::vector<Path>, std::vector<Path>>> systems;
  if (mode == TemplateMode::split) {
    if ((systems = systems_for(q))) {
      ctx.effective = q;
      ctx.swapped = false;
    } else if ((systems = systems_for(q.swapped()))) {
      ctx.effective = q.swapped();
      ctx.swapped = true;
    } else {
      return std::nullopt;
    }
  } else {
    if (!(systems = systems_for(q))) return std::nullopt;
    ctx.effective = q;
    ctx.swapped = false;
  }
  ctx.primary = std::move(systems->first);
  ctx.secondary = std::move(systems->second);

  ctx.primary_interior = Bits(d.order());
  for (const Path& p : ctx.primary) ctx.primary_interior |= p.members();
  ctx.primary_interior.reset(ctx.effective.s1);
  ctx.primary_interior.reset(ctx.effective.t1);

  for (const Path& qp : ctx.secondary) {
    Vertex first = -1, last = -1;
    for (Vertex v : qp.vertices())
      if (ctx.primary_interior.test(v)) {
        if (first == -1) first = v;
        last = v;
      }
    auto path_of = [&](Vertex v) {
      if (v == -1) return -1;
      for (std::size_t j = 0; j < ctx.primary.size(); ++j)
        if (ctx.primary[j].contains(v)) return static_cast<int>(j);
      return -1;
    };
    ctx.first_hit.push_back(first);
    ctx.last_hit.push_back(last);
    ctx.first_hit_path.push_back(path_of(first));
    ctx.last_hit_path.push_back(path_of(last));
  }
  return ctx;
}

namespace {

std::optional<LinkageWitness> mirror_scsplit(const Digraph& d, const TemplateContext& ctx) {
  Digraph rd = reverse(d);
  LinkageQuery rq{ctx.query.t1, ctx.query.s1, ctx.query.t2, ctx.query.s2};
  auto rctx = build_context(rd, rq, TemplateMode::scsplit, ctx.rotation);
  if (!rctx) return std::nullopt;
  auto w = run_scsplit_pass(rd, *rctx);
  if (!w) return std::nullopt;
  auto flip = [&](const Path& p) {
    std::vector<Vertex> verts = p.vertices();
    std::reverse(verts.begin(), verts.end());
    return Path(d, verts);
  };
  return LinkageWitness(d, ctx.query, flip(w->p1()), flip(w->p2()), w->provenance() + "-rev");
}

}  // namespace

std::optional<LinkageWitness> apply_split_templates(const Digraph& d, const TemplateContext& ctx) {
  if (ctx.mode != TemplateMode::split) fail("context mode mismatch");
  return run_split_engine(d, ctx);
}

std::optional<LinkageWitness> apply_scsplit_templates(const Digraph& d,
                                                      const TemplateContext& ctx) {
  if (ctx.mode != TemplateMode::scsplit) fail("context mode mismatch");
  if (auto w = run_scsplit_pass(d, ctx)) return w;
  return mirror_scsplit(d, ctx);
}

std::optional<LinkageWitness> apply_smp_shortcut(const Digraph& d, const TemplateContext& ctx) {
  if (ctx.mode != TemplateMode::smp) fail("context mode mismatch");
  if (!ctx.parts) fail("not a semicomplete multipartite digraph");
  if (!is_k_strong(d, 6)) fail("digraph is not 6-strong");
  return run_smp_engine(d, ctx);
}

TheoremRefutation::TheoremRefutation(TemplateMode m, const Digraph& dg, const LinkageQuery& lq)
    : std::runtime_error("structural statement refuted in mode " + mode_name(m)),
      mode(m), graph(dg), query(lq) {}

bool mode_hypotheses(const Digraph& d, const LinkageQuery& q, TemplateMode mode) {
  q.check(d);
  auto kappa_without = [&](Vertex s, Vertex t, Vertex da, Vertex db, int threshold) {
    Bits drop = Bits::of(d.order(), {da, db});
    Induced sub = delete_vertices(d, drop);
    int ns = sub.from_parent[static_cast<std::size_t>(s)];
    int nt = sub.from_parent[static_cast<std::size_t>(t)];
    return local_connectivity(sub.graph, ns, nt, threshold) >= threshold;
  };
  switch (mode) {
    case TemplateMode::split:
      if (!split_partition(d)) return false;
      return (kappa_without(q.s1, q.t1, q.s2, q.t2, 3) && kappa_without(q.s2, q.t2, q.s1, q.t1, 4)) ||
             (kappa_without(q.s2, q.t2, q.s1, q.t1, 3) && kappa_without(q.s1, q.t1, q.s2, q.t2, 4));
    case TemplateMode::scsplit:
      if (!is_semicomplete_split(d)) return false;
      return kappa_without(q.s1, q.t1, q.s2, q.t2, 3) && kappa_without(q.s2, q.t2, q.s1, q.t1, 3);
    case TemplateMode::smp:
      if (!semicomplete_multipartite_parts(d)) return false;
      return is_k_strong(d, 6);
  }
  return false;
}

LinkageWitness link_with_certificate(const Digraph& d, const LinkageQuery& q, TemplateMode mode) {
  if (!mode_hypotheses(d, q, mode)) fail("mode hypotheses not satisfied");
  for (int rotation = 0; rotation < kDecompositionRetries; ++rotation) {
    auto ctx = build_context(d, q, mode, rotation);
    if (!ctx) break;
    std::optional<LinkageWitness> w;
    switch (mode) {
      case TemplateMode::split: w = run_split_engine(d, *ctx); break;
      case TemplateMode::scsplit:
        w = run_scsplit_pass(d, *ctx);
        if (!w) w = mirror_scsplit(d, *ctx);
        break;
      case TemplateMode::smp: w = run_smp_engine(d, *ctx); break;
    }
    if (w) return *w;
  }
  SearchResult res = two_disjoint_paths(d, q, ~std::uint64_t{0});
  if (res.status == SearchStatus::found) return *res.witness;
  throw TheoremRefutation(mode, d, q);
}

}  // namespace splink
