#include "splink/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "splink/connectivity.hpp"

namespace splink {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

bool Rng::chance(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  // 53-bit mantissa comparison keeps the draw platform independent.
  return static_cast<double>(next() >> 11) < p * 9007199254740992.0;
}

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
  Rng r(a ^ (b * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return r.next();
}

std::string family_name(Family f) {
  switch (f) {
    case Family::fig1: return "fig1";
    case Family::random_split: return "random-split";
    case Family::random_scsplit: return "random-scsplit";
    case Family::random_smp: return "random-smp";
    case Family::random_tournament: return "random-tournament";
    case Family::random_semicomplete: return "random-semicomplete";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::fig1, Family::random_split, Family::random_scsplit, Family::random_smp,
                   Family::random_tournament, Family::random_semicomplete})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

void GenSpec::check() const {
  if (n1 < 0 || n2 < 0) fail("negative side size");
  if (p_arc < 0.0 || p_arc > 1.0 || p_bidir < 0.0 || p_bidir > 1.0)
    fail("probability outside [0,1]");
  if (k_strong < 0) fail("negative strongness target");
  if (k_strong > 0 && n1 + n2 < k_strong + 1) fail("order too small for the strongness target");
  if (max_attempts <= 0) fail("max_attempts must be positive");
}

namespace {

// At least one arc between u and v: orientation uniform, both with p_bidir.
void join(std::vector<Arc>& arcs, Rng& rng, Vertex u, Vertex v, double p_bidir) {
  if (rng.chance(p_bidir)) {
    arcs.push_back({u, v});
    arcs.push_back({v, u});
  } else if (rng.below(2) == 0) {
    arcs.push_back({u, v});
  } else {
    arcs.push_back({v, u});
  }
}

Digraph sample_once(const GenSpec& spec, Rng& rng, std::optional<SplitPartition>& partition,
                    std::optional<std::vector<std::vector<Vertex>>>& parts) {
  partition.reset();
  parts.reset();
  std::vector<Arc> arcs;
  switch (spec.family) {
    case Family::fig1:
      fail("unreachable");
    case Family::random_split:
    case Family::random_scsplit: {
      const int n = spec.n1 + spec.n2;
      if (spec.n1 < 1 || spec.n2 < 1) fail("split families need both sides nonempty");
      SplitPartition p;
      for (Vertex v = 0; v < spec.n1; ++v) p.v1.push_back(v);
      for (Vertex v = spec.n1; v < n; ++v) p.v2.push_back(v);
      for (Vertex u : p.v2)
        for (Vertex v : p.v2)
          if (u < v) join(arcs, rng, u, v, spec.p_bidir);
      for (Vertex u : p.v1)
        for (Vertex v : p.v2) {
          if (spec.family == Family::random_scsplit) {
            join(arcs, rng, u, v, spec.p_bidir);
          } else {
            if (rng.chance(spec.p_arc)) arcs.push_back({u, v});
            if (rng.chance(spec.p_arc)) arcs.push_back({v, u});
          }
        }
      partition = std::move(p);
      return Digraph(n, arcs);
    }
    case Family::random_smp: {
      const int n = spec.n1 + spec.n2;
      if (spec.n1 < 1) fail("multipartite family needs a nonempty leading class");
      std::vector<std::vector<Vertex>> classes;
      classes.push_back({});
      for (Vertex v = 0; v < spec.n1; ++v) classes.back().push_back(v);
      Vertex v = spec.n1;
      while (v < n) {
        int size = static_cast<int>(rng.below(3)) + 1;
        size = std::min(size, n - v);
        classes.push_back({});
        for (int i = 0; i < size; ++i) classes.back().push_back(v++);
      }
      for (std::size_t a = 0; a < classes.size(); ++a)
        for (std::size_t b = a + 1; b < classes.size(); ++b)
          for (Vertex u : classes[a])
            for (Vertex w : classes[b]) join(arcs, rng, u, w, spec.p_bidir);
      parts = std::move(classes);
      return Digraph(n, arcs);
    }
    case Family::random_tournament: {
      const int n = spec.n1 + spec.n2;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex w = u + 1; w < n; ++w)
          arcs.push_back(rng.below(2) == 0 ? Arc{u, w} : Arc{w, u});
      return Digraph(n, arcs);
    }
    case Family::random_semicomplete: {
      const int n = spec.n1 + spec.n2;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex w = u + 1; w < n; ++w) join(arcs, rng, u, w, spec.p_bidir);
      return Digraph(n, arcs);
    }
  }
  fail("unknown family");
}

}  // namespace

std::optional<GeneratedInstance> random_instance(const GenSpec& spec) {
  spec.check();
  if (spec.family == Family::fig1) {
    auto fixed = fig1_counterexample();
    GeneratedInstance inst{std::move(fixed.graph), std::move(fixed.partition), std::nullopt, 1};
    return inst;
  }
  for (int attempt = 1; attempt <= spec.max_attempts; ++attempt) {
    Rng rng(Rng::mix(spec.seed, static_cast<std::uint64_t>(attempt)));
    GeneratedInstance inst;
    std::optional<SplitPartition> partition;
    std::optional<std::vector<std::vector<Vertex>>> parts;
    Digraph d = sample_once(spec, rng, partition, parts);
    if (spec.k_strong > 0 && !is_k_strong(d, spec.k_strong)) continue;
    inst.graph = std::move(d);
    inst.partition = std::move(partition);
    inst.parts = std::move(parts);
    inst.attempts = attempt;
    return inst;
  }
  return std::nullopt;
}

CounterexampleInstance fig1_counterexample() {
  // Ids: s1 t1 s2 t2 | x1 x2 x3 | y1 y2 y3 | z1 z2 z3.
  const Vertex s1 = 0, t1 = 1, s2 = 2, t2 = 3;
  const Vertex x[3] = {4, 5, 6}, y[3] = {7, 8, 9}, z[3] = {10, 11, 12};
  std::vector<Arc> arcs;
  for (int i = 0; i < 3; ++i) arcs.push_back({y[i], y[(i + 1) % 3]});
  arcs.push_back({s1, s2});
  arcs.push_back({t1, s2});
  arcs.push_back({s1, t2});
  arcs.push_back({t1, t2});
  arcs.push_back({t1, s1});
  arcs.push_back({t2, s2});
  for (int i = 0; i < 3; ++i) {
    arcs.push_back({s1, x[i]});
    arcs.push_back({z[i], t1});
    arcs.push_back({t1, y[i]});
    arcs.push_back({y[i], s1});
  }
  for (int i = 0; i < 3; ++i) {
    arcs.push_back({x[i], y[i]});
    arcs.push_back({y[i], z[i]});
  }
  for (int i = 0; i < 3; ++i) {
    arcs.push_back({x[i], s2});
    arcs.push_back({y[i], s2});
    arcs.push_back({s2, z[i]});
    arcs.push_back({t2, y[i]});
    arcs.push_back({t2, z[i]});
    arcs.push_back({x[i], t2});
  }
  for (int i = 0; i < 3; ++i) {
    arcs.push_back({z[i], y[(i + 1) % 3]});
    arcs.push_back({y[(i + 1) % 3], x[(i + 2) % 3]});
  }
  std::vector<std::string> labels = {"s1", "t1", "s2", "t2", "x1", "x2", "x3",
                                     "y1", "y2", "y3", "z1", "z2", "z3"};
  Digraph d(13, arcs, std::move(labels));
  SplitPartition partition;
  partition.v1 = {x[0], x[1], x[2], z[0], z[1], z[2]};
  partition.v2 = {s1, t1, s2, t2, y[0], y[1], y[2]};
  std::sort(partition.v1.begin(), partition.v1.end());
  std::sort(partition.v2.begin(), partition.v2.end());
  return {std::move(d), std::move(partition), LinkageQuery{s1, t1, s2, t2}};
}

}  // namespace splink
