// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion pins its own tolerance and runtime budget.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "splink/classes.hpp"
#include "splink/connectivity.hpp"
#include "splink/constructive.hpp"
#include "splink/generators.hpp"
#include "splink/io.hpp"
#include "splink/linkage.hpp"
#include "splink/verify.hpp"

using namespace splink;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int hardware_jobs() {
  unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hc == 0 ? 1u : hc, 4u));
}

Outcome fail(std::string detail) { return {false, std::move(detail)}; }
Outcome pass(std::string detail) { return {true, std::move(detail)}; }

// 1. Fixed counterexample pins, exact, under a second.
Outcome criterion_pins() {
  auto pins = verify_pins();
  int bad = 0;
  std::string first;
  for (const auto& p : pins)
    if (!p.pass && bad++ == 0) first = p.name + ": " + p.detail;
  if (bad > 0)
    return fail(std::to_string(bad) + "/" + std::to_string(pins.size()) +
                " pins failed, first: " + first);
  return pass(std::to_string(pins.size()) + " exact pins hold");
}

// 2. Flow connectivity equals brute-force disjoint-path packing.
Outcome criterion_menger() {
  Rng rng(0xacc2);
  int checked = 0;
  for (int it = 0; it < 500; ++it) {
    int n = 3 + static_cast<int>(rng.below(6));  // orders 3..8
    double p = 0.15 + 0.15 * static_cast<double>(rng.below(5));
    Digraph d = oracle::random_digraph(n, p, rng.next());
    Vertex x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    Vertex y = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    if (x == y) y = (y + 1) % n;
    int flow = local_connectivity(d, x, y);
    int brute = oracle::max_disjoint_paths(d, x, y);
    if (flow != brute)
      return fail("disagreement at iteration " + std::to_string(it) + ": flow " +
                  std::to_string(flow) + " vs brute " + std::to_string(brute));
    ++checked;
  }
  return pass(std::to_string(checked) + " digraphs, exact agreement");
}

// 3. Exact two-path solver equals exhaustive path-pair enumeration.
Outcome criterion_solver() {
  Rng rng(0xacc3);
  int checked = 0, positives = 0;
  for (int it = 0; it < 500; ++it) {
    int n = 4 + static_cast<int>(rng.below(4));  // orders 4..7
    double p = 0.2 + 0.1 * static_cast<double>(rng.below(5));
    Digraph d = oracle::random_digraph(n, p, rng.next());
    Vertex v[4];
    for (int i = 0; i < 4; ++i) {
      for (;;) {
        Vertex c = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        bool dup = false;
        for (int j = 0; j < i; ++j) dup = dup || v[j] == c;
        if (!dup) {
          v[i] = c;
          break;
        }
      }
    }
    LinkageQuery q{v[0], v[1], v[2], v[3]};
    bool brute = oracle::good_tuple(d, q);
    SearchResult res = two_disjoint_paths(d, q, ~std::uint64_t{0});
    if ((res.status == SearchStatus::found) != brute)
      return fail("disagreement at iteration " + std::to_string(it));
    if (brute) {
      ++positives;
      if (!res.witness || !validate_witness(d, q, res.witness->p1(), res.witness->p2()))
        return fail("found verdict without a valid witness at iteration " +
                    std::to_string(it));
    }
    ++checked;
  }
  return pass(std::to_string(checked) + " queries, exact agreement (" +
              std::to_string(positives) + " positive)");
}

// 4. Six statement suites at desk scale: zero refutations.
Outcome criterion_suites() {
  VerifyOptions global;
  global.trials = 50;
  global.query_mode = QueryMode::sampled;
  global.sample_size = 100;
  global.jobs = hardware_jobs();

  VerifyOptions local;
  local.trials = 200;
  local.jobs = hardware_jobs();

  std::ostringstream detail;
  for (TheoremId id : {TheoremId::split6, TheoremId::scsplit5, TheoremId::sc5,
                       TheoremId::smp6, TheoremId::split_local, TheoremId::scsplit_local}) {
    bool is_local = id == TheoremId::split_local || id == TheoremId::scsplit_local;
    const VerifyOptions& opt = is_local ? local : global;
    VerifyReport rep = verify_theorem(id, default_genspec(id, 2024), opt);
    if (!rep.refutation_paths.empty())
      return fail(rep.theorem + ": " + std::to_string(rep.refutation_paths.size()) +
                  " refutation(s), first at " + rep.refutation_paths.front());
    if (rep.passes != rep.trials)
      return fail(rep.theorem + ": only " + std::to_string(rep.passes) + "/" +
                  std::to_string(rep.trials) + " trials passed");
    detail << rep.theorem << " " << rep.passes << "/" << rep.trials << " (templates "
           << rep.template_hits << ", fallback " << rep.fallback_hits << "); ";
  }
  return pass(detail.str());
}

// 5. The counterexample sits exactly on the boundary: both one-sided
// connectivities reach 3, yet the local hypotheses fail both ways round.
Outcome criterion_tightness() {
  auto fig = fig1_counterexample();
  const Digraph& d = fig.graph;
  const LinkageQuery q = fig.query;
  auto kappa = [&](Vertex s, Vertex t, Vertex da, Vertex db) {
    Induced sub = delete_vertices(d, Bits::of(d.order(), {da, db}));
    return local_connectivity(sub.graph, sub.from_parent[static_cast<std::size_t>(s)],
                              sub.from_parent[static_cast<std::size_t>(t)]);
  };
  int k1 = kappa(q.s1, q.t1, q.s2, q.t2);
  int k2 = kappa(q.s2, q.t2, q.s1, q.t1);
  if (k1 != 3 || k2 != 3)
    return fail("one-sided connectivities (" + std::to_string(k1) + "," + std::to_string(k2) +
                "), expected (3,3)");
  if (check_hypotheses(d, q, TheoremId::split_local))
    return fail("local hypotheses unexpectedly hold");
  if (mode_hypotheses(d, q.swapped(), TemplateMode::split))
    return fail("local hypotheses hold in the swapped orientation");
  if (oracle::good_tuple(d, q)) return fail("quadruple is good after all");
  return pass("(3,3) reached, 3+4 missed both ways, quadruple not good");
}

// 6. Structural invariants: reversal duality, linked => 2-strong, and
// minimality of every decomposed path.
Outcome criterion_invariants() {
  Rng rng(0xacc6);
  int dual = 0;
  for (int it = 0; it < 200; ++it) {
    int n = 4 + static_cast<int>(rng.below(4));
    Digraph d = oracle::random_digraph(n, 0.4, rng.next());
    LinkageQuery q{0, 1, 2, 3};
    LinkageQuery qr{1, 0, 3, 2};
    if (is_good_tuple(d, q) != is_good_tuple(reverse(d), qr))
      return fail("reversal duality broken at iteration " + std::to_string(it));
    ++dual;
  }

  int linked_seen = 0;
  for (int it = 0; it < 120; ++it) {
    int n = 4 + static_cast<int>(rng.below(3));  // orders 4..6
    Digraph d = oracle::random_digraph(n, 0.75, rng.next());
    TwoLinkedVerdict v = is_2_linked(d);
    if (!v.linked) continue;
    ++linked_seen;
    if (!is_k_strong(d, 2))
      return fail("2-linked digraph of order " + std::to_string(n) + " is not 2-strong");
  }
  if (linked_seen < 10) return fail("too few linked instances to exercise the implication");

  int minimal_paths = 0;
  for (int it = 0; it < 150; ++it) {
    int n = 5 + static_cast<int>(rng.below(4));
    Digraph d = oracle::random_digraph(n, 0.5, rng.next());
    Vertex x = 0, y = n - 1;
    int k = local_connectivity(d, x, y);
    if (k == 0) continue;
    auto sys = disjoint_path_system(d, x, y, k);
    if (!sys) return fail("flow promised " + std::to_string(k) + " paths, extraction failed");
    for (const Path& p : sys->paths()) {
      if (!is_minimal(d, p)) return fail("decomposed path is not minimal");
      if (!(make_minimal(d, p) == p)) return fail("make_minimal moved a minimal path");
      ++minimal_paths;
    }
  }
  return pass(std::to_string(dual) + " dual pairs, " + std::to_string(linked_seen) +
              " linked instances 2-strong, " + std::to_string(minimal_paths) +
              " decomposed paths minimal");
}

// 7. Determinism: serialization and verify reports are byte-stable, and the
// report is independent of the worker count.
Outcome criterion_determinism() {
  auto fig = fig1_counterexample();
  std::string s1 = serialize_digraph(fig.graph, fig.partition);
  std::string s2 = serialize_digraph(fig1_counterexample().graph, fig.partition);
  if (s1 != s2) return fail("counterexample serialization drifted");
  if (parse_digraph(s1).graph != fig.graph) return fail("round-trip changed the digraph");

  GenSpec spec;
  spec.family = Family::random_scsplit;
  spec.n1 = 2;
  spec.n2 = 8;
  spec.k_strong = 5;
  spec.seed = 3;
  auto a = random_instance(spec);
  auto b = random_instance(spec);
  if (!a || !b) return fail("seeded generation failed");
  if (serialize_digraph(a->graph, a->partition) != serialize_digraph(b->graph, b->partition))
    return fail("same seed, different instance bytes");

  GenSpec gen = default_genspec(TheoremId::scsplit5, 19);
  VerifyOptions opt;
  opt.trials = 4;
  opt.query_mode = QueryMode::sampled;
  opt.sample_size = 10;
  std::string r1 = verify_theorem(TheoremId::scsplit5, gen, opt).to_json();
  std::string r2 = verify_theorem(TheoremId::scsplit5, gen, opt).to_json();
  VerifyOptions threaded = opt;
  threaded.jobs = 3;
  std::string r3 = verify_theorem(TheoremId::scsplit5, gen, threaded).to_json();
  if (r1 != r2) return fail("verify report differs between identical runs");
  if (r1 != r3) return fail("verify report depends on the worker count");
  return pass("serialization and reports byte-stable, jobs-independent");
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "counterexample pins", 1.0, criterion_pins},
      {2, "connectivity oracle equivalence", 60.0, criterion_menger},
      {3, "exact-solver oracle equivalence", 60.0, criterion_solver},
      {4, "statement suites, zero refutations", 600.0, criterion_suites},
      {5, "tightness of the local condition", 1.0, criterion_tightness},
      {6, "structural invariants", 60.0, criterion_invariants},
      {7, "determinism", 120.0, criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      out.pass = false;
      out.detail += " [over budget: " + std::to_string(secs) + " s > " +
                    std::to_string(c.budget_seconds) + " s]";
    }
    if (!out.pass) ++failures;
    std::printf("%s  criterion %d: %s (%.2f s) — %s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.label, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
