#include "splink/verify.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "splink/connectivity.hpp"
#include "splink/io.hpp"

namespace splink {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

constexpr std::uint64_t kQuerySalt = 0x71756164ULL;  // query stream vs instance stream

LinkageQuery sample_query(Rng& rng, int n) {
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
  return {v[0], v[1], v[2], v[3]};
}

Family theorem_family(TheoremId id) {
  switch (id) {
    case TheoremId::split6:
    case TheoremId::split_local: return Family::random_split;
    case TheoremId::sc5: return Family::random_semicomplete;
    case TheoremId::scsplit5:
    case TheoremId::scsplit_local: return Family::random_scsplit;
    case TheoremId::smp6: return Family::random_smp;
  }
  return Family::random_split;
}

bool is_local(TheoremId id) {
  return id == TheoremId::split_local || id == TheoremId::scsplit_local;
}

int kappa_between(const Digraph& d, Vertex s, Vertex t, Vertex drop_a, Vertex drop_b, int cap) {
  Bits drop = Bits::of(d.order(), {drop_a, drop_b});
  Induced sub = delete_vertices(d, drop);
  return local_connectivity(sub.graph, sub.from_parent[static_cast<std::size_t>(s)],
                            sub.from_parent[static_cast<std::size_t>(t)], cap);
}

}  // namespace

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::split6: return "split6";
    case TheoremId::split_local: return "split-local";
    case TheoremId::sc5: return "sc5";
    case TheoremId::scsplit5: return "scsplit5";
    case TheoremId::scsplit_local: return "scsplit-local";
    case TheoremId::smp6: return "smp6";
  }
  return "?";
}

std::optional<TheoremId> theorem_from_name(const std::string& name) {
  for (TheoremId id : {TheoremId::split6, TheoremId::split_local, TheoremId::sc5,
                       TheoremId::scsplit5, TheoremId::scsplit_local, TheoremId::smp6})
    if (theorem_name(id) == name) return id;
  return std::nullopt;
}

TemplateMode theorem_mode(TheoremId id) {
  switch (id) {
    case TheoremId::split6:
    case TheoremId::split_local: return TemplateMode::split;
    case TheoremId::sc5:
    case TheoremId::scsplit5:
    case TheoremId::scsplit_local: return TemplateMode::scsplit;
    case TheoremId::smp6: return TemplateMode::smp;
  }
  return TemplateMode::split;
}

bool check_hypotheses(const Digraph& d, const LinkageQuery& q, TheoremId id) {
  q.check(d);
  switch (id) {
    case TheoremId::split6:
      return split_partition(d).has_value() && is_k_strong(d, 6);
    case TheoremId::split_local:
      return mode_hypotheses(d, q, TemplateMode::split);
    case TheoremId::sc5:
      return is_semicomplete(d) && is_k_strong(d, 5);
    case TheoremId::scsplit5:
      return is_semicomplete_split(d) && is_k_strong(d, 5);
    case TheoremId::scsplit_local:
      return mode_hypotheses(d, q, TemplateMode::scsplit);
    case TheoremId::smp6:
      return semicomplete_multipartite_parts(d).has_value() && is_k_strong(d, 6);
  }
  return false;
}

GenSpec default_genspec(TheoremId id, std::uint64_t seed) {
  GenSpec g;
  g.family = theorem_family(id);
  g.seed = seed;
  switch (id) {
    case TheoremId::split6:
      g.n1 = 3; g.n2 = 7; g.k_strong = 6;
      break;
    case TheoremId::split_local:
      g.n1 = 3; g.n2 = 7; g.k_strong = 5;
      break;
    case TheoremId::sc5:
      g.n1 = 3; g.n2 = 7; g.k_strong = 5;
      break;
    case TheoremId::scsplit5:
      g.n1 = 2; g.n2 = 8; g.k_strong = 5;
      break;
    case TheoremId::scsplit_local:
      g.n1 = 2; g.n2 = 8; g.k_strong = 4;
      break;
    case TheoremId::smp6:
      g.n1 = 3; g.n2 = 11; g.k_strong = 6;
      break;
  }
  return g;
}

std::string persist_refutation(const std::string& dir, const std::string& theorem,
                               std::uint64_t seed, int trial, const Digraph& d,
                               const LinkageQuery& q) {
  std::filesystem::create_directories(dir);
  std::string path = dir + "/refute-" + theorem + "-t" + std::to_string(trial) + ".dg";
  std::ostringstream text;
  text << "# refutation: statement=" << theorem << " seed=" << seed << " trial=" << trial
       << "\n";
  text << "# query: s1=" << d.display(q.s1) << " t1=" << d.display(q.t1)
       << " s2=" << d.display(q.s2) << " t2=" << d.display(q.t2) << "\n";
  text << serialize_digraph(d, split_partition(d));
  write_text_file(path, text.str());
  return path;
}

namespace {

struct TrialOut {
  bool pass = false;
  std::uint64_t template_hits = 0;
  std::uint64_t fallback_hits = 0;
  std::optional<std::string> refutation;
};

struct Exhausted {
  std::string msg;
};

TrialOut run_trial(TheoremId id, const GenSpec& gen, const VerifyOptions& opt, int trial) {
  TrialOut out;
  GenSpec g = gen;
  // Deterministic size jitter: base sizes from the GenSpec, spread over a
  // 3x3 window so one run covers a range of orders.
  g.n1 = gen.n1 + trial % 3;
  g.n2 = gen.n2 + (trial / 3) % 3;

  Rng qrng(Rng::mix(Rng::mix(gen.seed, kQuerySalt), static_cast<std::uint64_t>(trial)));
  TemplateMode mode = theorem_mode(id);

  auto certify = [&](const Digraph& d, const LinkageQuery& q) -> bool {
    try {
      LinkageWitness w = link_with_certificate(d, q, mode);
      if (!validate_witness(d, q, w.p1(), w.p2()))
        throw std::logic_error("engine produced an invalid witness");
      if (w.provenance() == "exact-search")
        ++out.fallback_hits;
      else
        ++out.template_hits;
      return true;
    } catch (const TheoremRefutation& r) {
      if (opt.refutation_dir.empty())
        out.refutation = "(unsaved) trial " + std::to_string(trial) + " query " +
                         std::to_string(q.s1) + "," + std::to_string(q.t1) + "," +
                         std::to_string(q.s2) + "," + std::to_string(q.t2);
      else
        out.refutation =
            persist_refutation(opt.refutation_dir, theorem_name(id), gen.seed, trial, d, q);
      return false;
    }
  };

  if (is_local(id)) {
    for (int round = 0; round < 24; ++round) {
      g.seed = Rng::mix(gen.seed, static_cast<std::uint64_t>(trial) * 1009 + round);
      auto inst = random_instance(g);
      if (!inst) continue;
      const Digraph& d = inst->graph;
      for (int attempt = 0; attempt < 300; ++attempt) {
        LinkageQuery q = sample_query(qrng, d.order());
        if (!check_hypotheses(d, q, id)) continue;
        out.pass = certify(d, q);
        return out;
      }
    }
    throw Exhausted{"no admissible (instance, query) pair for " + theorem_name(id) +
                    " at trial " + std::to_string(trial)};
  }

  g.seed = Rng::mix(gen.seed, static_cast<std::uint64_t>(trial) * 1009);
  auto inst = random_instance(g);
  if (!inst)
    throw Exhausted{"instance generation exhausted for " + theorem_name(id) + " at trial " +
                    std::to_string(trial)};
  const Digraph& d = inst->graph;
  if (!check_hypotheses(d, LinkageQuery{0, 1, 2, 3}, id))
    throw std::logic_error("generated instance misses the statement's hypotheses");

  int n = d.order();
  bool exhaustive = opt.query_mode == QueryMode::all ||
                    (opt.query_mode == QueryMode::automatic && n <= 10);
  out.pass = true;
  if (exhaustive) {
    for (Vertex a = 0; a < n && out.pass; ++a)
      for (Vertex b = 0; b < n && out.pass; ++b)
        for (Vertex c = 0; c < n && out.pass; ++c)
          for (Vertex e = 0; e < n && out.pass; ++e) {
            if (a == b || a == c || a == e || b == c || b == e || c == e) continue;
            out.pass = certify(d, {a, b, c, e});
          }
  } else {
    for (int k = 0; k < opt.sample_size && out.pass; ++k)
      out.pass = certify(d, sample_query(qrng, n));
  }
  return out;
}

VerifyReport aggregate(TheoremId id, const GenSpec& gen, int upto,
                       const std::vector<std::optional<TrialOut>>& slots) {
  VerifyReport rep;
  rep.theorem = theorem_name(id);
  rep.trials = upto;
  rep.seed = gen.seed;
  for (int t = 0; t < upto; ++t) {
    const TrialOut& o = *slots[static_cast<std::size_t>(t)];
    rep.passes += o.pass ? 1 : 0;
    rep.template_hits += o.template_hits;
    rep.fallback_hits += o.fallback_hits;
    if (o.refutation) rep.refutation_paths.push_back(*o.refutation);
  }
  return rep;
}

}  // namespace

VerifyReport verify_theorem(TheoremId id, const GenSpec& gen, const VerifyOptions& opt) {
  gen.check();
  if (gen.family != theorem_family(id))
    fail("generator family does not match the statement's class");
  if (opt.trials < 0) fail("trials must be >= 0");
  if (opt.sample_size <= 0) fail("sample size must be positive");
  if (opt.jobs < 1) fail("jobs must be >= 1");

  auto start = std::chrono::steady_clock::now();
  int trials = opt.trials;
  std::vector<std::optional<TrialOut>> slots(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        slots[static_cast<std::size_t>(t)] = run_trial(id, gen, opt, t);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  };
  int jobs = std::max(1, std::min(opt.jobs, trials == 0 ? 1 : trials));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (int t = 0; t < trials; ++t) {
    if (!errors[static_cast<std::size_t>(t)]) continue;
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(t)]);
    } catch (const Exhausted& ex) {
      throw GeneratorExhausted(ex.msg, aggregate(id, gen, t, slots));
    }
  }

  VerifyReport rep = aggregate(id, gen, trials, slots);
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["theorem"] = theorem;
  j["trials"] = trials;
  j["passes"] = passes;
  j["template_hits"] = template_hits;
  j["fallback_hits"] = fallback_hits;
  j["refutation_paths"] = refutation_paths;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

std::string VerifyReport::to_text() const {
  std::ostringstream s;
  s << "statement " << theorem << ": " << passes << "/" << trials << " trials passed\n";
  s << "  certified quadruples: " << (template_hits + fallback_hits) << " (" << template_hits
    << " by template, " << fallback_hits << " by exact fallback)\n";
  s << "  seed " << seed << ", wall time " << wall_time << " s\n";
  if (refutation_paths.empty()) {
    s << "  refutations: none\n";
  } else {
    s << "  refutations:\n";
    for (const std::string& p : refutation_paths) s << "    " << p << "\n";
  }
  return s.str();
}

namespace {

void add_pin(std::vector<PinResult>& pins, const std::string& name, bool pass,
             const std::string& detail) {
  pins.push_back({name, pass, detail});
}

template <typename T>
void add_eq(std::vector<PinResult>& pins, const std::string& name, const T& got,
            const T& want) {
  std::ostringstream s;
  s << "expected " << want << ", got " << got;
  add_pin(pins, name, got == want, s.str());
}

// All simple (s,t)-paths, depth-first in ascending-neighbor order.
void all_paths(const Digraph& d, Vertex t, std::vector<Vertex>& cur, Bits& used,
               std::vector<std::vector<Vertex>>& out) {
  Vertex u = cur.back();
  if (u == t) {
    out.push_back(cur);
    return;
  }
  const Bits& row = d.out(u);
  for (Vertex v = row.next(0); v != -1; v = row.next(v + 1)) {
    if (used.test(v)) continue;
    used.set(v);
    cur.push_back(v);
    all_paths(d, t, cur, used, out);
    cur.pop_back();
    used.reset(v);
  }
}

}  // namespace

std::vector<PinResult> verify_pins() {
  std::vector<PinResult> pins;
  CounterexampleInstance ce = fig1_counterexample();
  const Digraph& d = ce.graph;
  const LinkageQuery q = ce.query;

  add_eq(pins, "order", d.order(), 13);
  add_eq(pins, "arc-count", d.arc_count(), 51);

  auto part = split_partition(d);
  add_pin(pins, "split-partition", part.has_value() && part->v1 == ce.partition.v1,
          part ? "independent side {" + [&] {
            std::string s;
            for (Vertex v : part->v1) s += (s.empty() ? "" : ",") + d.display(v);
            return s;
          }() + "}"
               : "no split partition found");
  add_pin(pins, "not-semicomplete-split", !is_semicomplete_split(d),
          "some independent-side vertex misses a clique-side vertex");

  // Caption facts: three arcs leave s1 once s2,t2 are gone, and three leave
  // s2 once s1,t1 are gone, matching the two connectivity values.
  {
    Bits drop1 = Bits::of(d.order(), {q.s2, q.t2});
    Induced sub1 = delete_vertices(d, drop1);
    add_eq(pins, "outdegree-s1",
           sub1.graph.out_degree(sub1.from_parent[static_cast<std::size_t>(q.s1)]), 3);
    Bits drop2 = Bits::of(d.order(), {q.s1, q.t1});
    Induced sub2 = delete_vertices(d, drop2);
    add_eq(pins, "outdegree-s2",
           sub2.graph.out_degree(sub2.from_parent[static_cast<std::size_t>(q.s2)]), 3);
  }

  add_eq(pins, "kappa-s1t1", kappa_between(d, q.s1, q.t1, q.s2, q.t2, -1), 3);
  add_eq(pins, "kappa-s2t2", kappa_between(d, q.s2, q.t2, q.s1, q.t1, -1), 3);

  // The six pinned 3-vertex separators, all blocking s1 -> t1 once s2 and
  // t2 are removed.
  {
    Bits drop = Bits::of(d.order(), {q.s2, q.t2});
    Induced sub = delete_vertices(d, drop);
    Vertex ns = sub.from_parent[static_cast<std::size_t>(q.s1)];
    Vertex nt = sub.from_parent[static_cast<std::size_t>(q.t1)];
    auto sep_pin = [&](Vertex av, Vertex bv, Vertex cv) {
      Bits set(sub.graph.order());
      for (Vertex v : {av, bv, cv}) set.set(sub.from_parent[static_cast<std::size_t>(v)]);
      std::string name =
          "separator-" + d.display(av) + "-" + d.display(bv) + "-" + d.display(cv);
      add_pin(pins, name, is_separator(sub.graph, set, ns, nt), "blocks s1 -> t1");
    };
    for (int i = 0; i < 3; ++i) {
      Vertex zi = 10 + i, y1 = 7 + (i + 1) % 3, x2 = 4 + (i + 2) % 3, y2 = 7 + (i + 2) % 3;
      sep_pin(zi, y1, x2);
      sep_pin(zi, y1, y2);
    }
  }

  // The advertised path families are genuine internally disjoint systems
  // avoiding the opposite terminal pair.
  {
    bool ok = true;
    std::string detail = "both families check out";
    try {
      std::vector<Path> ps, qs;
      for (int i = 0; i < 3; ++i) {
        ps.emplace_back(d, std::vector<Vertex>{q.s1, 4 + i, 7 + i, 10 + i, q.t1});
        qs.emplace_back(
            d, std::vector<Vertex>{q.s2, 10 + i, 7 + (i + 1) % 3, 4 + (i + 2) % 3, q.t2});
      }
      PathSystem psys(q.s1, q.t1, ps);
      PathSystem qsys(q.s2, q.t2, qs);
      for (const Path& p : ps) ok = ok && !p.contains(q.s2) && !p.contains(q.t2);
      for (const Path& p : qs) ok = ok && !p.contains(q.s1) && !p.contains(q.t1);
      if (!ok) detail = "a family touches the opposite terminals";
    } catch (const std::exception& ex) {
      ok = false;
      detail = ex.what();
    }
    add_pin(pins, "caption-path-families", ok, detail);
  }

  {
    SearchResult res = two_disjoint_paths(d, q, ~std::uint64_t{0});
    add_pin(pins, "query-not-good", res.status == SearchStatus::not_good,
            "exact search proves no disjoint pair");
  }
  {
    TwoLinkedVerdict v = is_2_linked(d);
    add_pin(pins, "first-bad-quadruple",
            !v.linked && v.counterexample && *v.counterexample == q,
            "lexicographic scan stops at the terminal quadruple");
  }
  add_pin(pins, "local-hypotheses-tight",
          !check_hypotheses(d, q, TheoremId::split_local),
          "3+3 misses the 3+4 requirement in both orientations");

  // Any (s2,t2)-path disjoint from an (s1,t1)-path would avoid s1 and t1;
  // in that digraph every (s2,t2)-path swallows one of the six pinned sets,
  // each of which meets every (s1,t1)-path in D - {s2,t2}. Hence no pair.
  {
    Bits drop = Bits::of(d.order(), {q.s1, q.t1});
    Induced sub = delete_vertices(d, drop);
    std::vector<std::vector<Vertex>> paths;
    std::vector<Vertex> cur{sub.from_parent[static_cast<std::size_t>(q.s2)]};
    Bits used(sub.graph.order());
    used.set(cur[0]);
    all_paths(sub.graph, sub.from_parent[static_cast<std::size_t>(q.t2)], cur, used, paths);
    bool all_covered = !paths.empty();
    for (const auto& pv : paths) {
      Bits members(d.order());
      for (Vertex v : pv) members.set(sub.to_parent[static_cast<std::size_t>(v)]);
      bool covered = false;
      for (int i = 0; i < 3 && !covered; ++i) {
        Vertex zi = 10 + i, y1 = 7 + (i + 1) % 3, x2 = 4 + (i + 2) % 3, y2 = 7 + (i + 2) % 3;
        covered = (members.test(zi) && members.test(y1) && members.test(x2)) ||
                  (members.test(zi) && members.test(y1) && members.test(y2));
      }
      all_covered = all_covered && covered;
      if (!covered) break;
    }
    add_pin(pins, "paths-cover-separators", all_covered,
            std::to_string(paths.size()) +
                " (s2,t2)-paths once s1,t1 are gone, each containing a pinned set");
  }

  return pins;
}

ProbeReport run_probe(const std::string& probe, int trials, std::uint64_t seed,
                      const std::string& artifact_dir) {
  if (trials < 0) fail("trials must be >= 0");
  ProbeReport rep;
  rep.probe = probe;
  rep.trials = trials;
  rep.seed = seed;

  auto record = [&](int trial, const Digraph& d, const LinkageQuery& q) {
    ++rep.hits;
    if (artifact_dir.empty())
      rep.artifact_paths.push_back("(unsaved) trial " + std::to_string(trial));
    else
      rep.artifact_paths.push_back(
          persist_refutation(artifact_dir, "probe-" + probe, seed, trial, d, q));
  };

  if (probe == "split5") {
    // Open question: is some 5-strong split digraph not 2-linked? Sparser
    // samples are likelier witnesses, so the arc density cycles downward.
    for (int trial = 0; trial < trials; ++trial) {
      GenSpec g;
      g.family = Family::random_split;
      g.n1 = 3 + trial % 3;
      g.n2 = 7 + (trial / 3) % 3;
      g.p_arc = 0.9 - 0.1 * ((trial / 9) % 4);
      g.k_strong = 5;
      g.seed = Rng::mix(seed, static_cast<std::uint64_t>(trial));
      auto inst = random_instance(g);
      if (!inst) continue;
      Rng qrng(Rng::mix(Rng::mix(seed, kQuerySalt), static_cast<std::uint64_t>(trial)));
      for (int k = 0; k < 50; ++k) {
        LinkageQuery q = sample_query(qrng, inst->graph.order());
        if (!is_good_tuple(inst->graph, q)) {
          record(trial, inst->graph, q);
          break;
        }
      }
    }
    return rep;
  }

  if (probe == "scsplit-weak") {
    // Open question: can the (3,3) local condition drop to (3,2)? Hunt for
    // a bad quadruple whose one-sided connectivities are exactly (3,2).
    for (int trial = 0; trial < trials; ++trial) {
      GenSpec g;
      g.family = Family::random_scsplit;
      g.n1 = 2 + trial % 2;
      g.n2 = 7 + (trial / 2) % 3;
      g.p_arc = 0.8 - 0.1 * ((trial / 6) % 3);
      g.k_strong = 2;
      g.seed = Rng::mix(seed, static_cast<std::uint64_t>(trial));
      auto inst = random_instance(g);
      if (!inst) continue;
      const Digraph& d = inst->graph;
      Rng qrng(Rng::mix(Rng::mix(seed, kQuerySalt), static_cast<std::uint64_t>(trial)));
      for (int k = 0; k < 100; ++k) {
        LinkageQuery q = sample_query(qrng, d.order());
        if (kappa_between(d, q.s1, q.t1, q.s2, q.t2, 3) < 3) continue;
        if (kappa_between(d, q.s2, q.t2, q.s1, q.t1, -1) != 2) continue;
        if (!is_good_tuple(d, q)) {
          record(trial, d, q);
          break;
        }
      }
    }
    return rep;
  }

  fail("unknown probe '" + probe + "' (expected split5 or scsplit-weak)");
}

std::string ProbeReport::to_text() const {
  std::ostringstream s;
  s << "probe " << probe << ": " << trials << " trials, " << hits << " hit"
    << (hits == 1 ? "" : "s") << "\n";
  if (hits == 0) {
    s << "  no counterexample found (none asserted either way)\n";
  } else {
    for (const std::string& p : artifact_paths) s << "  " << p << "\n";
  }
  return s.str();
}

}  // namespace splink
