#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splink/classes.hpp"
#include "splink/connectivity.hpp"
#include "splink/constructive.hpp"
#include "splink/core.hpp"
#include "splink/generators.hpp"
#include "splink/io.hpp"
#include "splink/linkage.hpp"
#include "splink/verify.hpp"

namespace {

using namespace splink;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kNegative = 2;
constexpr int kExhausted = 3;

Vertex resolve_or_throw(const Digraph& d, const std::string& token) {
  auto v = d.resolve(token);
  if (!v) throw std::invalid_argument("unknown vertex '" + token + "'");
  return *v;
}

std::vector<Vertex> resolve_list(const Digraph& d, const std::string& csv) {
  std::vector<Vertex> out;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    out.push_back(resolve_or_throw(d, token));
  }
  return out;
}

std::string path_line(const Digraph& d, const Path& p) {
  std::string s;
  for (Vertex v : p.vertices()) {
    if (!s.empty()) s += " -> ";
    s += d.display(v);
  }
  return s;
}

// Engine whose hypotheses hold for this instance and quadruple, trying the
// most structured class first.
std::optional<TemplateMode> pick_mode(const Digraph& d, const LinkageQuery& q) {
  auto admissible = [&](TemplateMode m) {
    try {
      return mode_hypotheses(d, q, m);
    } catch (const std::invalid_argument&) {
      return false;
    }
  };
  for (TemplateMode m : {TemplateMode::scsplit, TemplateMode::split, TemplateMode::smp})
    if (admissible(m)) return m;
  return std::nullopt;
}

int cmd_classify(const std::string& file) {
  DigraphDocument doc = read_digraph_file(file);
  const Digraph& d = doc.graph;
  std::cout << "order " << d.order() << ", arcs " << d.arc_count() << "\n";

  auto part = doc.partition ? doc.partition : split_partition(d);
  if (part) {
    std::string v1;
    for (Vertex v : part->v1) v1 += (v1.empty() ? "" : ",") + d.display(v);
    std::cout << "split: yes (independent side {" << v1 << "})\n";
  } else {
    std::cout << "split: no\n";
  }
  std::cout << "semicomplete: " << (is_semicomplete(d) ? "yes" : "no") << "\n";
  std::cout << "semicomplete split: " << (is_semicomplete_split(d) ? "yes" : "no") << "\n";
  std::cout << "tournament: " << (is_tournament(d) ? "yes" : "no") << "\n";
  if (auto parts = semicomplete_multipartite_parts(d)) {
    std::cout << "semicomplete multipartite: yes (" << parts->size() << " classes)\n";
  } else {
    std::cout << "semicomplete multipartite: no\n";
  }
  int k = 0;
  while (k < d.order() && is_k_strong(d, k + 1)) ++k;
  std::cout << "strong connectivity: " << k << "\n";
  return kOk;
}

int cmd_kappa(const std::string& file, const std::string& from, const std::string& to,
              const std::string& del_csv) {
  DigraphDocument doc = read_digraph_file(file);
  Digraph d = doc.graph;
  Vertex s = resolve_or_throw(d, from), t = resolve_or_throw(d, to);
  if (!del_csv.empty()) {
    std::vector<Vertex> del = resolve_list(d, del_csv);
    Bits drop = Bits::of(d.order(), del);
    if (drop.test(s) || drop.test(t))
      throw std::invalid_argument("--delete must not contain the endpoints");
    Induced sub = delete_vertices(d, drop);
    s = sub.from_parent[static_cast<std::size_t>(s)];
    t = sub.from_parent[static_cast<std::size_t>(t)];
    d = sub.graph;
  }
  std::cout << local_connectivity(d, s, t) << "\n";
  return kOk;
}

int cmd_kstrong(const std::string& file, int k) {
  DigraphDocument doc = read_digraph_file(file);
  bool yes = is_k_strong(doc.graph, k);
  std::cout << (yes ? "yes" : "no") << "\n";
  return yes ? kOk : kNegative;
}

int cmd_link2(const std::string& file, const std::string& s1, const std::string& t1,
              const std::string& s2, const std::string& t2, const std::string& method,
              std::uint64_t budget, const std::string& mode_name_arg, int rotation) {
  DigraphDocument doc = read_digraph_file(file);
  const Digraph& d = doc.graph;
  LinkageQuery q{resolve_or_throw(d, s1), resolve_or_throw(d, t1), resolve_or_throw(d, s2),
                 resolve_or_throw(d, t2)};
  q.check(d);

  auto pick = [&]() -> TemplateMode {
    if (mode_name_arg == "split") return TemplateMode::split;
    if (mode_name_arg == "scsplit") return TemplateMode::scsplit;
    if (mode_name_arg == "smp") return TemplateMode::smp;
    auto m = pick_mode(d, q);
    if (!m)
      throw std::invalid_argument(
          "no engine's hypotheses hold here; pass --method exact or --mode");
    return *m;
  };

  auto show = [&](const LinkageWitness& w) {
    std::cout << "good\n";
    std::cout << "P1: " << path_line(d, w.p1()) << "\n";
    std::cout << "P2: " << path_line(d, w.p2()) << "\n";
    std::cout << "provenance: " << w.provenance() << "\n";
  };

  if (method == "exact") {
    SearchResult res = two_disjoint_paths(d, q, budget);
    switch (res.status) {
      case SearchStatus::found:
        show(*res.witness);
        return kOk;
      case SearchStatus::not_good:
        std::cout << "not good\n";
        return kNegative;
      case SearchStatus::budget_exceeded:
        std::cout << "budget exceeded after " << res.nodes << " nodes\n";
        return kExhausted;
    }
    return kDomainError;
  }

  if (method == "template") {
    TemplateMode mode = pick();
    auto ctx = build_context(d, q, mode, rotation);
    if (!ctx) throw std::invalid_argument("hypotheses of mode " + mode_name(mode) +
                                          " do not hold for this quadruple");
    std::optional<LinkageWitness> w;
    switch (mode) {
      case TemplateMode::split: w = apply_split_templates(d, *ctx); break;
      case TemplateMode::scsplit: w = apply_scsplit_templates(d, *ctx); break;
      case TemplateMode::smp: w = apply_smp_shortcut(d, *ctx); break;
    }
    if (!w) {
      std::cout << "no template fired\n";
      return kExhausted;
    }
    show(*w);
    return kOk;
  }

  if (method == "certified") {
    TemplateMode mode = pick();
    try {
      LinkageWitness w = link_with_certificate(d, q, mode);
      show(w);
      return kOk;
    } catch (const TheoremRefutation& r) {
      std::cout << "not good -- refutes the " << mode_name(r.mode) << " statement\n";
      return kNegative;
    }
  }

  throw std::invalid_argument("unknown method '" + method + "'");
}

int cmd_gen(const std::string& family, int n1, int n2, double p_arc, double p_bidir,
            int k_strong, std::uint64_t seed, int attempts, const std::string& out) {
  auto fam = family_from_name(family);
  if (!fam) throw std::invalid_argument("unknown family '" + family + "'");
  if (*fam == Family::fig1) {
    CounterexampleInstance ce = fig1_counterexample();
    write_text_file(out, serialize_digraph(ce.graph, ce.partition));
    std::cout << "wrote " << out << " (order " << ce.graph.order() << ", arcs "
              << ce.graph.arc_count() << ")\n";
    return kOk;
  }
  GenSpec g;
  g.family = *fam;
  g.n1 = n1;
  g.n2 = n2;
  g.p_arc = p_arc;
  g.p_bidir = p_bidir;
  g.k_strong = k_strong;
  g.seed = seed;
  g.max_attempts = attempts;
  auto inst = random_instance(g);
  if (!inst) {
    std::cerr << "no " << (k_strong > 0 ? std::to_string(k_strong) + "-strong " : "")
              << family << " instance in " << attempts << " attempts\n";
    return kExhausted;
  }
  write_text_file(out, serialize_digraph(inst->graph, inst->partition));
  std::cout << "wrote " << out << " (order " << inst->graph.order() << ", arcs "
            << inst->graph.arc_count() << ", attempts " << inst->attempts << ")\n";
  return kOk;
}

int cmd_verify(const std::string& theorem, const std::string& probe, int trials,
               std::uint64_t seed, const std::string& query_mode, int samples, int jobs,
               const std::string& refutation_dir, const std::string& json_out,
               const CLI::App* sub, int n1, int n2, double p_arc, double p_bidir,
               int k_strong) {
  if (!probe.empty()) {
    ProbeReport rep = run_probe(probe, trials, seed, refutation_dir);
    std::cout << rep.to_text();
    return kOk;
  }
  auto id = theorem_from_name(theorem);
  if (!id) throw std::invalid_argument("unknown theorem '" + theorem + "'");

  GenSpec gen = default_genspec(*id, seed);
  if (sub->count("--n1")) gen.n1 = n1;
  if (sub->count("--n2")) gen.n2 = n2;
  if (sub->count("--p-arc")) gen.p_arc = p_arc;
  if (sub->count("--p-bidir")) gen.p_bidir = p_bidir;
  if (sub->count("--k-strong")) gen.k_strong = k_strong;

  VerifyOptions opt;
  opt.trials = trials;
  opt.sample_size = samples;
  opt.jobs = jobs;
  opt.refutation_dir = refutation_dir;
  if (query_mode == "all")
    opt.query_mode = QueryMode::all;
  else if (query_mode == "sampled")
    opt.query_mode = QueryMode::sampled;
  else if (query_mode == "auto")
    opt.query_mode = QueryMode::automatic;
  else
    throw std::invalid_argument("unknown query mode '" + query_mode + "'");

  try {
    VerifyReport rep = verify_theorem(*id, gen, opt);
    std::cout << rep.to_text();
    if (!json_out.empty()) write_text_file(json_out, rep.to_json());
    return rep.refutation_paths.empty() ? kOk : kNegative;
  } catch (const GeneratorExhausted& ex) {
    std::cerr << ex.what() << "\n";
    std::cout << ex.partial.to_text();
    if (!json_out.empty()) write_text_file(json_out, ex.partial.to_json());
    return kExhausted;
  }
}

int cmd_pins() {
  bool all = true;
  for (const PinResult& pin : verify_pins()) {
    std::cout << (pin.pass ? "PASS" : "FAIL") << " " << pin.name << ": " << pin.detail
              << "\n";
    all = all && pin.pass;
  }
  return all ? kOk : kNegative;
}

int cmd_export_dot(const std::string& file, const std::string& highlight,
                   const std::string& out) {
  DigraphDocument doc = read_digraph_file(file);
  const Digraph& d = doc.graph;
  std::vector<Path> highlights;
  if (!highlight.empty()) {
    std::ifstream in(highlight);
    if (!in) throw std::invalid_argument("cannot read '" + highlight + "'");
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::vector<Vertex> verts;
      std::string token;
      while (ls >> token) {
        if (token[0] == '#') break;
        verts.push_back(resolve_or_throw(d, token));
      }
      if (!verts.empty()) highlights.emplace_back(d, verts);
    }
  }
  auto part = doc.partition ? doc.partition : split_partition(d);
  std::string dot = export_dot(d, part, highlights);
  if (out.empty())
    std::cout << dot;
  else
    write_text_file(out, dot);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"split and semicomplete digraph 2-linkage toolkit"};
  app.require_subcommand(1);

  std::string file, from, to, del_csv;
  std::string s1, t1, s2, t2, method = "certified", mode = "auto";
  std::uint64_t budget = kDefaultNodeBudget;
  int rotation = 0;
  std::string family = "split", out_file;
  int n1 = 3, n2 = 7, k_strong = 0, attempts = 500;
  double p_arc = 0.9, p_bidir = 0.5;
  std::uint64_t seed = 1;
  std::string theorem, probe, query_mode = "auto", refutation_dir, json_out, highlight;
  int trials = 50, samples = 200, jobs = 1, k = 1;

  CLI::App* c_classify = app.add_subcommand("classify", "class membership and strongness");
  c_classify->add_option("file", file)->required();

  CLI::App* c_kappa = app.add_subcommand("kappa", "local connectivity between two vertices");
  c_kappa->add_option("file", file)->required();
  c_kappa->add_option("--from", from)->required();
  c_kappa->add_option("--to", to)->required();
  c_kappa->add_option("--delete", del_csv, "comma-separated vertices to remove first");

  CLI::App* c_kstrong = app.add_subcommand("kstrong", "test k-strong connectivity");
  c_kstrong->add_option("file", file)->required();
  c_kstrong->add_option("--k", k)->required();

  CLI::App* c_link2 = app.add_subcommand("link2", "find disjoint paths for a quadruple");
  c_link2->add_option("file", file)->required();
  c_link2->add_option("--s1", s1)->required();
  c_link2->add_option("--t1", t1)->required();
  c_link2->add_option("--s2", s2)->required();
  c_link2->add_option("--t2", t2)->required();
  c_link2->add_option("--method", method)->check(CLI::IsMember({"exact", "template", "certified"}));
  c_link2->add_option("--budget", budget, "node budget for the exact search");
  c_link2->add_option("--mode", mode)->check(CLI::IsMember({"auto", "split", "scsplit", "smp"}));
  c_link2->add_option("--rotation", rotation, "decomposition variant for --method template");

  CLI::App* c_gen = app.add_subcommand("gen", "generate an instance file");
  c_gen->add_option("--family", family)->required();
  c_gen->add_option("--n1", n1);
  c_gen->add_option("--n2", n2);
  c_gen->add_option("--p-arc", p_arc);
  c_gen->add_option("--p-bidir", p_bidir);
  c_gen->add_option("--k-strong", k_strong);
  c_gen->add_option("--seed", seed);
  c_gen->add_option("--attempts", attempts);
  c_gen->add_option("--out", out_file)->required();

  CLI::App* c_verify = app.add_subcommand("verify", "run a statement suite or a probe");
  auto* opt_theorem = c_verify->add_option("--theorem", theorem);
  auto* opt_probe = c_verify->add_option("--probe", probe, "split5 or scsplit-weak");
  opt_theorem->excludes(opt_probe);
  c_verify->add_option("--trials", trials);
  c_verify->add_option("--seed", seed);
  c_verify->add_option("--query-mode", query_mode)->check(CLI::IsMember({"auto", "all", "sampled"}));
  c_verify->add_option("--samples", samples, "quadruples per trial in sampled mode");
  c_verify->add_option("--jobs", jobs);
  c_verify->add_option("--refutation-dir", refutation_dir);
  c_verify->add_option("--json", json_out, "write the machine-readable report here");
  c_verify->add_option("--n1", n1);
  c_verify->add_option("--n2", n2);
  c_verify->add_option("--p-arc", p_arc);
  c_verify->add_option("--p-bidir", p_bidir);
  c_verify->add_option("--k-strong", k_strong);

  CLI::App* c_pins = app.add_subcommand("pins", "check the pinned counterexample facts");

  CLI::App* c_dot = app.add_subcommand("export-dot", "Graphviz rendering");
  c_dot->add_option("file", file)->required();
  c_dot->add_option("--highlight", highlight, "file with one path per line");
  c_dot->add_option("--out", out_file);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_classify->parsed()) return cmd_classify(file);
    if (c_kappa->parsed()) return cmd_kappa(file, from, to, del_csv);
    if (c_kstrong->parsed()) return cmd_kstrong(file, k);
    if (c_link2->parsed())
      return cmd_link2(file, s1, t1, s2, t2, method, budget, mode, rotation);
    if (c_gen->parsed())
      return cmd_gen(family, n1, n2, p_arc, p_bidir, k_strong, seed, attempts, out_file);
    if (c_verify->parsed()) {
      if (theorem.empty() && probe.empty())
        throw std::invalid_argument("verify needs --theorem or --probe");
      return cmd_verify(theorem, probe, trials, seed, query_mode, samples, jobs,
                        refutation_dir, json_out, c_verify, n1, n2, p_arc, p_bidir,
                        k_strong);
    }
    if (c_pins->parsed()) return cmd_pins();
    if (c_dot->parsed()) return cmd_export_dot(file, highlight, out_file);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kDomainError;
  }
  return kDomainError;
}
