#include "splink/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace splink {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

int parse_int(const std::string& tok, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a number, got '" + tok + "'");
  return value;
}

Vertex resolve_token(const Digraph& d, const std::string& tok, int line) {
  if (auto v = d.resolve(tok)) return *v;
  throw ParseError(line, "unknown vertex '" + tok + "'");
}

std::string dot_quote(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

DigraphDocument parse_digraph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  int order = -1, arc_total = -1;
  int header_line = 0;
  std::vector<std::string> labels;
  std::optional<std::vector<std::string>> v1_tokens;
  int partition_line = 0;
  std::vector<Arc> arcs;
  std::vector<std::pair<std::pair<std::string, std::string>, int>> pending;

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokens_of(strip_comment(raw));
    if (toks.empty()) continue;
    if (order == -1) {
      if (toks[0] != "digraph" || toks.size() != 3)
        throw ParseError(lineno, "expected 'digraph <order> <arcs>'");
      order = parse_int(toks[1], lineno);
      arc_total = parse_int(toks[2], lineno);
      if (order < 0 || arc_total < 0) throw ParseError(lineno, "negative header counts");
      header_line = lineno;
      continue;
    }
    if (toks[0] == "labels:") {
      if (!labels.empty()) throw ParseError(lineno, "repeated labels line");
      if (!pending.empty()) throw ParseError(lineno, "labels must precede arcs");
      labels.assign(toks.begin() + 1, toks.end());
      if (static_cast<int>(labels.size()) != order)
        throw ParseError(lineno, "expected " + std::to_string(order) + " labels");
      continue;
    }
    if (toks[0] == "partition:") {
      if (v1_tokens) throw ParseError(lineno, "repeated partition line");
      if (toks.size() < 3 || toks[1] != "v1" || toks[2] != "=") {
        // Accept the compact form "partition: v1 = a,b,c" only.
        throw ParseError(lineno, "expected 'partition: v1 = a,b,c'");
      }
      std::string rest;
      for (std::size_t i = 3; i < toks.size(); ++i) rest += toks[i];
      std::vector<std::string> names;
      std::string cur;
      for (char c : rest) {
        if (c == ',') {
          if (!cur.empty()) names.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!cur.empty()) names.push_back(cur);
      if (names.empty()) throw ParseError(lineno, "empty partition side");
      v1_tokens = std::move(names);
      partition_line = lineno;
      continue;
    }
    if (toks.size() != 2) throw ParseError(lineno, "expected '<from> <to>'");
    pending.push_back({{toks[0], toks[1]}, lineno});
  }
  if (order == -1) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'digraph' header");
  if (static_cast<int>(pending.size()) != arc_total)
    throw ParseError(header_line, "header promises " + std::to_string(arc_total) + " arcs, found " +
                                      std::to_string(pending.size()));

  Digraph skeleton(order, std::span<const Arc>{}, labels);
  for (const auto& [pair, line] : pending) {
    Vertex u = resolve_token(skeleton, pair.first, line);
    Vertex v = resolve_token(skeleton, pair.second, line);
    if (u == v) throw ParseError(line, "loop arc on '" + pair.first + "'");
    arcs.push_back({u, v});
  }
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j)
      if (arcs[i] == arcs[j])
        throw ParseError(pending[j].second, "duplicate arc '" + pending[j].first.first + " " +
                                                pending[j].first.second + "'");

  DigraphDocument doc{Digraph(order, arcs, labels), std::nullopt};
  if (v1_tokens) {
    SplitPartition p;
    Bits v1(order);
    for (const auto& tok : *v1_tokens) {
      Vertex v = resolve_token(doc.graph, tok, partition_line);
      if (v1.test(v)) throw ParseError(partition_line, "repeated partition vertex '" + tok + "'");
      v1.set(v);
    }
    p.v1 = v1.to_vector();
    Bits v2 = v1;
    v2.flip_all();
    p.v2 = v2.to_vector();
    if (!validate_partition(doc.graph, p))
      throw ParseError(partition_line, "not a valid split partition");
    doc.partition = std::move(p);
  }
  return doc;
}

std::string serialize_digraph(const Digraph& d, const std::optional<SplitPartition>& partition) {
  std::ostringstream out;
  out << "digraph " << d.order() << ' ' << d.arc_count() << '\n';
  if (d.labeled()) {
    out << "labels:";
    for (const auto& name : d.labels()) out << ' ' << name;
    out << '\n';
  }
  if (partition) {
    out << "partition: v1 =";
    for (std::size_t i = 0; i < partition->v1.size(); ++i)
      out << (i == 0 ? " " : ",") << d.display(partition->v1[i]);
    out << '\n';
  }
  for (const Arc& a : d.arcs()) out << d.display(a.from) << ' ' << d.display(a.to) << '\n';
  return out.str();
}

std::string export_dot(const Digraph& d, const std::optional<SplitPartition>& partition,
                       const std::vector<Path>& highlights) {
  static const char* kPalette[] = {"crimson", "dodgerblue", "darkgreen", "darkorange",
                                   "purple",  "teal",       "saddlebrown"};
  constexpr int kPaletteSize = 7;
  if (partition) {
    if (!validate_partition(d, *partition))
      throw std::invalid_argument("not a valid split partition");
  }
  // Arc -> highlight path index (first wins when paths overlap on an arc).
  std::vector<std::vector<int>> owner(static_cast<std::size_t>(d.order()),
                                      std::vector<int>(static_cast<std::size_t>(d.order()), -1));
  for (std::size_t pi = 0; pi < highlights.size(); ++pi) {
    const auto& vs = highlights[pi].vertices();
    for (Vertex v : vs) d.check_vertex(v);
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      if (!d.has_arc(vs[i], vs[i + 1]))
        throw std::invalid_argument("highlight path uses a missing arc");
      auto& slot = owner[static_cast<std::size_t>(vs[i])][static_cast<std::size_t>(vs[i + 1])];
      if (slot == -1) slot = static_cast<int>(pi);
    }
  }
  Bits v1set(d.order());
  if (partition)
    for (Vertex v : partition->v1) v1set.set(v);
  std::ostringstream out;
  out << "digraph splink {\n";
  out << "  rankdir=LR;\n";
  for (Vertex v = 0; v < d.order(); ++v) {
    out << "  " << dot_quote(d.display(v));
    if (partition && v1set.test(v))
      out << " [shape=diamond, color=firebrick]";
    else
      out << " [shape=ellipse]";
    out << ";\n";
  }
  for (const Arc& a : d.arcs()) {
    out << "  " << dot_quote(d.display(a.from)) << " -> " << dot_quote(d.display(a.to));
    int pi = owner[static_cast<std::size_t>(a.from)][static_cast<std::size_t>(a.to)];
    if (pi != -1)
      out << " [color=" << kPalette[pi % kPaletteSize] << ", penwidth=2.2]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

DigraphDocument read_digraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_digraph(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace splink
