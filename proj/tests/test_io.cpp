#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "splink/generators.hpp"
#include "splink/io.hpp"

using namespace splink;

#ifndef SPLINK_TEST_DATA_DIR
#error "SPLINK_TEST_DATA_DIR must point at the checked-in test data"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(static_cast<bool>(in), path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("round-trip identity") {
  auto fig = fig1_counterexample();
  std::string text = serialize_digraph(fig.graph, fig.partition);
  DigraphDocument doc = parse_digraph(text);
  CHECK(doc.graph == fig.graph);
  REQUIRE(doc.partition.has_value());
  CHECK(*doc.partition == fig.partition);
  CHECK(serialize_digraph(doc.graph, doc.partition) == text);

  Rng rng(0x10fa11);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + static_cast<int>(rng.below(9));
    Digraph d = oracle::random_digraph(n, 0.4, rng.next());
    CAPTURE(it);
    std::string s = serialize_digraph(d);
    DigraphDocument back = parse_digraph(s);
    CHECK(back.graph == d);
    CHECK(!back.partition.has_value());
    CHECK(serialize_digraph(back.graph) == s);
  }
}

TEST_CASE("golden serialization stays frozen") {
  auto fig = fig1_counterexample();
  std::string expected = slurp(std::string(SPLINK_TEST_DATA_DIR) + "/fig1.dg");
  CHECK(serialize_digraph(fig.graph, fig.partition) == expected);
}

TEST_CASE("parser accepts comments, blanks, and mixed tokens") {
  const char* text =
      "# leading comment\n"
      "\n"
      "digraph 3 2   # trailing comment\n"
      "labels: a b c\n"
      "partition: v1 = a\n"
      "a b\n"
      "1 c\n";
  DigraphDocument doc = parse_digraph(text);
  CHECK(doc.graph.order() == 3);
  CHECK(doc.graph.has_arc(0, 1));
  CHECK(doc.graph.has_arc(1, 2));
  REQUIRE(doc.partition.has_value());
  CHECK(doc.partition->v1 == std::vector<Vertex>{0});
  CHECK(doc.partition->v2 == std::vector<Vertex>{1, 2});
}

TEST_CASE("parse errors carry the offending line") {
  auto line_of = [](const std::string& text) {
    try {
      parse_digraph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("") == 1);                                        // no header at all
  CHECK(line_of("graph 2 1\n") == 1);                             // bad keyword
  CHECK(line_of("digraph 2\n") == 1);                             // missing count
  CHECK(line_of("digraph 2 x\n") == 1);                           // non-numeric
  CHECK(line_of("digraph -2 0\n") == 1);                          // negative order
  CHECK(line_of("digraph 2 1\n0 1\n0 1 2\n") == 3);               // arity
  CHECK(line_of("digraph 2 2\n0 1\n0 1\n") == 3);                 // duplicate arc
  CHECK(line_of("digraph 2 1\n0 0\n") == 2);                      // loop
  CHECK(line_of("digraph 2 1\n0 7\n") == 2);                      // unknown vertex
  CHECK(line_of("digraph 2 1\nlabels: a b\nx 1\n") == 3);         // unknown label
  CHECK(line_of("digraph 2 1\nlabels: a\n0 1\n") == 2);           // label count
  CHECK(line_of("digraph 2 1\n0 1\nlabels: a b\n") == 3);         // labels after arcs
  CHECK(line_of("digraph 2 2\n0 1\n") == 1);                      // count mismatch -> header
  CHECK(line_of("digraph 3 1\npartition: v1 = 0\npartition: v1 = 1\n0 1\n") == 3);
  CHECK(line_of("digraph 2 1\npartition: v1 =\n0 1\n") == 2);     // empty side
  CHECK(line_of("digraph 2 1\npartition: v2 = 0\n0 1\n") == 2);   // wrong side name
  CHECK(line_of("digraph 3 2\npartition: v1 = 0,0\n0 1\n1 2\n") == 2);  // repeat
  // V1 with an internal arc is rejected at the partition line.
  CHECK(line_of("digraph 3 2\npartition: v1 = 0,1\n0 1\n1 2\n") == 2);
}

TEST_CASE("dot export shapes and highlights") {
  auto fig = fig1_counterexample();
  std::string dot = export_dot(fig.graph, fig.partition);
  auto count = [&dot](const std::string& needle) {
    std::size_t hits = 0, pos = 0;
    while ((pos = dot.find(needle, pos)) != std::string::npos) {
      ++hits;
      pos += needle.size();
    }
    return hits;
  };
  CHECK(count("shape=diamond") == 6);   // x's and z's
  CHECK(count("shape=ellipse") == 7);   // terminals and y's
  CHECK(count(" -> ") == 51);
  CHECK(dot.find("\"s1\"") != std::string::npos);

  SUBCASE("highlighted paths are colored") {
    Path p(fig.graph, {0, 4, 7});  // s1 -> x1 -> y1
    std::string lit = export_dot(fig.graph, fig.partition, {p});
    CHECK(lit.find("color=crimson, penwidth=2.2") != std::string::npos);
    std::string plain = export_dot(fig.graph, fig.partition);
    CHECK(plain.find("penwidth") == std::string::npos);
  }
  SUBCASE("invalid partition rejected") {
    SplitPartition wrong;
    wrong.v1 = {0, 1, 2, 3, 7, 8, 9};
    wrong.v2 = {4, 5, 6, 10, 11, 12};
    CHECK_THROWS_AS(export_dot(fig.graph, wrong), std::invalid_argument);
  }
  SUBCASE("highlight arcs must exist in the drawn digraph") {
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < 13; ++u)
      for (Vertex v = 0; v < 13; ++v)
        if (u != v) arcs.push_back({u, v});
    Digraph full(13, arcs);
    Path foreign(full, {0, 7});  // no such arc in the counterexample digraph
    CHECK_THROWS_AS(export_dot(fig.graph, std::nullopt, {foreign}), std::invalid_argument);
  }
}

TEST_CASE("file io round-trips through disk") {
  auto fig = fig1_counterexample();
  std::string path = "splink_io_test_tmp.dg";
  write_text_file(path, serialize_digraph(fig.graph, fig.partition));
  DigraphDocument doc = read_digraph_file(path);
  CHECK(doc.graph == fig.graph);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_digraph_file("does/not/exist.dg"), std::runtime_error);
}
