#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "splink/classes.hpp"
#include "splink/connectivity.hpp"
#include "splink/generators.hpp"
#include "splink/linkage.hpp"

using namespace splink;

TEST_CASE("rng stream properties") {
  Rng a(42), b(42);
  for (int i = 0; i < 64; ++i) CHECK(a.next() == b.next());
  Rng c(43);
  CHECK(a.next() != c.next());  // streams diverge by seed

  SUBCASE("below stays in range and covers it") {
    Rng r(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 400; ++i) {
      std::uint64_t v = r.below(7);
      CHECK(v < 7);
      seen.insert(v);
    }
    CHECK(seen.size() == 7);
  }
  SUBCASE("chance extremes") {
    Rng r(9);
    for (int i = 0; i < 50; ++i) {
      CHECK(!r.chance(0.0));
      CHECK(r.chance(1.0));
    }
  }
  SUBCASE("mix separates nearby inputs") {
    CHECK(Rng::mix(1, 2) != Rng::mix(2, 1));
    CHECK(Rng::mix(0, 0) != Rng::mix(0, 1));
    // Same inputs, same output — mixing is a pure function.
    CHECK(Rng::mix(123, 456) == Rng::mix(123, 456));
  }
}

TEST_CASE("family names round-trip") {
  for (Family f : {Family::fig1, Family::random_split, Family::random_scsplit,
                   Family::random_smp, Family::random_tournament, Family::random_semicomplete}) {
    auto back = family_from_name(family_name(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK(family_name(Family::random_scsplit) == "random-scsplit");
  CHECK(!family_from_name("scsplit").has_value());
  CHECK(!family_from_name("").has_value());
}

TEST_CASE("spec validation") {
  GenSpec ok;
  CHECK_NOTHROW(ok.check());
  GenSpec bad = ok;
  bad.n1 = -1;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = ok;
  bad.n2 = -1;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = ok;
  bad.p_arc = 1.5;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = ok;
  bad.p_bidir = -0.1;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = ok;
  bad.k_strong = -2;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = ok;
  bad.k_strong = ok.n1 + ok.n2;  // order can never reach k+1 vertices
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  bad = ok;
  bad.max_attempts = 0;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);

  // Empty sides are rejected at sampling time.
  GenSpec empty;
  empty.family = Family::random_split;
  empty.n1 = 0;
  CHECK_THROWS_AS(random_instance(empty), std::invalid_argument);
}

TEST_CASE("each family lands in its class and honors k_strong") {
  struct Row {
    Family family;
    int n1, n2, k;
  };
  const Row rows[] = {
      {Family::random_split, 3, 7, 3},
      {Family::random_scsplit, 2, 8, 4},
      {Family::random_smp, 3, 9, 3},
      {Family::random_tournament, 3, 6, 2},
      {Family::random_semicomplete, 3, 6, 3},
  };
  Rng rng(0x9e4e);
  for (const Row& row : rows) {
    CAPTURE(family_name(row.family));
    for (int it = 0; it < 10; ++it) {
      GenSpec spec;
      spec.family = row.family;
      spec.n1 = row.n1;
      spec.n2 = row.n2;
      spec.k_strong = row.k;
      spec.seed = rng.next();
      auto inst = random_instance(spec);
      REQUIRE(inst.has_value());
      CHECK(inst->attempts >= 1);
      CHECK(inst->attempts <= spec.max_attempts);
      CHECK(is_k_strong(inst->graph, row.k));
      switch (row.family) {
        case Family::random_split: {
          REQUIRE(inst->partition.has_value());
          CHECK(validate_partition(inst->graph, *inst->partition));
          CHECK(static_cast<int>(inst->partition->v1.size()) == row.n1);
          CHECK(static_cast<int>(inst->partition->v2.size()) == row.n2);
          break;
        }
        case Family::random_scsplit: {
          REQUIRE(inst->partition.has_value());
          CHECK(validate_partition(inst->graph, *inst->partition));
          CHECK(is_semicomplete_split(inst->graph, *inst->partition));
          break;
        }
        case Family::random_smp: {
          REQUIRE(inst->parts.has_value());
          auto got = semicomplete_multipartite_parts(inst->graph);
          REQUIRE(got.has_value());
          CHECK(*got == *inst->parts);
          CHECK(inst->graph.order() == row.n1 + row.n2);
          break;
        }
        case Family::random_tournament:
          CHECK(is_tournament(inst->graph));
          CHECK(inst->graph.order() == row.n1 + row.n2);
          break;
        case Family::random_semicomplete:
          CHECK(is_semicomplete(inst->graph));
          CHECK(inst->graph.order() == row.n1 + row.n2);
          break;
        case Family::fig1: break;
      }
    }
  }
}

TEST_CASE("generation is deterministic in the seed") {
  for (Family f : {Family::random_split, Family::random_scsplit, Family::random_smp,
                   Family::random_tournament, Family::random_semicomplete}) {
    GenSpec spec;
    spec.family = f;
    spec.n1 = 3;
    spec.n2 = 7;
    spec.k_strong = 2;
    spec.seed = 0xfeed;
    auto a = random_instance(spec);
    auto b = random_instance(spec);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->graph == b->graph);
    CHECK(a->attempts == b->attempts);
    spec.seed = 0xfeed + 1;
    auto c = random_instance(spec);
    REQUIRE(c.has_value());
    CHECK(!(a->graph == c->graph));  // neighboring seeds give fresh instances
  }
}

TEST_CASE("unreachable strongness exhausts attempts") {
  GenSpec spec;
  spec.family = Family::random_split;
  spec.n1 = 3;
  spec.n2 = 7;
  spec.p_arc = 0.05;  // far too sparse to ever be 6-strong
  spec.k_strong = 6;
  spec.max_attempts = 4;
  spec.seed = 1;
  CHECK(!random_instance(spec).has_value());
}

TEST_CASE("fig1 instance pins") {
  auto fig = fig1_counterexample();
  const Digraph& d = fig.graph;
  CHECK(d.order() == 13);
  CHECK(d.arc_count() == 51);
  CHECK(validate_partition(d, fig.partition));
  CHECK(fig.partition.v1 == std::vector<Vertex>{4, 5, 6, 10, 11, 12});  // x's and z's
  CHECK(fig.partition.v2 == std::vector<Vertex>{0, 1, 2, 3, 7, 8, 9});  // terminals and y's
  CHECK(fig.query == LinkageQuery{0, 1, 2, 3});
  CHECK(d.labeled());
  CHECK(d.display(0) == "s1");
  CHECK(d.display(12) == "z3");
  CHECK(!is_good_tuple(d, fig.query));

  // fig1 via the generator interface, including its fixed-size contract.
  GenSpec spec;
  spec.family = Family::fig1;
  auto inst = random_instance(spec);
  REQUIRE(inst.has_value());
  CHECK(inst->graph == d);
  REQUIRE(inst->partition.has_value());
  CHECK(*inst->partition == fig.partition);
}
