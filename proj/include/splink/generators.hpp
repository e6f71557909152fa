#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splink/classes.hpp"
#include "splink/core.hpp"
#include "splink/linkage.hpp"

namespace splink {

/// Deterministic 64-bit stream: split-mix style state advance with a final
/// avalanche. Identical across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, n) via 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t n);
  /// True with probability p.
  bool chance(double p);

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

 private:
  std::uint64_t state_;
};

enum class Family {
  fig1,
  random_split,
  random_scsplit,
  random_smp,
  random_tournament,
  random_semicomplete,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// Instance generator request. n1/n2 are the side sizes for the split
/// families; for the multipartite family n1 is the leading class size and n2
/// the number of vertices spread over further classes; for tournaments and
/// semicomplete digraphs the order is n1+n2. k_strong > 0 rejects samples
/// until is_k_strong holds, up to max_attempts.
struct GenSpec {
  Family family = Family::random_split;
  int n1 = 3;
  int n2 = 7;
  double p_arc = 0.9;
  double p_bidir = 0.5;
  int k_strong = 0;
  std::uint64_t seed = 0;
  int max_attempts = 500;

  void check() const;
};

struct GeneratedInstance {
  Digraph graph;
  std::optional<SplitPartition> partition;
  std::optional<std::vector<std::vector<Vertex>>> parts;
  int attempts = 0;
};

/// none when max_attempts samples all miss the k_strong requirement.
std::optional<GeneratedInstance> random_instance(const GenSpec& spec);

/// The fixed 13-vertex split digraph with terminals s1,t1,s2,t2 whose
/// quadruple has no disjoint linkage although both one-sided local
/// connectivities (after deleting the other pair) equal 3.
struct CounterexampleInstance {
  Digraph graph;
  SplitPartition partition;
  LinkageQuery query;
};
CounterexampleInstance fig1_counterexample();

}  // namespace splink
