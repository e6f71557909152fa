#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splink/constructive.hpp"
#include "splink/core.hpp"
#include "splink/generators.hpp"
#include "splink/linkage.hpp"

namespace splink {

/// The six structural statements the harness can exercise.
enum class TheoremId { split6, split_local, sc5, scsplit5, scsplit_local, smp6 };

std::string theorem_name(TheoremId id);
std::optional<TheoremId> theorem_from_name(const std::string& name);

/// Exact hypothesis of the statement for this instance and quadruple; the
/// local statements accept either orientation of the role pairs.
bool check_hypotheses(const Digraph& d, const LinkageQuery& q, TheoremId id);

/// Engine that certifies tuples under the statement's hypotheses.
TemplateMode theorem_mode(TheoremId id);

/// Generator defaults that match each statement's class and strength.
GenSpec default_genspec(TheoremId id, std::uint64_t seed);

enum class QueryMode { automatic, all, sampled };

struct VerifyOptions {
  int trials = 50;
  QueryMode query_mode = QueryMode::automatic;  // automatic: all when n <= 10
  int sample_size = 200;
  int jobs = 1;
  std::string refutation_dir;  // empty: refutations are not persisted
};

struct VerifyReport {
  std::string theorem;
  int trials = 0;
  int passes = 0;
  std::uint64_t template_hits = 0;
  std::uint64_t fallback_hits = 0;
  std::vector<std::string> refutation_paths;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // excluded from the machine form

  /// Machine form; fixed key set {theorem, trials, passes, template_hits,
  /// fallback_hits, refutation_paths, seed}, byte-stable for fixed inputs.
  std::string to_json() const;
  /// Human form, one short paragraph.
  std::string to_text() const;
};

/// Thrown when instance generation (or admissible-query sampling) gives out
/// mid-run; carries the report over the trials that did complete.
class GeneratorExhausted : public std::runtime_error {
 public:
  GeneratorExhausted(const std::string& msg, VerifyReport done)
      : std::runtime_error(msg), partial(std::move(done)) {}
  VerifyReport partial;
};

/// Runs `opt.trials` seeded trials of the statement: sample an instance from
/// `gen` (sizes jittered per trial, sub-seeded from gen.seed), confirm the
/// hypotheses, then certify quadruples. Global statements certify every
/// quadruple or a seeded sample; local statements resample quadruples until
/// the hypotheses hold and certify that one. A trial passes when every
/// certified quadruple yields a validated witness.
VerifyReport verify_theorem(TheoremId id, const GenSpec& gen, const VerifyOptions& opt);

/// Pinned facts about the fixed 13-vertex counterexample.
struct PinResult {
  std::string name;
  bool pass = false;
  std::string detail;
};
std::vector<PinResult> verify_pins();

/// Serialized refutation artifact (canonical digraph file plus comments
/// naming the statement, seed, trial, and quadruple). Returns the path.
std::string persist_refutation(const std::string& dir, const std::string& theorem,
                               std::uint64_t seed, int trial, const Digraph& d,
                               const LinkageQuery& q);

/// Open-ended searches with no asserted outcome: "split5" samples 5-strong
/// split instances and hunts for a bad quadruple with the exact solver;
/// "scsplit-weak" samples semicomplete split instances and quadruples whose
/// one-sided local connectivities are exactly (3,2) and hunts the same way.
struct ProbeReport {
  std::string probe;
  int trials = 0;
  int hits = 0;
  std::vector<std::string> artifact_paths;
  std::uint64_t seed = 0;

  std::string to_text() const;
};
ProbeReport run_probe(const std::string& probe, int trials, std::uint64_t seed,
                      const std::string& artifact_dir);

}  // namespace splink
