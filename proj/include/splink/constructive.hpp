#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splink/classes.hpp"
#include "splink/connectivity.hpp"
#include "splink/core.hpp"
#include "splink/linkage.hpp"

namespace splink {

/// Which structural engine to run.
enum class TemplateMode { split, scsplit, smp };

std::string mode_name(TemplateMode m);

/// Shared scaffolding for the template engines: a system of minimal
/// internally disjoint primary paths (effective s1 -> t1, computed with the
/// other pair deleted), a secondary system the other way round, and for each
/// secondary path its first and last meeting point with the primary
/// interiors. All paths use the original digraph's vertex ids.
struct TemplateContext {
  TemplateMode mode = TemplateMode::split;
  LinkageQuery query;       // original roles
  LinkageQuery effective;   // primary pair first; may be the swap of `query`
  bool swapped = false;
  std::vector<Path> primary;
  std::vector<Path> secondary;
  Bits primary_interior;            // union of primary interiors
  std::vector<int> first_hit;       // per secondary path; -1 when it misses
  std::vector<int> last_hit;        //   every primary path
  std::vector<int> first_hit_path;  // which primary path carries the hit
  std::vector<int> last_hit_path;
  std::optional<SplitPartition> partition;
  std::optional<std::vector<std::vector<Vertex>>> parts;
  int rotation = 0;
};

/// Builds the context, or none when the mode's local path systems do not
/// exist (hypothesis failure). Class mismatch and, for smp, a strongness
/// shortfall are caller errors. `rotation` selects an alternative flow
/// decomposition for the systems.
std::optional<TemplateContext> build_context(const Digraph& d, const LinkageQuery& q,
                                             TemplateMode mode, int rotation = 0);

/// Split-digraph engine: needs 3 primary + 4 secondary paths.
std::optional<LinkageWitness> apply_split_templates(const Digraph& d, const TemplateContext& ctx);

/// Semicomplete-split engine: 3 + 3, including the reversal mirror.
std::optional<LinkageWitness> apply_scsplit_templates(const Digraph& d,
                                                      const TemplateContext& ctx);

/// Semicomplete-multipartite engine: short first path over a strong rest,
/// then the 4 + 1 anchor surgeries.
std::optional<LinkageWitness> apply_smp_shortcut(const Digraph& d, const TemplateContext& ctx);

/// Raised when the exact fallback disproves a tuple the selected structural
/// statement promises, i.e. a counterexample to that statement.
class TheoremRefutation : public std::runtime_error {
 public:
  TheoremRefutation(TemplateMode mode, const Digraph& d, const LinkageQuery& q);
  TemplateMode mode;
  Digraph graph;
  LinkageQuery query;
};

/// Hypothesis check used by link_with_certificate for each mode. For split
/// this is the one-sided 3 + 4 condition (either orientation); for scsplit
/// the symmetric 3 + 3 condition; for smp class membership plus 6-strongness.
bool mode_hypotheses(const Digraph& d, const LinkageQuery& q, TemplateMode mode);

inline constexpr int kDecompositionRetries = 8;

/// Witness production under the mode's hypotheses: template engines over
/// kDecompositionRetries alternative decompositions, then the exact solver.
/// Throws TheoremRefutation if the exact solver denies the tuple.
LinkageWitness link_with_certificate(const Digraph& d, const LinkageQuery& q, TemplateMode mode);

}  // namespace splink
