#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splink/classes.hpp"
#include "splink/core.hpp"

namespace splink {

/// Input error with the 1-based line it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct DigraphDocument {
  Digraph graph;
  std::optional<SplitPartition> partition;
};

/// Line-oriented digraph format:
///   # comment
///   digraph <order> <arcs>
///   labels: <name ...>            (optional)
///   partition: v1 = a,b,c         (optional)
///   <from> <to>                   (one arc per line, labels or ids)
DigraphDocument parse_digraph(const std::string& text);

/// Canonical form: header, labels, partition, then arcs sorted by id pair.
/// parse_digraph(serialize_digraph(doc)) reproduces doc exactly.
std::string serialize_digraph(const Digraph& d,
                              const std::optional<SplitPartition>& partition = std::nullopt);

/// Graphviz rendering. V1 vertices are diamonds, V2 (and unpartitioned)
/// vertices ellipses; each highlighted path gets its own colour and weight.
std::string export_dot(const Digraph& d,
                       const std::optional<SplitPartition>& partition = std::nullopt,
                       const std::vector<Path>& highlights = {});

DigraphDocument read_digraph_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace splink
