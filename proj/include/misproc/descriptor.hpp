#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "misproc/graph.hpp"

namespace misproc {

/// Parsed graph descriptor: "complete:n=64", "gnp:n=1024,p=0.05",
/// "cliques:count=8,size=8", "tree:n=256", "file:<path>". gnp and tree
/// accept an optional seed=<u64> (default 0).
struct GraphDescriptor {
  std::string family;
  std::map<std::string, std::string> params;
  std::string path;  ///< file family only

  static GraphDescriptor parse(const std::string& text);
  /// Canonical text form with keys in a fixed order.
  std::string str() const;
  /// Same with ';' between parameters, for CSV fields.
  std::string csv_token() const;
  Graph build(unsigned threads = 1) const;
};

}  // namespace misproc
