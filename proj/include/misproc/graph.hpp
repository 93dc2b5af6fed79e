#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace misproc {

using Vertex = std::uint32_t;

class VertexSet;

/// Thrown for malformed edge-list input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected simple graph in CSR form. Vertices are 0..n-1 and
/// every neighbor list is strictly increasing.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list; rejects self-loops, duplicates and
  /// out-of-range endpoints with std::invalid_argument.
  static Graph from_edges(std::size_t n,
                          std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t max_degree() const;
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

// Generators -----------------------------------------------------------------

Graph gen_complete(std::size_t n);

/// G(n, p) via per-row geometric gap skipping. Row u covers the candidates
/// v = u+1..n-1 and reads its uniforms from the keyed lane (Graph, u), so
/// the output depends only on (n, p, seed) and rows may be built in any
/// order or concurrently. `threads` == 0 means hardware concurrency.
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed,
              unsigned threads = 1);

Graph gen_disjoint_cliques(std::size_t count, std::size_t size);

/// Uniform labeled tree from a uniform Pruefer sequence.
Graph gen_random_tree(std::size_t n, std::uint64_t seed);

/// Decodes a Pruefer sequence over 0..n-1 (length n-2) into its tree.
Graph tree_from_pruefer(std::size_t n, std::span<const Vertex> code);

Graph gen_star(std::size_t leaves);
Graph gen_path(std::size_t n);
Graph gen_complete_bipartite(std::size_t left, std::size_t right);

/// Disjoint union, relabeling the second graph after the first.
Graph disjoint_union(const Graph& a, const Graph& b);

/// Vertex relabeling: vertex u of `g` becomes perm[u].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

// Edge-list text ---------------------------------------------------------------

/// Parses "n m" followed by m lines "u v". Errors raise ParseError.
Graph load_edge_list(std::string_view text);
Graph load_edge_list_file(const std::string& path);
std::string to_edge_list(const Graph& g);

// Structural queries ---------------------------------------------------------

std::size_t common_neighbors(const Graph& g, Vertex u, Vertex v);

/// Largest shortest-path distance; nullopt when disconnected.
std::optional<std::size_t> diameter(const Graph& g);

std::size_t count_components(const Graph& g);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool operator==(const Rational&) const = default;
  double value() const { return static_cast<double>(num) / den; }
};

/// 2|E(S)| / |S|, reduced.
Rational induced_avg_degree(const Graph& g, const VertexSet& s);

/// |E(S)| counted once per edge.
std::size_t induced_edges(const Graph& g, const VertexSet& s);

}  // namespace misproc
