#include "misproc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <thread>

#include "misproc/coins.hpp"
#include "misproc/vertex_set.hpp"

namespace misproc {

Graph Graph::from_edges(std::size_t n,
                        std::span<const std::pair<Vertex, Vertex>> edges) {
  Graph g;
  g.n_ = n;
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loop");
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    g.offsets_[u + 1] = g.offsets_[u] + degree[u];
  }
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (std::size_t u = 0; u < n; ++u) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw std::invalid_argument("duplicate edge");
    }
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t u = 0; u < n_; ++u) {
    best = std::max(best, degree(static_cast<Vertex>(u)));
  }
  return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph gen_complete(std::size_t n) {
  if (n == 0) throw std::invalid_argument("invalid size: n must be >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

namespace {

void gnp_row(std::size_t n, double p, const CoinStream& coins, Vertex u,
             std::vector<std::pair<Vertex, Vertex>>& out) {
  if (p >= 1.0) {
    for (std::size_t v = u + 1; v < n; ++v) {
      out.emplace_back(u, static_cast<Vertex>(v));
    }
    return;
  }
  KeyedSequence seq(coins, Stream::Graph, u);
  const double log_q = std::log1p(-p);
  std::size_t v = u + 1;
  while (v < n) {
    // 1 - U lies in (0, 1], so the log is finite.
    const double gap = std::floor(std::log1p(-seq.next01()) / log_q);
    if (gap >= static_cast<double>(n - v)) break;
    v += static_cast<std::size_t>(gap);
    out.emplace_back(u, static_cast<Vertex>(v));
    ++v;
  }
}

}  // namespace

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed, unsigned threads) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1]");
  }
  if (n == 0) throw std::invalid_argument("invalid size: n must be >= 1");
  if (p == 0.0) return Graph::from_edges(n, {});
  const CoinStream coins(seed);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  // Rows are dealt round-robin so that long rows (small u) spread out.
  std::vector<std::vector<std::pair<Vertex, Vertex>>> rows(n);
  auto work = [&](unsigned worker) {
    for (std::size_t u = worker; u < n; u += threads) {
      gnp_row(n, p, coins, static_cast<Vertex>(u), rows[u]);
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  edges.reserve(total);
  for (const auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return Graph::from_edges(n, edges);
}

Graph gen_disjoint_cliques(std::size_t count, std::size_t size) {
  if (count == 0 || size == 0) {
    throw std::invalid_argument("invalid size: count and size must be >= 1");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(count * size * (size - 1) / 2);
  for (std::size_t c = 0; c < count; ++c) {
    const auto base = static_cast<Vertex>(c * size);
    for (Vertex i = 0; i < size; ++i) {
      for (Vertex j = i + 1; j < size; ++j) {
        edges.emplace_back(base + i, base + j);
      }
    }
  }
  return Graph::from_edges(count * size, edges);
}

Graph tree_from_pruefer(std::size_t n, std::span<const Vertex> code) {
  if (n == 0) throw std::invalid_argument("invalid size: n must be >= 1");
  if (n == 1) return Graph::from_edges(1, {});
  if (code.size() != n - 2) {
    throw std::invalid_argument("Pruefer code must have length n - 2");
  }
  std::vector<std::size_t> degree(n, 1);
  for (Vertex x : code) {
    if (x >= n) throw std::invalid_argument("Pruefer entry out of range");
    ++degree[x];
  }
  // Linear-time decoding: `ptr` scans for the smallest leaf, and a freshly
  // created leaf smaller than `ptr` is consumed immediately.
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n - 1);
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  for (Vertex x : code) {
    edges.emplace_back(static_cast<Vertex>(std::min<std::size_t>(leaf, x)),
                       static_cast<Vertex>(std::max<std::size_t>(leaf, x)));
    degree[leaf] = 0;
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  // The two remaining vertices of degree 1 form the last edge; one is n-1.
  edges.emplace_back(static_cast<Vertex>(leaf), static_cast<Vertex>(n - 1));
  return Graph::from_edges(n, edges);
}

Graph gen_random_tree(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("invalid size: n must be >= 1");
  if (n <= 2) {
    std::vector<std::pair<Vertex, Vertex>> e;
    if (n == 2) e.emplace_back(0, 1);
    return Graph::from_edges(n, e);
  }
  const CoinStream coins(seed);
  KeyedSequence seq(coins, Stream::Graph, 0);
  std::vector<Vertex> code(n - 2);
  for (auto& x : code) x = static_cast<Vertex>(seq.next_below(n));
  return tree_from_pruefer(n, code);
}

Graph gen_star(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

Graph gen_path(std::size_t n) {
  if (n == 0) throw std::invalid_argument("invalid size: n must be >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph::from_edges(n, edges);
}

Graph gen_complete_bipartite(std::size_t left, std::size_t right) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(left * right);
  for (Vertex u = 0; u < left; ++u) {
    for (std::size_t j = 0; j < right; ++j) {
      edges.emplace_back(u, static_cast<Vertex>(left + j));
    }
  }
  return Graph::from_edges(left + right, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  auto edges = a.edges();
  const auto shift = static_cast<Vertex>(a.num_vertices());
  for (const auto& [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
  return Graph::from_edges(a.num_vertices() + b.num_vertices(), edges);
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.num_vertices()) {
    throw std::invalid_argument("permutation size mismatch");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.num_vertices(), edges);
}

// Edge-list text -----------------------------------------------------------------

namespace {

bool parse_fields(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  auto skip_ws = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    return i;
  };
  std::size_t i = skip_ws(0);
  auto r1 = std::from_chars(line.data() + i, line.data() + line.size(), a);
  if (r1.ec != std::errc{} || r1.ptr == line.data() + i) return false;
  i = static_cast<std::size_t>(r1.ptr - line.data());
  const std::size_t after_a = i;
  i = skip_ws(i);
  if (i == after_a) return false;
  auto r2 = std::from_chars(line.data() + i, line.data() + line.size(), b);
  if (r2.ec != std::errc{} || r2.ptr == line.data() + i) return false;
  i = skip_ws(static_cast<std::size_t>(r2.ptr - line.data()));
  return i == line.size();
}

}  // namespace

Graph load_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t\r") == std::string_view::npos) {
    lines.pop_back();
  }
  if (lines.empty()) throw ParseError(1, "missing header \"n m\"");

  std::uint64_t n = 0, m = 0;
  if (!parse_fields(lines[0], n, m)) throw ParseError(1, "malformed header, expected \"n m\"");
  if (lines.size() - 1 != m) {
    throw ParseError(lines.size() < m + 1 ? lines.size() + 1 : m + 2,
                     "expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string(lines.size() - 1));
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(m);
  std::vector<std::vector<Vertex>> seen(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::uint64_t u = 0, v = 0;
    if (!parse_fields(lines[i], u, v)) throw ParseError(lineno, "malformed edge line");
    if (u >= n || v >= n) throw ParseError(lineno, "vertex index out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    if (u > v) std::swap(u, v);
    auto& bucket = seen[u];
    if (std::find(bucket.begin(), bucket.end(), v) != bucket.end()) {
      throw ParseError(lineno, "duplicate edge");
    }
    bucket.push_back(static_cast<Vertex>(v));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str());
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.num_vertices()) + " " +
                    std::to_string(g.num_edges()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

// Structural queries -----------------------------------------------------------

std::size_t common_neighbors(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("common_neighbors requires u != v");
  if (u >= g.num_vertices() || v >= g.num_vertices()) {
    throw std::invalid_argument("vertex out of range");
  }
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::optional<std::size_t> diameter(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t best = 0;
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> frontier;
  frontier.reserve(n);
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    frontier.clear();
    frontier.push_back(s);
    dist[s] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const Vertex u = frontier[head];
      for (Vertex v : g.neighbors(u)) {
        if (dist[v] == kUnseen) {
          dist[v] = dist[u] + 1;
          frontier.push_back(v);
        }
      }
    }
    if (frontier.size() != n) return std::nullopt;
    best = std::max(best, dist[frontier.back()]);
  }
  return best;
}

std::size_t count_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack;
  std::size_t components = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return components;
}

std::size_t induced_edges(const Graph& g, const VertexSet& s) {
  std::size_t twice = 0;
  for (Vertex u : s.members()) {
    for (Vertex v : g.neighbors(u)) {
      if (s.contains(v)) ++twice;
    }
  }
  return twice / 2;
}

Rational induced_avg_degree(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("induced_avg_degree of empty set");
  const auto num = static_cast<std::int64_t>(2 * induced_edges(g, s));
  const auto den = static_cast<std::int64_t>(s.size());
  const std::int64_t d = std::gcd(num, den);
  return {num / d, den / d};
}

}  // namespace misproc
