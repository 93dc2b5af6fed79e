#include "misproc/descriptor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace misproc {
namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
    throw std::invalid_argument("graph parameter " + key + " is not an integer: " + text);
  }
  return v;
}

double parse_prob(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("graph parameter p is not a number: " + text);
  }
  if (used != text.size()) throw std::invalid_argument("graph parameter p is not a number: " + text);
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  return v;
}

const std::vector<std::string>& keys_for(const std::string& family) {
  static const std::vector<std::string> complete = {"n"};
  static const std::vector<std::string> gnp = {"n", "p", "seed"};
  static const std::vector<std::string> cliques = {"count", "size"};
  static const std::vector<std::string> tree = {"n", "seed"};
  if (family == "complete") return complete;
  if (family == "gnp") return gnp;
  if (family == "cliques") return cliques;
  if (family == "tree") return tree;
  throw std::invalid_argument("unknown graph family: " + family);
}

std::string param(const GraphDescriptor& d, const std::string& key, const std::string& fallback) {
  const auto it = d.params.find(key);
  return it == d.params.end() ? fallback : it->second;
}

}  // namespace

GraphDescriptor GraphDescriptor::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("graph descriptor needs <family>:<params>: " + text);
  }
  GraphDescriptor d;
  d.family = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (d.family == "file") {
    if (rest.empty()) throw std::invalid_argument("file descriptor needs a path");
    d.path = rest;
    return d;
  }
  const auto& allowed = keys_for(d.family);
  std::size_t start = 0;
  while (start <= rest.size()) {
    std::size_t end = rest.find_first_of(",;", start);
    if (end == std::string::npos) end = rest.size();
    const std::string item = rest.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("malformed graph parameter: " + item);
    }
    const std::string key = item.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument("unknown parameter " + key + " for family " + d.family);
    }
    if (!d.params.emplace(key, item.substr(eq + 1)).second) {
      throw std::invalid_argument("repeated graph parameter: " + key);
    }
    start = end + 1;
  }
  for (const auto& key : allowed) {
    if (key == "seed") continue;
    if (!d.params.count(key)) {
      throw std::invalid_argument("graph family " + d.family + " needs parameter " + key);
    }
  }
  for (const auto& [key, value] : d.params) {
    if (key == "p") {
      parse_prob(value);
    } else {
      const auto v = parse_u64(key, value);
      if (key != "seed" && v == 0) throw std::invalid_argument("invalid size: " + key + "=0");
    }
  }
  return d;
}

std::string GraphDescriptor::str() const {
  if (family == "file") return "file:" + path;
  std::string out = family + ":";
  bool first = true;
  for (const auto& key : keys_for(family)) {
    std::string value = param(*this, key, key == "seed" ? "0" : "");
    if (!first) out += ',';
    out += key + "=" + value;
    first = false;
  }
  return out;
}

std::string GraphDescriptor::csv_token() const {
  std::string s = str();
  for (auto& c : s) {
    if (c == ',') c = ';';
  }
  return s;
}

Graph GraphDescriptor::build(unsigned threads) const {
  if (family == "file") return load_edge_list_file(path);
  const auto u64 = [&](const std::string& key) {
    return parse_u64(key, param(*this, key, "0"));
  };
  if (family == "complete") return gen_complete(u64("n"));
  if (family == "gnp") return gen_gnp(u64("n"), parse_prob(param(*this, "p", "")), u64("seed"), threads);
  if (family == "cliques") return gen_disjoint_cliques(u64("count"), u64("size"));
  if (family == "tree") return gen_random_tree(u64("n"), u64("seed"));
  throw std::invalid_argument("unknown graph family: " + family);
}

}  // namespace misproc
