#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "misproc/graph.hpp"

namespace misproc {

/// Exact-mode enumeration limits.
inline constexpr std::size_t kExactCapSubsets = 16;  // P1, P2, P4
inline constexpr std::size_t kExactCapTriples = 12;  // P3
/// Floating thresholds are relaxed by this much toward pass.
inline constexpr double kThresholdSlack = 1e-9;

class ExactModeCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckMode {
  bool exact = true;
  std::size_t samples = 0;  ///< per size class, sampled mode only
  std::uint64_t seed = 0;

  static CheckMode Exact() { return {true, 0, 0}; }
  static CheckMode Sampled(std::size_t samples, std::uint64_t seed) {
    return {false, samples, seed};
  }
};

enum class CheckStatus { Pass, Fail, Skipped, SampledPass };

std::string to_string(CheckStatus s);

/// A violating configuration. Which of s/t/i/pair are meaningful depends on
/// the property; lhs > rhs is the violated inequality.
struct Witness {
  std::vector<Vertex> s;
  std::vector<Vertex> t;
  std::vector<Vertex> i;
  std::optional<std::pair<Vertex, Vertex>> pair;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::optional<Witness> witness;
  std::uint64_t evaluated = 0;  ///< configurations tested
  std::string note;
};

struct GoodnessReport {
  std::size_t n = 0;
  double p = 0.0;
  bool exact = true;
  std::array<PropertyResult, 6> properties;

  /// No property failed; skipped and sampled passes count as non-fail.
  bool good() const;
  /// Some property passed only by sampling.
  bool inconclusive() const;
};

PropertyResult check_p1(const Graph& g, double p, const CheckMode& mode);
PropertyResult check_p2(const Graph& g, double p, const CheckMode& mode);
PropertyResult check_p3(const Graph& g, double p, const CheckMode& mode);
PropertyResult check_p4(const Graph& g, double p, const CheckMode& mode);
PropertyResult check_p5(const Graph& g, double p);
PropertyResult check_p6(const Graph& g, double p);

GoodnessReport is_good(const Graph& g, double p, const CheckMode& mode);

/// Exhaustive search over disjoint (S, T, I) for |N(T) \ N^+(S u I)| >
/// |N(S) \ N^+(I)| + slack, with |S| >= 2|T| and (S u T) n N(I) empty.
/// Requires n <= kExactCapTriples.
std::optional<Witness> find_p3_violation_exact(const Graph& g, double slack,
                                               std::uint64_t* evaluated = nullptr);

// Independent re-evaluation of each inequality, used to validate witnesses.
bool p1_violated(const Graph& g, double p, const std::vector<Vertex>& s);
bool p2_violated(const Graph& g, double p, const std::vector<Vertex>& s);
bool p3_violated(const Graph& g, double slack, const std::vector<Vertex>& s,
                 const std::vector<Vertex>& t, const std::vector<Vertex>& i);
bool p4_violated(const Graph& g, double p, const std::vector<Vertex>& s,
                 const std::vector<Vertex>& t);
bool witness_violates(const Graph& g, double p, std::size_t property_index,
                      const Witness& w);

struct ThetaResult {
  std::size_t value = 0;  ///< exact maximum, or the greedy cover when !exact
  bool exact = true;
  std::size_t upper_bound = 0;
};

/// max over S in N(u), |S| <= i, of |N(u) n N^+(S)|. Exact when
/// deg(u) <= 20, otherwise a greedy cover with an upper bound.
ThetaResult theta(const Graph& g, Vertex u, std::size_t i);

}  // namespace misproc
