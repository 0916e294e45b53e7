#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgt/hnn.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

/// Thrown when a ball enumeration would exceed the vertex budget.  A
/// truncated ball is meaningless for the comparisons built on top of it.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

constexpr std::size_t kDefaultVertexBudget = 5'000'000;

/// Rooted, edge-labeled ball of radius r in a Cayley graph.  Vertices are
/// ordered by (distance, canonical key); the root is index 0.  Edges carry
/// generator labels and keep only pairs with both endpoints inside the ball.
struct CayleyBall {
  struct Edge {
    std::size_t src = 0;
    std::size_t gen = 0;
    std::size_t dst = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  unsigned radius = 0;
  std::size_t marking = 0;
  std::vector<std::string> keys;
  std::vector<unsigned> dist;
  std::vector<FreeWord> words;  // one geodesic representative per vertex
  std::vector<Edge> edges;      // sorted by (src, gen, dst)
  std::unordered_map<std::string, std::size_t> index;
  // adjacency by (vertex * marking + gen); npos when absent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> out_adj;
  std::vector<std::size_t> in_adj;

  std::size_t size() const { return keys.size(); }
  std::optional<std::size_t> find(const std::string& key) const {
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  /// Outgoing edge target by (vertex, generator), if present.
  std::optional<std::size_t> out(std::size_t v, std::size_t gen) const;
  /// Incoming edge source by (vertex, generator), if present.
  std::optional<std::size_t> in(std::size_t v, std::size_t gen) const;
};

/// BFS over the symmetrized marking, deduplicated by canonical key.
CayleyBall enumerate_ball(const MarkedGroupOracle& oracle, unsigned radius,
                          std::size_t vertex_budget = kDefaultVertexBudget);

/// The unique root-fixing, label- and orientation-preserving bijection between
/// two balls, or nullopt.  The candidate map is forced by simultaneous
/// traversal (out-degree per label <= 1) and then checked against the full
/// edge sets.
std::optional<std::vector<std::size_t>> ball_isomorphic(const CayleyBall& b1,
                                                        const CayleyBall& b2);

/// Largest r <= r_max with isomorphic radius-r balls; monotonicity of the
/// isomorphism predicate over r is checked, not assumed.
unsigned max_common_radius(const MarkedGroupOracle& a,
                           const MarkedGroupOracle& b, unsigned r_max,
                           std::size_t vertex_budget = kDefaultVertexBudget);

struct ConvergenceRow {
  unsigned i = 0;
  unsigned r_star = 0;
  std::size_t vertices = 0;  // of the radius-r_star ball of the marked copy
  std::size_t edges = 0;
};

/// r*(i) = max_common_radius of (G, marking lambda^i) against the limit
/// oracle, for each i in [i_first, i_last].
std::vector<ConvergenceRow> convergence_profile(
    const std::shared_ptr<const HnnGroup>& group,
    const MarkedGroupOracle& limit, unsigned i_first, unsigned i_last,
    unsigned r_max, std::size_t vertex_budget = kDefaultVertexBudget);

/// Deterministic DOT digraph; generator names label the edges, the root is
/// highlighted.
std::string export_dot(const CayleyBall& ball,
                       const std::vector<std::string>& generator_names);

/// Isomorphism-invariant vertex ordering: forced traversal from the root
/// following labels in fixed order.  Two isomorphic balls list corresponding
/// vertices at identical positions.  Distances are nondecreasing along it.
std::vector<std::size_t> canonical_traversal_order(const CayleyBall& ball);

}  // namespace mgt
