#include "mgt/cayley.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mgt/limit.hpp"

namespace mgt {

std::optional<std::size_t> CayleyBall::out(std::size_t v, std::size_t gen) const {
  std::size_t w = out_adj[v * marking + gen];
  if (w == npos) return std::nullopt;
  return w;
}

std::optional<std::size_t> CayleyBall::in(std::size_t v, std::size_t gen) const {
  std::size_t w = in_adj[v * marking + gen];
  if (w == npos) return std::nullopt;
  return w;
}

CayleyBall enumerate_ball(const MarkedGroupOracle& oracle, unsigned radius,
                          std::size_t vertex_budget) {
  const std::size_t m = oracle.marking_size();

  struct Info {
    unsigned dist;
    FreeWord word;
  };
  std::map<std::string, Info> seen;  // ordered: stable iteration
  std::vector<std::string> frontier{oracle.identity_key()};
  seen.emplace(frontier.front(), Info{0, FreeWord{}});

  std::vector<std::pair<std::string, int>> moves;  // generator key, signed gen
  for (std::size_t j = 0; j < m; ++j) {
    moves.emplace_back(oracle.generator_key(j), static_cast<int>(j) + 1);
    moves.emplace_back(oracle.invert_key(oracle.generator_key(j)),
                       -(static_cast<int>(j) + 1));
  }

  for (unsigned d = 0; d < radius && !frontier.empty(); ++d) {
    std::vector<std::string> next;
    for (const std::string& g : frontier) {
      const FreeWord& gw = seen.at(g).word;
      for (const auto& [mk, signed_gen] : moves) {
        std::string h = oracle.multiply_keys(g, mk);
        if (seen.count(h)) continue;
        if (seen.size() >= vertex_budget)
          throw BudgetExceeded("ball enumeration exceeded vertex budget of " +
                               std::to_string(vertex_budget));
        FreeWord hw = gw;
        hw.push({signed_gen > 0 ? signed_gen - 1 : -signed_gen - 1,
                 signed_gen > 0 ? 1 : -1});
        seen.emplace(h, Info{d + 1, hw});
        next.push_back(h);
      }
    }
    frontier = std::move(next);
  }

  CayleyBall ball;
  ball.radius = radius;
  ball.marking = m;
  for (const auto& [key, info] : seen) {
    ball.keys.push_back(key);
    ball.dist.push_back(info.dist);
    ball.words.push_back(info.word);
  }
  // (distance, canonical key) lexicographic vertex order
  std::vector<std::size_t> perm(ball.keys.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (ball.dist[a] != ball.dist[b]) return ball.dist[a] < ball.dist[b];
    return ball.keys[a] < ball.keys[b];
  });
  CayleyBall sorted;
  sorted.radius = radius;
  sorted.marking = m;
  for (std::size_t i : perm) {
    sorted.index.emplace(ball.keys[i], sorted.keys.size());
    sorted.keys.push_back(std::move(ball.keys[i]));
    sorted.dist.push_back(ball.dist[i]);
    sorted.words.push_back(std::move(ball.words[i]));
  }

  const std::size_t n = sorted.size();
  sorted.out_adj.assign(n * m, CayleyBall::npos);
  sorted.in_adj.assign(n * m, CayleyBall::npos);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < m; ++j) {
      std::string h = oracle.multiply_keys(sorted.keys[v], moves[2 * j].first);
      auto it = sorted.index.find(h);
      if (it == sorted.index.end()) continue;
      sorted.edges.push_back({v, j, it->second});
      sorted.out_adj[v * m + j] = it->second;
      sorted.in_adj[it->second * m + j] = v;
    }
  }
  std::sort(sorted.edges.begin(), sorted.edges.end());
  return sorted;
}

std::optional<std::vector<std::size_t>> ball_isomorphic(const CayleyBall& b1,
                                                        const CayleyBall& b2) {
  if (b1.radius != b2.radius)
    throw std::invalid_argument("ball radii differ");
  if (b1.marking != b2.marking)
    throw std::invalid_argument("marking sizes differ");
  if (b1.size() != b2.size() || b1.edges.size() != b2.edges.size())
    return std::nullopt;

  const std::size_t n = b1.size(), m = b1.marking;
  std::vector<std::size_t> map(n, CayleyBall::npos);
  std::vector<std::size_t> queue{0};
  map[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t v = queue[qi], w = map[v];
    for (std::size_t j = 0; j < m; ++j) {
      for (int dir = 0; dir < 2; ++dir) {
        auto x = dir == 0 ? b1.out(v, j) : b1.in(v, j);
        auto y = dir == 0 ? b2.out(w, j) : b2.in(w, j);
        if (x.has_value() != y.has_value()) return std::nullopt;
        if (!x) continue;
        if (map[*x] == CayleyBall::npos) {
          map[*x] = *y;
          queue.push_back(*x);
        } else if (map[*x] != *y) {
          return std::nullopt;
        }
      }
    }
  }
  // Candidate map must cover everything bijectively ...
  std::vector<bool> hit(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (map[v] == CayleyBall::npos || hit[map[v]]) return std::nullopt;
    hit[map[v]] = true;
  }
  // ... and carry the full edge set onto the full edge set.
  std::vector<CayleyBall::Edge> mapped;
  mapped.reserve(b1.edges.size());
  for (const CayleyBall::Edge& e : b1.edges)
    mapped.push_back({map[e.src], e.gen, map[e.dst]});
  std::sort(mapped.begin(), mapped.end());
  if (mapped != b2.edges) return std::nullopt;
  return map;
}

unsigned max_common_radius(const MarkedGroupOracle& a,
                           const MarkedGroupOracle& b, unsigned r_max,
                           std::size_t vertex_budget) {
  if (a.marking_size() != b.marking_size())
    throw std::invalid_argument("marking sizes differ");
  unsigned best = 0;
  bool broken = false;
  for (unsigned r = 1; r <= r_max; ++r) {
    CayleyBall ba = enumerate_ball(a, r, vertex_budget);
    CayleyBall bb = enumerate_ball(b, r, vertex_budget);
    bool iso = ball_isomorphic(ba, bb).has_value();
    if (iso) {
      if (broken)
        throw std::logic_error(
            "ball isomorphism not monotone in r; oracle defect");
      best = r;
    } else {
      broken = true;
    }
  }
  return best;
}

std::vector<ConvergenceRow> convergence_profile(
    const std::shared_ptr<const HnnGroup>& group,
    const MarkedGroupOracle& limit, unsigned i_first, unsigned i_last,
    unsigned r_max, std::size_t vertex_budget) {
  std::vector<ConvergenceRow> rows;
  for (unsigned i = i_first; i <= i_last; ++i) {
    HnnOracle marked(group, i);
    ConvergenceRow row;
    row.i = i;
    row.r_star = max_common_radius(marked, limit, r_max, vertex_budget);
    CayleyBall ball = enumerate_ball(marked, row.r_star, vertex_budget);
    row.vertices = ball.size();
    row.edges = ball.edges.size();
    rows.push_back(row);
  }
  return rows;
}

std::string export_dot(const CayleyBall& ball,
                       const std::vector<std::string>& generator_names) {
  std::ostringstream out;
  out << "digraph ball {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t v = 0; v < ball.size(); ++v) {
    out << "  n" << v << " [label=\"" << ball.words[v].to_string(generator_names)
        << "\"";
    if (v == 0) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const CayleyBall::Edge& e : ball.edges)
    out << "  n" << e.src << " -> n" << e.dst << " [label=\""
        << generator_names.at(e.gen) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::vector<std::size_t> canonical_traversal_order(const CayleyBall& ball) {
  const std::size_t m = ball.marking;
  std::vector<std::size_t> order{0};
  std::vector<bool> seen(ball.size(), false);
  seen[0] = true;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    std::size_t v = order[qi];
    for (std::size_t j = 0; j < m; ++j) {
      for (int dir = 0; dir < 2; ++dir) {
        auto w = dir == 0 ? ball.out(v, j) : ball.in(v, j);
        if (w && !seen[*w]) {
          seen[*w] = true;
          order.push_back(*w);
        }
      }
    }
  }
  if (order.size() != ball.size())
    throw std::logic_error("ball is not connected; enumeration defect");
  return order;
}

}  // namespace mgt
