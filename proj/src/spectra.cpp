#include "mgt/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace mgt {
namespace {

// Everything numeric runs over the isomorphism-invariant traversal order of
// B(r+1): isomorphic balls then produce identical float sequences.
struct Workspace {
  const MarkedGroupOracle* oracle = nullptr;
  unsigned r = 0;
  CayleyBall ball;                  // B(r+1)
  std::vector<std::size_t> order;   // position -> ball vertex
  std::size_t n_inner = 0;          // positions with dist <= r
  std::size_t num_s = 0;            // effective generator count
  std::vector<std::string> labels;
  // left[s][p] = position of s * g for the vertex g at position p < n_inner
  std::vector<std::vector<std::size_t>> left;
};

Workspace build_workspace(const MarkedGroupOracle& oracle, unsigned r,
                          const SpectralOptions& opts) {
  Workspace ws;
  ws.oracle = &oracle;
  ws.r = r;
  ws.ball = enumerate_ball(oracle, r + 1, opts.vertex_budget);
  ws.order = canonical_traversal_order(ws.ball);
  std::vector<std::size_t> pos(ws.ball.size());
  for (std::size_t p = 0; p < ws.order.size(); ++p) pos[ws.order[p]] = p;
  ws.n_inner = 0;
  for (std::size_t p = 0; p < ws.order.size(); ++p)
    if (ws.ball.dist[ws.order[p]] <= r) ++ws.n_inner;

  const std::size_t m = oracle.marking_size();
  std::vector<std::string> move_keys;
  for (std::size_t j = 0; j < m; ++j) {
    move_keys.push_back(oracle.generator_key(j));
    ws.labels.push_back(oracle.generator_name(j));
  }
  if (opts.symmetrize) {
    for (std::size_t j = 0; j < m; ++j) {
      move_keys.push_back(oracle.invert_key(oracle.generator_key(j)));
      ws.labels.push_back(oracle.generator_name(j) + "^-1");
    }
  }
  ws.num_s = move_keys.size();

  ws.left.assign(ws.num_s, std::vector<std::size_t>(ws.n_inner));
  for (std::size_t s = 0; s < ws.num_s; ++s) {
    for (std::size_t p = 0; p < ws.n_inner; ++p) {
      const std::string& g = ws.ball.keys[ws.order[p]];
      auto q = ws.ball.find(oracle.multiply_keys(move_keys[s], g));
      if (!q)
        throw std::logic_error("left translate escaped B(r+1)");
      ws.left[s][p] = pos[*q];
    }
  }
  return ws;
}

// per-generator displacements of a unit vector over the inner positions
std::vector<double> displacements_of(const Workspace& ws,
                                     const std::vector<double>& x) {
  const std::size_t total = ws.ball.size();
  std::vector<double> out(ws.num_s, 0.0);
  std::vector<double> shifted(total);
  for (std::size_t s = 0; s < ws.num_s; ++s) {
    std::fill(shifted.begin(), shifted.end(), 0.0);
    for (std::size_t p = 0; p < ws.n_inner; ++p) shifted[ws.left[s][p]] = x[p];
    double acc = 0.0;
    for (std::size_t q = 0; q < total; ++q) {
      double base = q < ws.n_inner ? x[q] : 0.0;
      double diff = shifted[q] - base;
      acc += diff * diff;
    }
    out[s] = std::sqrt(acc);
  }
  return out;
}

DisplacementWitness witness_from_vector(const Workspace& ws,
                                        const std::vector<double>& x) {
  DisplacementWitness w;
  w.oracle_name = ws.oracle->name();
  w.radius = ws.r;
  for (std::size_t p = 0; p < ws.n_inner; ++p) {
    if (x[p] == 0.0) continue;
    std::size_t v = ws.order[p];
    w.support.push_back({ws.ball.keys[v], ws.ball.words[v], x[p]});
  }
  w.per_generator = displacements_of(ws, x);
  w.bound = 0.0;
  for (double d : w.per_generator) w.bound = std::max(w.bound, d);
  return w;
}

void normalize_vector(std::vector<double>& x) {
  double acc = 0.0;
  for (double c : x) acc += c * c;
  if (acc == 0.0) throw std::invalid_argument("zero vector has no displacement");
  double inv = 1.0 / std::sqrt(acc);
  for (double& c : x) c *= inv;
}

// y = A x for the Dirichlet quadratic form sum_s ||sv - v||^2
void apply_operator(const Workspace& ws, const std::vector<double>& x,
                    std::vector<double>& y) {
  const std::size_t n = ws.n_inner;
  const double diag = 2.0 * static_cast<double>(ws.num_s);
  for (std::size_t p = 0; p < n; ++p) y[p] = diag * x[p];
  for (std::size_t s = 0; s < ws.num_s; ++s)
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t q = ws.left[s][p];
      if (q < n) {
        y[p] -= x[q];
        y[q] -= x[p];
      }
    }
}

}  // namespace

DisplacementWitness displacement(
    const MarkedGroupOracle& oracle,
    const std::vector<std::pair<std::string, double>>& support, unsigned r,
    const SpectralOptions& opts) {
  Workspace ws = build_workspace(oracle, r, opts);
  std::map<std::string, std::size_t> pos_of_key;
  for (std::size_t p = 0; p < ws.n_inner; ++p)
    pos_of_key.emplace(ws.ball.keys[ws.order[p]], p);
  std::vector<double> x(ws.n_inner, 0.0);
  for (const auto& [key, coeff] : support) {
    auto it = pos_of_key.find(key);
    if (it == pos_of_key.end())
      throw std::invalid_argument("support escapes B(r): " + key);
    x[it->second] += coeff;
  }
  normalize_vector(x);
  return witness_from_vector(ws, x);
}

DisplacementWitness displacement_of_words(
    const MarkedGroupOracle& oracle,
    const std::vector<std::pair<FreeWord, double>>& support, unsigned r,
    const SpectralOptions& opts) {
  std::vector<std::pair<std::string, double>> keyed;
  for (const auto& [word, coeff] : support)
    keyed.emplace_back(oracle.evaluate(word), coeff);
  return displacement(oracle, keyed, r, opts);
}

SpectralReport alpha_upper_bound(const MarkedGroupOracle& oracle, unsigned r,
                                 const SpectralOptions& opts) {
  if (r < 1) throw std::invalid_argument("radius must be >= 1");
  Workspace ws = build_workspace(oracle, r, opts);
  const std::size_t n = ws.n_inner;

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> av(n), w(n);
  const double sigma = 4.0 * static_cast<double>(ws.num_s);

  SpectralReport rep;
  rep.radius = r;
  for (unsigned long it = 0; it < opts.max_iterations; ++it) {
    apply_operator(ws, v, av);
    double theta = 0.0;
    for (std::size_t p = 0; p < n; ++p) theta += v[p] * av[p];
    double res = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      double d = av[p] - theta * v[p];
      res += d * d;
    }
    res = std::sqrt(res);
    rep.lambda_min = theta;
    rep.residual = res;
    rep.iterations = it + 1;
    if (res <= opts.tolerance) {
      rep.converged = true;
      break;
    }
    double nrm = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      w[p] = sigma * v[p] - av[p];
      nrm += w[p] * w[p];
    }
    nrm = std::sqrt(nrm);
    for (std::size_t p = 0; p < n; ++p) v[p] = w[p] / nrm;
  }

  rep.bound_sqrt = std::sqrt(std::max(rep.lambda_min, 0.0));
  rep.minimizer = witness_from_vector(ws, v);
  rep.bound_refined = rep.minimizer.bound;
  return rep;
}

AlphaSequenceResult alpha_sequence(const HnnGroupPtr& group,
                                   const LimitOracle& limit, unsigned i_first,
                                   unsigned i_last, unsigned r,
                                   const SpectralOptions& opts) {
  AlphaSequenceResult result;
  result.limit_report = alpha_upper_bound(limit, r, opts);
  for (unsigned i = i_first; i <= i_last; ++i) {
    HnnOracle marked(group, i);
    AlphaSequenceRow row;
    row.i = i;
    row.r_star = max_common_radius(marked, limit, r + 1, opts.vertex_budget);
    row.report = alpha_upper_bound(marked, r, opts);
    row.matches_limit_bitwise =
        row.report.lambda_min == result.limit_report.lambda_min &&
        row.report.bound_refined == result.limit_report.bound_refined;
    if (row.r_star >= r + 1 && !row.matches_limit_bitwise)
      throw std::logic_error(
          "isomorphic balls produced different spectral reports");
    result.rows.push_back(std::move(row));
  }
  return result;
}

DisplacementWitness pushdown_witness(const DisplacementWitness& witness,
                                     const MarkedGroupOracle& target,
                                     const SpectralOptions& opts) {
  Workspace ws = build_workspace(target, witness.radius, opts);
  if (witness.per_generator.size() != ws.num_s)
    throw std::invalid_argument("marking sizes differ along the quotient");

  // l2 mass of each fiber
  std::map<std::string, double> mass;
  for (const auto& entry : witness.support)
    mass[target.evaluate(entry.word)] += entry.coeff * entry.coeff;

  std::map<std::string, std::size_t> pos_of_key;
  for (std::size_t p = 0; p < ws.n_inner; ++p)
    pos_of_key.emplace(ws.ball.keys[ws.order[p]], p);
  std::vector<double> x(ws.n_inner, 0.0);
  for (const auto& [key, sq] : mass) {
    auto it = pos_of_key.find(key);
    if (it == pos_of_key.end())
      throw std::logic_error("pushdown image escaped B(r): " + key);
    x[it->second] = std::sqrt(sq);
  }
  DisplacementWitness down = witness_from_vector(ws, x);
  for (std::size_t s = 0; s < ws.num_s; ++s)
    if (down.per_generator[s] > witness.per_generator[s] + 1e-9)
      throw std::logic_error("pushdown displacement inequality violated");
  return down;
}

DisplacementWitness folner_search(const MarkedGroupOracle& oracle, unsigned r,
                                  unsigned long toggle_budget,
                                  const SpectralOptions& opts) {
  Workspace ws = build_workspace(oracle, r, opts);
  const std::size_t n = ws.n_inner;
  std::vector<char> in_set(n, 1);
  std::size_t set_size = n;

  // |sF \Delta F| = 2 |sF \ F| since left translation is injective
  auto objective = [&](const std::vector<char>& f, std::size_t size) {
    if (size == 0) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t s = 0; s < ws.num_s; ++s) {
      std::size_t out = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (!f[p]) continue;
        std::size_t q = ws.left[s][p];
        if (q >= n || !f[q]) ++out;
      }
      worst = std::max(worst,
                       2.0 * static_cast<double>(out) / static_cast<double>(size));
    }
    return worst;
  };

  double best = objective(in_set, set_size);
  unsigned long used = 0;
  bool improved = true;
  while (improved && used < toggle_budget) {
    improved = false;
    std::size_t best_p = n;
    double best_val = best;
    for (std::size_t p = 0; p < n && used < toggle_budget; ++p, ++used) {
      std::size_t new_size = set_size + (in_set[p] ? -1 : 1);
      if (new_size == 0) continue;
      in_set[p] ^= 1;
      double val = objective(in_set, new_size);
      in_set[p] ^= 1;
      if (val < best_val) {
        best_val = val;
        best_p = p;
      }
    }
    if (best_p < n) {
      in_set[best_p] ^= 1;
      set_size += in_set[best_p] ? 1 : -1;
      best = best_val;
      improved = true;
    }
  }

  std::vector<double> x(n, 0.0);
  double coeff = 1.0 / std::sqrt(static_cast<double>(set_size));
  for (std::size_t p = 0; p < n; ++p)
    if (in_set[p]) x[p] = coeff;
  return witness_from_vector(ws, x);
}

std::vector<Rat> return_probability_sequence(const MarkedGroupOracle& oracle,
                                             unsigned k,
                                             std::size_t support_budget) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::size_t m = oracle.marking_size();
  std::vector<std::string> moves;
  for (std::size_t j = 0; j < m; ++j) {
    moves.push_back(oracle.generator_key(j));
    moves.push_back(oracle.invert_key(oracle.generator_key(j)));
  }
  const Rat step_weight(1, static_cast<long>(moves.size()));

  std::map<std::string, Rat> measure{{oracle.identity_key(), Rat(1)}};
  std::vector<Rat> out;
  for (unsigned j = 0; j < k; ++j) {
    std::map<std::string, Rat> next;
    for (const auto& [g, p] : measure)
      for (const std::string& s : moves)
        next[oracle.multiply_keys(g, s)] += p * step_weight;
    if (next.size() > support_budget)
      throw BudgetExceeded("walk support exceeded budget");
    measure = std::move(next);
    // p_{2(j+1)} = sum_g mu^{*(j+1)}(g) mu^{*(j+1)}(g^{-1})
    Rat ret(0);
    for (const auto& [g, p] : measure) {
      auto it = measure.find(oracle.invert_key(g));
      if (it != measure.end()) ret += p * it->second;
    }
    out.push_back(ret);
  }
  return out;
}

Rat return_probability(const MarkedGroupOracle& oracle, unsigned k,
                       std::size_t support_budget) {
  return return_probability_sequence(oracle, k, support_budget).back();
}

}  // namespace mgt
