#pragma once

#include <string>
#include <vector>

#include "mgt/cayley.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

/// Exact growth function gamma(n) = |B(n)| of a marked group, with the
/// derived root sequence gamma(n)^{1/n}.
struct GrowthTable {
  std::string oracle_name;
  std::vector<std::string> marking;
  std::vector<Int> gamma;  // gamma[n], n = 0..n_max
  std::vector<double> roots;  // gamma(n)^{1/n}, n >= 1

  unsigned n_max() const { return static_cast<unsigned>(gamma.size()) - 1; }
};

/// Ball cardinalities up to n_max.  Submultiplicativity
/// gamma(m+n) <= gamma(m) gamma(n) is verified on all in-range pairs and a
/// violation throws (it would mean a defective oracle).
GrowthTable growth_table(const MarkedGroupOracle& oracle, unsigned n_max,
                         std::size_t vertex_budget = kDefaultVertexBudget);

/// min_n gamma(n)^{1/n}: a certified upper bound on the exponential growth
/// rate by Fekete's lemma for submultiplicative sequences.
double omega_upper(const GrowthTable& table);

/// Non-certified lower-bound heuristic: the last ratio gamma(n)/gamma(n-1).
double omega_ratio_heuristic(const GrowthTable& table);

/// gamma_P(n) <= gamma_G(n) for every n <= n_max, per marking-compatible
/// quotient pair (G, P).  Returns the per-n boolean table.
std::vector<bool> quotient_growth_check(const GrowthTable& g,
                                        const GrowthTable& p);

}  // namespace mgt
