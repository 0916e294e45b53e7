#include "mgt/growth.hpp"

#include <cmath>
#include <stdexcept>

namespace mgt {

GrowthTable growth_table(const MarkedGroupOracle& oracle, unsigned n_max,
                         std::size_t vertex_budget) {
  GrowthTable table;
  table.oracle_name = oracle.name();
  table.marking = oracle.generator_names();
  CayleyBall ball = enumerate_ball(oracle, n_max, vertex_budget);
  std::vector<Int> gamma(n_max + 1, Int(0));
  for (unsigned d : ball.dist) ++gamma.at(d);
  for (unsigned n = 1; n <= n_max; ++n) gamma[n] += gamma[n - 1];
  table.gamma = std::move(gamma);
  for (unsigned n = 1; n <= n_max; ++n)
    table.roots.push_back(
        std::pow(table.gamma[n].convert_to<double>(), 1.0 / n));

  for (unsigned a = 1; a <= n_max; ++a)
    for (unsigned b = a; a + b <= n_max; ++b)
      if (table.gamma[a + b] > table.gamma[a] * table.gamma[b])
        throw std::logic_error("growth function not submultiplicative");
  return table;
}

double omega_upper(const GrowthTable& table) {
  if (table.roots.empty())
    throw std::invalid_argument("growth table has no entries");
  double best = table.roots.front();
  for (double r : table.roots) best = std::min(best, r);
  return best;
}

double omega_ratio_heuristic(const GrowthTable& table) {
  unsigned n = table.n_max();
  if (n < 1) throw std::invalid_argument("growth table has no entries");
  return table.gamma[n].convert_to<double>() /
         table.gamma[n - 1].convert_to<double>();
}

std::vector<bool> quotient_growth_check(const GrowthTable& g,
                                        const GrowthTable& p) {
  if (g.marking.size() != p.marking.size())
    throw std::invalid_argument("marking sizes differ along the quotient");
  unsigned n_max = std::min(g.n_max(), p.n_max());
  std::vector<bool> ok;
  for (unsigned n = 0; n <= n_max; ++n) ok.push_back(p.gamma[n] <= g.gamma[n]);
  return ok;
}

}  // namespace mgt
