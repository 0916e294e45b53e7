#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgt/algebra.hpp"
#include "mgt/cayley.hpp"
#include "mgt/limit.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

/// A finitely supported unit vector together with its exact per-generator
/// displacements ||sv - v||.  The bound (max over the marking) is a valid
/// upper bound on the displacement constant alpha(G, S) by definition of the
/// infimum.
struct DisplacementWitness {
  std::string oracle_name;
  unsigned radius = 0;  // support is contained in B(radius)
  struct Entry {
    std::string key;
    FreeWord word;  // geodesic representative, used for quotient pushdown
    double coeff = 0.0;
  };
  std::vector<Entry> support;
  std::vector<double> per_generator;  // ||sv - v|| per marked generator
  double bound = 0.0;                 // max over generators
};

struct SpectralOptions {
  double tolerance = 1e-10;
  unsigned long max_iterations = 100'000;
  bool symmetrize = false;  // displace over S u S^{-1} instead of S
  std::size_t vertex_budget = kDefaultVertexBudget;
};

struct SpectralReport {
  unsigned radius = 0;
  double lambda_min = 0.0;
  double residual = 0.0;
  unsigned long iterations = 0;
  bool converged = false;
  double bound_sqrt = 0.0;     // sqrt(lambda_min)
  double bound_refined = 0.0;  // exact max displacement of the minimizer
  DisplacementWitness minimizer;
};

/// Exact displacement evaluation of an explicit vector supported in B(r).
/// Coefficients are matched to ball vertices by canonical key; the vector is
/// normalized first.
DisplacementWitness displacement(
    const MarkedGroupOracle& oracle,
    const std::vector<std::pair<std::string, double>>& support, unsigned r,
    const SpectralOptions& opts = {});

/// Same entry point with the support given by free words over the marking.
DisplacementWitness displacement_of_words(
    const MarkedGroupOracle& oracle,
    const std::vector<std::pair<FreeWord, double>>& support, unsigned r,
    const SpectralOptions& opts = {});

/// Smallest eigenvalue of the Dirichlet restriction of
///   Q(v) = sum_s ||sv - v||^2
/// to vectors supported in B(r), by deterministic shifted power iteration,
/// plus the refined max-displacement bound of the eigen-minimizer.  All
/// floating-point work runs in the isomorphism-invariant traversal order of
/// B(r+1), so isomorphic balls produce bit-identical reports.
SpectralReport alpha_upper_bound(const MarkedGroupOracle& oracle, unsigned r,
                                 const SpectralOptions& opts = {});

struct AlphaSequenceRow {
  unsigned i = 0;
  unsigned r_star = 0;  // max common radius against the limit marking
  SpectralReport report;
  bool matches_limit_bitwise = false;
};

struct AlphaSequenceResult {
  SpectralReport limit_report;
  std::vector<AlphaSequenceRow> rows;
};

/// Reports for G with markings lambda^i over i in [i_first, i_last], at fixed
/// radius r, against the limit oracle.  Whenever r*(i) >= r+1 the report must
/// equal the limit report bit for bit; a mismatch throws.
AlphaSequenceResult alpha_sequence(const HnnGroupPtr& group,
                                   const LimitOracle& limit, unsigned i_first,
                                   unsigned i_last, unsigned r,
                                   const SpectralOptions& opts = {});

/// Witness pushdown along a marking-compatible quotient G -> P: the image
/// coefficient is the l2 mass of each fiber.  The per-generator displacement
/// inequality ||su - u|| <= ||sv - v|| is checked on every call.
DisplacementWitness pushdown_witness(const DisplacementWitness& witness,
                                     const MarkedGroupOracle& target,
                                     const SpectralOptions& opts = {});

/// Greedy local search for a small-boundary subset F of B(r); returns the
/// normalized indicator witness.  Heuristic: any output is a valid upper
/// bound regardless of search quality.
DisplacementWitness folner_search(const MarkedGroupOracle& oracle, unsigned r,
                                  unsigned long toggle_budget = 100'000,
                                  const SpectralOptions& opts = {});

/// Exact return probability p_{2k}(e) of the uniform walk on S u S^{-1}.
Rat return_probability(const MarkedGroupOracle& oracle, unsigned k,
                       std::size_t support_budget = kDefaultVertexBudget);

/// p_2, p_4, ..., p_{2k} in one pass.
std::vector<Rat> return_probability_sequence(
    const MarkedGroupOracle& oracle, unsigned k,
    std::size_t support_budget = kDefaultVertexBudget);

}  // namespace mgt
