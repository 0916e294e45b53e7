#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgt/algebra.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

struct ConditionReport {
  bool commute = false;          // lambda * mu == mu * lambda
  bool joint_generation = false; // <lambda(A) U mu(A)> = A
  bool proper_union = false;     // lambda(A) U mu(A) != A
  std::string diagnostics;

  bool all() const { return commute && joint_generation && proper_union; }
};

ConditionReport validate_admissible_pair(const Monomorphism& lambda,
                                   const Monomorphism& mu);

/// Canonical Britton form a_0 t^{e_1} a_1 ... t^{e_n} a_n: pinch-free, with
/// every a_k (k >= 1) the canonical residue for the lattice selected by e_k
/// (lambda-lattice after t^{-1}, mu-lattice after t^{+1}); lattice overflow is
/// absorbed leftward into the head.  Two elements are equal iff their forms
/// are componentwise identical.
struct BrittonForm {
  struct Block {
    int eps = 1;  // +1 or -1
    LatticeVector vec;
    friend bool operator==(const Block&, const Block&) = default;
  };
  LatticeVector head;
  std::vector<Block> tail;

  std::size_t t_length() const { return tail.size(); }
  friend bool operator==(const BrittonForm&, const BrittonForm&) = default;
};

/// The group G = <A, t : t^{-1} lambda(a) t = mu(a)> for A = Z^d, as an exact
/// oracle on canonical Britton forms.  Construction validates the three
/// conditions of the underlying theorem and refuses invalid pairs.
class HnnGroup {
 public:
  HnnGroup(Monomorphism lambda, Monomorphism mu, std::string name = "G");

  const std::string& name() const { return name_; }
  std::size_t rank() const { return lambda_.rank(); }
  const Monomorphism& lambda() const { return lambda_; }
  const Monomorphism& mu() const { return mu_; }
  const ConditionReport& report() const { return report_; }

  BrittonForm identity() const { return BrittonForm{zero_vector(rank()), {}}; }
  bool is_identity(const BrittonForm& g) const {
    return g.tail.empty() && is_zero(g.head);
  }

  /// Canonical form of a free word over the marking (a_1, ..., a_d, t).
  BrittonForm britton_reduce(const FreeWord& w) const;

  BrittonForm multiply(const BrittonForm& g, const BrittonForm& h) const;
  BrittonForm invert(const BrittonForm& g) const;

  /// Lattice element as a group element.
  BrittonForm from_vector(const LatticeVector& v) const {
    return BrittonForm{v, {}};
  }

  /// The endomorphism t |-> t, a |-> lambda(a).
  BrittonForm phi(const BrittonForm& g) const;

  /// A free word w over the marking with phi(britton_reduce(w)) = g.
  FreeWord phi_preimage(const BrittonForm& g) const;

  /// Membership in N_i = ker(phi^i); N_0 = {1}.
  bool in_kernel(const FreeWord& w, unsigned i) const;

  /// True iff distinct reduced words of length <= max_len over {u, w}^{+-1}
  /// represent distinct elements of G (so in particular every nonempty such
  /// word is nontrivial).  A necessary certificate of freeness, not a proof.
  bool free_subgroup_certificate(const FreeWord& u, const FreeWord& w,
                                 unsigned max_len) const;

  /// Smallest-max-norm vector outside lambda(Z^d) U mu(Z^d).
  LatticeVector outside_union_witness() const;

  std::string canonical_key(const BrittonForm& g) const;
  BrittonForm parse_key(const std::string& key) const;

  /// Marking alphabet size for free words over this group: d + 1 (t last).
  std::size_t alphabet_size() const { return rank() + 1; }
  int t_index() const { return static_cast<int>(rank()); }

 private:
  const Monomorphism& lattice_for(int eps) const {
    return eps < 0 ? lambda_ : mu_;
  }
  // t^{-1}(lambda z) = (mu z) t^{-1}  and  t (mu z) = (lambda z) t
  LatticeVector absorb_left(int eps, const LatticeVector& z) const {
    return eps < 0 ? mu_.apply(z) : lambda_.apply(z);
  }
  void normalize(BrittonForm& g) const;
  void right_multiply_vector(BrittonForm& g, const LatticeVector& v) const;
  void right_multiply_t(BrittonForm& g, int eps) const;

  Monomorphism lambda_, mu_;
  std::string name_;
  ConditionReport report_;
  IntMatrix block_u_;  // 2d x 2d unimodular with [lambda|mu] * U = [I|0]
};

using HnnGroupPtr = std::shared_ptr<const HnnGroup>;

/// Convenience constructor for the Baumslag-Solitar group BS(m, n).
HnnGroupPtr make_baumslag_solitar(long long m, long long n);

/// Marked-group oracle for G with the marking (lambda^i(a_1), ...,
/// lambda^i(a_d), t).  Index i = 0 is the plain marking.
class HnnOracle final : public MarkedGroupOracle {
 public:
  HnnOracle(HnnGroupPtr group, unsigned marking_index = 0);

  const HnnGroup& group() const { return *group_; }
  unsigned marking_index() const { return index_; }

  std::string name() const override;
  std::size_t marking_size() const override { return group_->rank() + 1; }
  std::string generator_name(std::size_t j) const override;

  std::string identity_key() const override;
  std::string generator_key(std::size_t j) const override;
  std::string multiply_keys(const std::string& a,
                            const std::string& b) const override;
  std::string invert_key(const std::string& a) const override;

 private:
  HnnGroupPtr group_;
  unsigned index_;
  std::vector<std::string> gen_keys_;
};

}  // namespace mgt
