#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgt/algebra.hpp"
#include "mgt/hnn.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

/// Element of the affine model of the limit group: a rational translation
/// together with an integer shift.  Composition
///   (x, k) * (y, l) = (x + T^k y, k + l),   T = lambda * mu^{-1},
/// which realizes t^{-1} lambda(a) t = mu(a) exactly.
struct ModelElement {
  std::vector<Rat> translation;
  long long shift = 0;

  friend bool operator==(const ModelElement&, const ModelElement&) = default;
};

/// The limit group G/N (N the union of the kernels of the powers of phi),
/// realized as the subgroup of Q^d x| Z generated by the standard basis
/// vectors and the shift.  Marking (a_1, ..., a_d, t).
class LimitOracle final : public MarkedGroupOracle {
 public:
  explicit LimitOracle(HnnGroupPtr group);

  const HnnGroup& group() const { return *group_; }
  std::size_t rank() const { return group_->rank(); }

  ModelElement identity() const {
    return ModelElement{std::vector<Rat>(rank()), 0};
  }
  bool is_identity_element(const ModelElement& g) const;
  ModelElement compose(const ModelElement& a, const ModelElement& b) const;
  ModelElement inverse(const ModelElement& a) const;

  /// Image of a free word over the marking: a_j -> (e_j, 0), t -> (0, 1).
  ModelElement model_map(const FreeWord& w) const;

  std::string key_of(const ModelElement& g) const;
  ModelElement parse_element(const std::string& key) const;

  // MarkedGroupOracle surface
  std::string name() const override { return "limit(" + group_->name() + ")"; }
  std::size_t marking_size() const override { return rank() + 1; }
  std::string generator_name(std::size_t j) const override;
  std::string identity_key() const override { return key_of(identity()); }
  std::string generator_key(std::size_t j) const override;
  std::string multiply_keys(const std::string& a,
                            const std::string& b) const override;
  std::string invert_key(const std::string& a) const override;

 private:
  RatMatrix power_t(long long k) const;

  HnnGroupPtr group_;
  RatMatrix t_, t_inv_;  // T = lambda * mu^{-1} and its inverse
};

/// Verdict of the bounded membership semi-decision for the limit kernel N,
/// always cross-checked against the affine model.
struct LimitVerdict {
  std::optional<unsigned> least_i;  // least i <= i_max with phi^i(w) = 1
  unsigned i_max = 0;
  bool model_trivial = false;
  /// The two channels agree: an i was found iff the model kills the word.
  bool agree() const { return least_i.has_value() == model_trivial; }
};

/// Reports the least i <= i_max with phi^i(w) = 1 when one exists, and the
/// affine-model verdict for the same word.
LimitVerdict limit_is_identity(const HnnGroup& g, const LimitOracle& model,
                               const FreeWord& w, unsigned i_max);

}  // namespace mgt
