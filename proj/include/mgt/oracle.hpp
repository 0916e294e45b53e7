#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mgt/algebra.hpp"

namespace mgt {

/// Exact word-problem oracle for a marked group: a group together with an
/// ordered finite generating set.  Elements travel as canonical keys,
/// injective on group elements and stable across runs.
class MarkedGroupOracle {
 public:
  virtual ~MarkedGroupOracle() = default;

  virtual std::string name() const = 0;
  virtual std::size_t marking_size() const = 0;
  virtual std::string generator_name(std::size_t j) const = 0;

  virtual std::string identity_key() const = 0;
  /// Canonical key of the j-th marked generator.
  virtual std::string generator_key(std::size_t j) const = 0;
  virtual std::string multiply_keys(const std::string& a,
                                    const std::string& b) const = 0;
  virtual std::string invert_key(const std::string& a) const = 0;

  bool is_identity(const std::string& key) const {
    return key == identity_key();
  }

  /// Evaluates a free word over the marking.
  std::string evaluate(const FreeWord& w) const {
    std::string acc = identity_key();
    for (const Letter& l : w.letters()) {
      std::string g = generator_key(static_cast<std::size_t>(l.gen));
      if (l.sign < 0) g = invert_key(g);
      acc = multiply_keys(acc, g);
    }
    return acc;
  }

  std::vector<std::string> generator_names() const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < marking_size(); ++j)
      out.push_back(generator_name(j));
    return out;
  }
};

using OraclePtr = std::shared_ptr<const MarkedGroupOracle>;

/// Free group F_m: elements are reduced words, the key is the word itself.
class FreeGroupOracle final : public MarkedGroupOracle {
 public:
  explicit FreeGroupOracle(std::size_t rank) : rank_(rank) {}

  std::string name() const override { return "F" + std::to_string(rank_); }
  std::size_t marking_size() const override { return rank_; }
  std::string generator_name(std::size_t j) const override {
    return "x" + std::to_string(j + 1);
  }

  std::string identity_key() const override { return ""; }
  std::string generator_key(std::size_t j) const override;
  std::string multiply_keys(const std::string& a,
                            const std::string& b) const override;
  std::string invert_key(const std::string& a) const override;

  static std::string word_to_key(const FreeWord& w);
  static FreeWord key_to_word(const std::string& key);

 private:
  std::size_t rank_;
};

}  // namespace mgt
