#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Free words
// ---------------------------------------------------------------------------

struct Letter {
  int gen = 0;   // generator index, 0-based
  int sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word over a marking alphabet of size m.
/// Letters are (generator index, sign); adjacent inverse pairs never occur.
class FreeWord {
 public:
  FreeWord() = default;

  /// Builds the reduced form of a raw letter sequence.
  /// Throws std::invalid_argument on an out-of-range generator index.
  static FreeWord reduce(const std::vector<Letter>& raw, int alphabet_size);

  static FreeWord generator(int gen, int sign) {
    FreeWord w;
    w.letters_.push_back({gen, sign});
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Appends one letter, cancelling against the tail if possible.
  void push(Letter l) {
    if (!letters_.empty() && letters_.back().gen == l.gen &&
        letters_.back().sign == -l.sign) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  FreeWord operator*(const FreeWord& rhs) const {
    FreeWord out = *this;
    for (const Letter& l : rhs.letters_) out.push(l);
    return out;
  }

  FreeWord inverse() const {
    FreeWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      out.letters_.push_back({it->gen, -it->sign});
    return out;
  }

  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend bool operator<(const FreeWord& a, const FreeWord& b) {
    if (a.letters_.size() != b.letters_.size())
      return a.letters_.size() < b.letters_.size();
    for (std::size_t i = 0; i < a.letters_.size(); ++i) {
      if (a.letters_[i].gen != b.letters_[i].gen)
        return a.letters_[i].gen < b.letters_[i].gen;
      if (a.letters_[i].sign != b.letters_[i].sign)
        return a.letters_[i].sign < b.letters_[i].sign;
    }
    return false;
  }

 private:
  std::vector<Letter> letters_;
};

inline FreeWord free_reduce(const std::vector<Letter>& raw, int alphabet_size) {
  return FreeWord::reduce(raw, alphabet_size);
}

// ---------------------------------------------------------------------------
// Exact integer / rational matrices (small, dense)
// ---------------------------------------------------------------------------

using LatticeVector = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntMatrix operator*(const IntMatrix& rhs) const;
  LatticeVector operator*(const LatticeVector& v) const;
  IntMatrix power(unsigned e) const;

  /// Determinant by fraction-free Gaussian elimination (Bareiss).
  Int determinant() const;

  void swap_cols(std::size_t a, std::size_t b);
  void negate_col(std::size_t c);
  /// col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& q);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix from_int(const IntMatrix& m);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RatMatrix operator*(const RatMatrix& rhs) const;
  std::vector<Rat> operator*(const std::vector<Rat>& v) const;
  RatMatrix inverse() const;  // throws std::domain_error if singular

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

// ---------------------------------------------------------------------------
// Hermite normal form (column style)
// ---------------------------------------------------------------------------

struct HnfResult {
  IntMatrix h;  // H = M * U, lower triangular profile, positive pivots,
                // entries left of a pivot reduced into [0, pivot)
  IntMatrix u;  // unimodular
};

/// Column-style HNF: H = M * U with U unimodular.  Deterministic.
HnfResult hermite_normal_form(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Monomorphisms of Z^d and lattice arithmetic
// ---------------------------------------------------------------------------

/// An injective linear map Z^d -> Z^d given by a nonsingular integer matrix,
/// with its HNF and exact rational inverse cached for membership and residue
/// computations.
class Monomorphism {
 public:
  explicit Monomorphism(IntMatrix matrix);

  std::size_t rank() const { return matrix_.rows(); }
  const IntMatrix& matrix() const { return matrix_; }
  const Int& det() const { return det_; }
  const HnfResult& hnf() const { return hnf_; }
  const RatMatrix& inverse() const { return inverse_; }

  LatticeVector apply(const LatticeVector& v) const { return matrix_ * v; }

  friend bool operator==(const Monomorphism& a, const Monomorphism& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  IntMatrix matrix_;
  Int det_;
  HnfResult hnf_;
  RatMatrix inverse_;
};

/// Exact preimage under L if v lies in the image lattice L(Z^d).
std::optional<LatticeVector> lattice_membership(const Monomorphism& l,
                                                const LatticeVector& v);

struct Residue {
  LatticeVector r;  // canonical coset representative, v = L x + r
  LatticeVector x;
};

/// Unique representative of v + L(Z^d) in the HNF mixed-radix fundamental
/// domain: 0 <= r_k < H_kk after forward substitution.
Residue canonical_residue(const Monomorphism& l, const LatticeVector& v);

// Small helpers shared across modules.
LatticeVector zero_vector(std::size_t d);
LatticeVector unit_vector(std::size_t d, std::size_t j);
LatticeVector add(const LatticeVector& a, const LatticeVector& b);
LatticeVector negate(const LatticeVector& a);
bool is_zero(const LatticeVector& a);

}  // namespace mgt
