#include "mgt/algebra.hpp"

#include <sstream>

namespace mgt {

FreeWord FreeWord::reduce(const std::vector<Letter>& raw, int alphabet_size) {
  FreeWord w;
  for (const Letter& l : raw) {
    if (l.gen < 0 || l.gen >= alphabet_size)
      throw std::invalid_argument("generator index " + std::to_string(l.gen) +
                                  " out of range for alphabet size " +
                                  std::to_string(alphabet_size));
    if (l.sign != 1 && l.sign != -1)
      throw std::invalid_argument("letter sign must be +1 or -1");
    w.push(l);
  }
  return w;
}

std::string FreeWord::to_string(const std::vector<std::string>& names) const {
  if (letters_.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out << ' ';
    out << names.at(static_cast<std::size_t>(letters_[i].gen));
    if (letters_[i].sign < 0) out << "^-1";
  }
  return out.str();
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols())
      throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

LatticeVector IntMatrix::operator*(const LatticeVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix/vector mismatch");
  LatticeVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::power(unsigned e) const {
  if (rows_ != cols_) throw std::invalid_argument("power of non-square matrix");
  IntMatrix acc = identity(rows_);
  for (unsigned i = 0; i < e; ++i) acc = acc * (*this);
  return acc;
}

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, dst) += q * (*this)(i, src);
}

RatMatrix RatMatrix::from_int(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  RatMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::vector<Rat> RatMatrix::operator*(const std::vector<Rat>& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix/vector mismatch");
  std::vector<Rat> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = rows_;
  RatMatrix a = *this;
  RatMatrix inv = identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// floor division toward -infinity
static Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

HnfResult hermite_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  HnfResult res{m, IntMatrix::identity(cols)};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;

  std::size_t pivot_col = 0;
  for (std::size_t i = 0; i < rows && pivot_col < cols; ++i) {
    // clear row i to the right of pivot_col by column gcd steps
    bool any = false;
    for (std::size_t j = pivot_col; j < cols; ++j)
      if (h(i, j) != 0) { any = true; break; }
    if (!any) continue;
    for (;;) {
      // smallest nonzero |entry| in row i among columns >= pivot_col
      std::size_t best = cols;
      for (std::size_t j = pivot_col; j < cols; ++j) {
        if (h(i, j) == 0) continue;
        if (best == cols || abs(h(i, j)) < abs(h(i, best))) best = j;
      }
      if (best != pivot_col) {
        h.swap_cols(pivot_col, best);
        u.swap_cols(pivot_col, best);
      }
      bool done = true;
      for (std::size_t j = pivot_col + 1; j < cols; ++j) {
        if (h(i, j) == 0) continue;
        Int q = floor_div(h(i, j), h(i, pivot_col));
        h.add_col(j, pivot_col, -q);
        u.add_col(j, pivot_col, -q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, pivot_col) < 0) {
      h.negate_col(pivot_col);
      u.negate_col(pivot_col);
    }
    // reduce entries left of the pivot into [0, pivot)
    for (std::size_t j = 0; j < pivot_col; ++j) {
      Int q = floor_div(h(i, j), h(i, pivot_col));
      h.add_col(j, pivot_col, -q);
      u.add_col(j, pivot_col, -q);
    }
    ++pivot_col;
  }
  return res;
}

Monomorphism::Monomorphism(IntMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("monomorphism matrix must be square");
  det_ = matrix_.determinant();
  if (det_ == 0)
    throw std::invalid_argument(
        "monomorphism matrix must be nonsingular (injective on Z^d)");
  hnf_ = hermite_normal_form(matrix_);
  inverse_ = RatMatrix::from_int(matrix_).inverse();
}

std::optional<LatticeVector> lattice_membership(const Monomorphism& l,
                                                const LatticeVector& v) {
  const std::size_t d = l.rank();
  if (v.size() != d) throw std::invalid_argument("vector rank mismatch");
  const IntMatrix& h = l.hnf().h;
  LatticeVector y(d);
  for (std::size_t k = 0; k < d; ++k) {
    Int acc = v[k];
    for (std::size_t j = 0; j < k; ++j) acc -= h(k, j) * y[j];
    if (acc % h(k, k) != 0) return std::nullopt;
    y[k] = acc / h(k, k);
  }
  return l.hnf().u * y;
}

Residue canonical_residue(const Monomorphism& l, const LatticeVector& v) {
  const std::size_t d = l.rank();
  if (v.size() != d) throw std::invalid_argument("vector rank mismatch");
  const IntMatrix& h = l.hnf().h;
  LatticeVector y(d), r(d);
  for (std::size_t k = 0; k < d; ++k) {
    Int acc = v[k];
    for (std::size_t j = 0; j < k; ++j) acc -= h(k, j) * y[j];
    y[k] = floor_div(acc, h(k, k));
    r[k] = acc - h(k, k) * y[k];
  }
  return Residue{std::move(r), l.hnf().u * y};
}

LatticeVector zero_vector(std::size_t d) { return LatticeVector(d); }

LatticeVector unit_vector(std::size_t d, std::size_t j) {
  LatticeVector v(d);
  v.at(j) = 1;
  return v;
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

LatticeVector negate(const LatticeVector& a) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

bool is_zero(const LatticeVector& a) {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace mgt
