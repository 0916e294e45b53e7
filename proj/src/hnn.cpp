#include "mgt/hnn.hpp"

#include <set>
#include <sstream>

namespace mgt {

ConditionReport validate_admissible_pair(const Monomorphism& lambda,
                                   const Monomorphism& mu) {
  if (lambda.rank() != mu.rank())
    throw std::invalid_argument("lambda and mu must have the same rank");
  const std::size_t d = lambda.rank();
  ConditionReport rep;
  std::ostringstream diag;

  rep.commute = lambda.matrix() * mu.matrix() == mu.matrix() * lambda.matrix();
  if (!rep.commute) diag << "condition 1: lambda and mu do not commute; ";

  // <lambda(A) U mu(A)> = A  iff the HNF of the d x 2d block [L|M] is [I|0].
  IntMatrix block(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      block(i, j) = lambda.matrix()(i, j);
      block(i, d + j) = mu.matrix()(i, j);
    }
  HnfResult hnf = hermite_normal_form(block);
  rep.joint_generation = true;
  for (std::size_t i = 0; i < d && rep.joint_generation; ++i)
    for (std::size_t j = 0; j < 2 * d; ++j)
      if (hnf.h(i, j) != (i == j ? 1 : 0)) {
        rep.joint_generation = false;
        break;
      }
  if (!rep.joint_generation)
    diag << "condition 2: lambda(A) and mu(A) generate a proper sublattice; ";

  // A group is never the union of two proper subgroups, so
  // lambda(A) U mu(A) != A  iff both images are proper: |det| > 1.
  rep.proper_union = abs(lambda.det()) > 1 && abs(mu.det()) > 1;
  if (!rep.proper_union)
    diag << "condition 3: one of the images is all of A (|det| = 1); ";

  rep.diagnostics = diag.str();
  return rep;
}

HnnGroup::HnnGroup(Monomorphism lambda, Monomorphism mu, std::string name)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), name_(std::move(name)) {
  report_ = validate_admissible_pair(lambda_, mu_);
  if (!report_.all())
    throw std::invalid_argument("invalid HNN data: " + report_.diagnostics);
  const std::size_t d = rank();
  IntMatrix block(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      block(i, j) = lambda_.matrix()(i, j);
      block(i, d + j) = mu_.matrix()(i, j);
    }
  block_u_ = hermite_normal_form(block).u;
}

void HnnGroup::normalize(BrittonForm& g) const {
  // Phase 1: eliminate pinches t^{e} c t^{-e}; each pass removes two t's.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < g.tail.size(); ++j) {
      if (g.tail[j + 1].eps != -g.tail[j].eps) continue;
      auto pre = lattice_membership(lattice_for(g.tail[j].eps), g.tail[j].vec);
      if (!pre) continue;
      LatticeVector image = absorb_left(g.tail[j].eps, *pre);
      LatticeVector merged = add(image, g.tail[j + 1].vec);
      LatticeVector& target = (j == 0) ? g.head : g.tail[j - 1].vec;
      target = add(target, merged);
      g.tail.erase(g.tail.begin() + static_cast<std::ptrdiff_t>(j),
                   g.tail.begin() + static_cast<std::ptrdiff_t>(j) + 2);
      changed = true;
      break;
    }
  }
  // Phase 2: canonical residues, right to left, overflow absorbed leftward.
  for (std::size_t j = g.tail.size(); j-- > 0;) {
    Residue res = canonical_residue(lattice_for(g.tail[j].eps), g.tail[j].vec);
    g.tail[j].vec = std::move(res.r);
    if (!is_zero(res.x)) {
      LatticeVector carry = absorb_left(g.tail[j].eps, res.x);
      LatticeVector& target = (j == 0) ? g.head : g.tail[j - 1].vec;
      target = add(target, carry);
    }
  }
}

void HnnGroup::right_multiply_vector(BrittonForm& g,
                                     const LatticeVector& v) const {
  if (g.tail.empty()) {
    g.head = add(g.head, v);
    return;
  }
  // Only the trailing block changes; cascade residues leftward.
  g.tail.back().vec = add(g.tail.back().vec, v);
  for (std::size_t j = g.tail.size(); j-- > 0;) {
    Residue res = canonical_residue(lattice_for(g.tail[j].eps), g.tail[j].vec);
    g.tail[j].vec = std::move(res.r);
    if (is_zero(res.x)) break;
    LatticeVector carry = absorb_left(g.tail[j].eps, res.x);
    if (j == 0)
      g.head = add(g.head, carry);
    else
      g.tail[j - 1].vec = add(g.tail[j - 1].vec, carry);
  }
}

void HnnGroup::right_multiply_t(BrittonForm& g, int eps) const {
  if (!g.tail.empty() && g.tail.back().eps == -eps &&
      is_zero(g.tail.back().vec)) {
    g.tail.pop_back();  // pinch t^{-eps} 0 t^{eps}
    return;
  }
  g.tail.push_back({eps, zero_vector(rank())});
}

BrittonForm HnnGroup::britton_reduce(const FreeWord& w) const {
  BrittonForm g = identity();
  const int t = t_index();
  for (const Letter& l : w.letters()) {
    if (l.gen < 0 || l.gen > t)
      throw std::invalid_argument("letter outside the HNN marking");
    if (l.gen == t) {
      right_multiply_t(g, l.sign);
    } else {
      LatticeVector v = zero_vector(rank());
      v[static_cast<std::size_t>(l.gen)] = l.sign;
      right_multiply_vector(g, v);
    }
  }
  return g;
}

BrittonForm HnnGroup::multiply(const BrittonForm& g, const BrittonForm& h) const {
  BrittonForm out = g;
  right_multiply_vector(out, h.head);
  for (const BrittonForm::Block& b : h.tail) {
    right_multiply_t(out, b.eps);
    right_multiply_vector(out, b.vec);
  }
  return out;
}

BrittonForm HnnGroup::invert(const BrittonForm& g) const {
  BrittonForm out = identity();
  if (g.tail.empty()) {
    out.head = negate(g.head);
    return out;
  }
  out.head = negate(g.tail.back().vec);
  for (std::size_t j = g.tail.size(); j-- > 0;) {
    right_multiply_t(out, -g.tail[j].eps);
    const LatticeVector& prev = (j == 0) ? g.head : g.tail[j - 1].vec;
    right_multiply_vector(out, negate(prev));
  }
  return out;
}

BrittonForm HnnGroup::phi(const BrittonForm& g) const {
  BrittonForm image;
  image.head = lambda_.apply(g.head);
  for (const BrittonForm::Block& b : g.tail)
    image.tail.push_back({b.eps, lambda_.apply(b.vec)});
  normalize(image);
  return image;
}

FreeWord HnnGroup::phi_preimage(const BrittonForm& g) const {
  const std::size_t d = rank();
  const int t = t_index();
  FreeWord out;
  auto append_exponent = [&](std::size_t gen, const Int& e) {
    int sign = e < 0 ? -1 : 1;
    for (Int c = abs(e); c > 0; --c)
      out.push({static_cast<int>(gen), sign});
  };
  // v = lambda(p) + mu(q) with [L|M] z = v solved via the cached unimodular
  // transform; the mu part lifts through conjugation by t.
  auto append_vector = [&](const LatticeVector& v) {
    LatticeVector padded(2 * d);
    for (std::size_t i = 0; i < d; ++i) padded[i] = v[i];
    LatticeVector z = block_u_ * padded;
    bool mu_part = false;
    for (std::size_t j = 0; j < d; ++j)
      if (z[d + j] != 0) mu_part = true;
    for (std::size_t j = 0; j < d; ++j) append_exponent(j, z[j]);
    if (mu_part) {
      out.push({t, -1});
      for (std::size_t j = 0; j < d; ++j) append_exponent(j, z[d + j]);
      out.push({t, 1});
    }
  };
  append_vector(g.head);
  for (const BrittonForm::Block& b : g.tail) {
    out.push({t, b.eps});
    append_vector(b.vec);
  }
  return out;
}

bool HnnGroup::in_kernel(const FreeWord& w, unsigned i) const {
  BrittonForm g = britton_reduce(w);
  for (unsigned k = 0; k < i; ++k) g = phi(g);
  return is_identity(g);
}

bool HnnGroup::free_subgroup_certificate(const FreeWord& u, const FreeWord& w,
                                         unsigned max_len) const {
  const BrittonForm letters[4] = {
      britton_reduce(u), invert(britton_reduce(u)),
      britton_reduce(w), invert(britton_reduce(w))};
  // Distinct reduced words of length <= max_len in the two-letter alphabet
  // {u, w} must represent distinct elements of G; any collision (in
  // particular a nonempty word equal to 1) refutes freeness at this level.
  // DFS; letter indices 2j and 2j+1 are mutually inverse and never adjacent.
  struct Frame {
    BrittonForm value;
    int last;
    unsigned len;
  };
  std::set<std::string> seen;
  std::vector<Frame> stack;
  stack.push_back({identity(), -1, 0});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(canonical_key(f.value)).second) return false;
    if (f.len == max_len) continue;
    for (int next = 0; next < 4; ++next) {
      if (f.last >= 0 && (next ^ 1) == f.last) continue;
      stack.push_back({multiply(f.value, letters[next]), next, f.len + 1});
    }
  }
  return true;
}

LatticeVector HnnGroup::outside_union_witness() const {
  const std::size_t d = rank();
  // Shells of increasing max-norm; within a shell, coordinates run through
  // 1, -1, 2, -2, ..., n, -n, 0 lexicographically, so small positive
  // witnesses come first.
  for (long long n = 1; n <= 1'000'000; ++n) {
    std::vector<long long> values;
    for (long long v = 1; v <= n; ++v) {
      values.push_back(v);
      values.push_back(-v);
    }
    values.push_back(0);
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
      LatticeVector cand(d);
      bool on_shell = false;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = values[idx[i]];
        if (cand[i] == n || cand[i] == -n) on_shell = true;
      }
      if (on_shell && !lattice_membership(lambda_, cand) &&
          !lattice_membership(mu_, cand))
        return cand;
      std::size_t i = d;
      bool rolled_over = true;
      while (i-- > 0) {
        if (++idx[i] < values.size()) {
          rolled_over = false;
          break;
        }
        for (std::size_t j = i; j < d; ++j) idx[j] = 0;
      }
      if (rolled_over) break;
    }
  }
  throw std::logic_error("no witness found; condition 3 cannot hold");
}

std::string HnnGroup::canonical_key(const BrittonForm& g) const {
  std::ostringstream out;
  out << rank() << ';';
  for (std::size_t i = 0; i < g.head.size(); ++i) {
    if (i) out << ',';
    out << g.head[i];
  }
  for (const BrittonForm::Block& b : g.tail) {
    out << ';' << (b.eps < 0 ? '-' : '+') << ':';
    for (std::size_t i = 0; i < b.vec.size(); ++i) {
      if (i) out << ',';
      out << b.vec[i];
    }
  }
  return out.str();
}

BrittonForm HnnGroup::parse_key(const std::string& key) const {
  BrittonForm g;
  std::istringstream in(key);
  std::string field;
  std::getline(in, field, ';');  // rank, already known
  auto parse_vec = [&](const std::string& s) {
    LatticeVector v;
    std::istringstream vs(s);
    std::string num;
    while (std::getline(vs, num, ',')) v.push_back(Int(num));
    if (v.size() != rank()) throw std::invalid_argument("bad key: " + key);
    return v;
  };
  if (!std::getline(in, field, ';'))
    throw std::invalid_argument("bad key: " + key);
  g.head = parse_vec(field);
  while (std::getline(in, field, ';')) {
    if (field.size() < 2 || field[1] != ':')
      throw std::invalid_argument("bad key: " + key);
    int eps = field[0] == '-' ? -1 : 1;
    g.tail.push_back({eps, parse_vec(field.substr(2))});
  }
  return g;
}

HnnGroupPtr make_baumslag_solitar(long long m, long long n) {
  IntMatrix lm(1, 1), mm(1, 1);
  lm(0, 0) = m;
  mm(0, 0) = n;
  return std::make_shared<HnnGroup>(
      Monomorphism(lm), Monomorphism(mm),
      "BS(" + std::to_string(m) + "," + std::to_string(n) + ")");
}

HnnOracle::HnnOracle(HnnGroupPtr group, unsigned marking_index)
    : group_(std::move(group)), index_(marking_index) {
  const std::size_t d = group_->rank();
  IntMatrix lam_i = group_->lambda().matrix().power(index_);
  for (std::size_t j = 0; j < d; ++j) {
    LatticeVector col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = lam_i(i, j);
    gen_keys_.push_back(group_->canonical_key(group_->from_vector(col)));
  }
  BrittonForm t = group_->identity();
  t.tail.push_back({1, zero_vector(d)});
  gen_keys_.push_back(group_->canonical_key(t));
}

std::string HnnOracle::name() const {
  if (index_ == 0) return group_->name();
  return group_->name() + "[i=" + std::to_string(index_) + "]";
}

std::string HnnOracle::generator_name(std::size_t j) const {
  const std::size_t d = group_->rank();
  std::string base;
  if (j == d)
    base = "t";
  else if (d == 1)
    base = "a";
  else
    base = "a" + std::to_string(j + 1);
  if (index_ > 0 && j < d) base = "L^" + std::to_string(index_) + "(" + base + ")";
  return base;
}

std::string HnnOracle::identity_key() const {
  return group_->canonical_key(group_->identity());
}

std::string HnnOracle::generator_key(std::size_t j) const {
  return gen_keys_.at(j);
}

std::string HnnOracle::multiply_keys(const std::string& a,
                                     const std::string& b) const {
  return group_->canonical_key(
      group_->multiply(group_->parse_key(a), group_->parse_key(b)));
}

std::string HnnOracle::invert_key(const std::string& a) const {
  return group_->canonical_key(group_->invert(group_->parse_key(a)));
}

}  // namespace mgt
