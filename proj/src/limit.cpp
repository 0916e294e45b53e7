#include "mgt/limit.hpp"

#include <sstream>

namespace mgt {

LimitOracle::LimitOracle(HnnGroupPtr group) : group_(std::move(group)) {
  RatMatrix lam = RatMatrix::from_int(group_->lambda().matrix());
  RatMatrix mu = RatMatrix::from_int(group_->mu().matrix());
  t_ = lam * mu.inverse();
  t_inv_ = mu * lam.inverse();
}

RatMatrix LimitOracle::power_t(long long k) const {
  const RatMatrix& base = k >= 0 ? t_ : t_inv_;
  long long n = k >= 0 ? k : -k;
  RatMatrix acc = RatMatrix::identity(rank());
  for (long long i = 0; i < n; ++i) acc = acc * base;
  return acc;
}

bool LimitOracle::is_identity_element(const ModelElement& g) const {
  if (g.shift != 0) return false;
  for (const Rat& c : g.translation)
    if (c != 0) return false;
  return true;
}

ModelElement LimitOracle::compose(const ModelElement& a,
                                  const ModelElement& b) const {
  std::vector<Rat> shifted = power_t(a.shift) * b.translation;
  ModelElement out;
  out.translation.resize(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    out.translation[i] = a.translation[i] + shifted[i];
  out.shift = a.shift + b.shift;
  return out;
}

ModelElement LimitOracle::inverse(const ModelElement& a) const {
  std::vector<Rat> back = power_t(-a.shift) * a.translation;
  ModelElement out;
  out.translation.resize(rank());
  for (std::size_t i = 0; i < rank(); ++i) out.translation[i] = -back[i];
  out.shift = -a.shift;
  return out;
}

ModelElement LimitOracle::model_map(const FreeWord& w) const {
  ModelElement acc = identity();
  for (const Letter& l : w.letters()) {
    ModelElement g = identity();
    if (l.gen == static_cast<int>(rank()))
      g.shift = 1;
    else
      g.translation.at(static_cast<std::size_t>(l.gen)) = 1;
    if (l.sign < 0) g = inverse(g);
    acc = compose(acc, g);
  }
  return acc;
}

std::string LimitOracle::key_of(const ModelElement& g) const {
  std::ostringstream out;
  out << g.shift;
  for (const Rat& c : g.translation) out << ';' << c;
  return out.str();
}

ModelElement LimitOracle::parse_element(const std::string& key) const {
  ModelElement g;
  std::istringstream in(key);
  std::string field;
  if (!std::getline(in, field, ';'))
    throw std::invalid_argument("bad model key: " + key);
  g.shift = std::stoll(field);
  while (std::getline(in, field, ';')) g.translation.push_back(Rat(field));
  if (g.translation.size() != rank())
    throw std::invalid_argument("bad model key: " + key);
  return g;
}

std::string LimitOracle::generator_name(std::size_t j) const {
  if (j == rank()) return "t";
  return rank() == 1 ? "a" : "a" + std::to_string(j + 1);
}

std::string LimitOracle::generator_key(std::size_t j) const {
  ModelElement g = identity();
  if (j == rank())
    g.shift = 1;
  else
    g.translation.at(j) = 1;
  return key_of(g);
}

std::string LimitOracle::multiply_keys(const std::string& a,
                                       const std::string& b) const {
  return key_of(compose(parse_element(a), parse_element(b)));
}

std::string LimitOracle::invert_key(const std::string& a) const {
  return key_of(inverse(parse_element(a)));
}

LimitVerdict limit_is_identity(const HnnGroup& g, const LimitOracle& model,
                               const FreeWord& w, unsigned i_max) {
  if (i_max < 1) throw std::invalid_argument("i_max must be >= 1");
  LimitVerdict verdict;
  verdict.i_max = i_max;
  BrittonForm cur = g.britton_reduce(w);
  for (unsigned i = 0; i <= i_max; ++i) {
    if (g.is_identity(cur)) {
      verdict.least_i = i;
      break;
    }
    if (i < i_max) cur = g.phi(cur);
  }
  verdict.model_trivial = model.is_identity_element(model.model_map(w));
  return verdict;
}

}  // namespace mgt
