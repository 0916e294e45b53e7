#include "mgt/oracle.hpp"

#include <sstream>

namespace mgt {

std::string FreeGroupOracle::word_to_key(const FreeWord& w) {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.letters().size(); ++i) {
    if (i) out << ' ';
    out << (w.letters()[i].sign * (w.letters()[i].gen + 1));
  }
  return out.str();
}

FreeWord FreeGroupOracle::key_to_word(const std::string& key) {
  FreeWord w;
  std::istringstream in(key);
  long long v;
  while (in >> v)
    w.push({static_cast<int>((v < 0 ? -v : v) - 1), v < 0 ? -1 : 1});
  return w;
}

std::string FreeGroupOracle::generator_key(std::size_t j) const {
  return word_to_key(FreeWord::generator(static_cast<int>(j), 1));
}

std::string FreeGroupOracle::multiply_keys(const std::string& a,
                                           const std::string& b) const {
  return word_to_key(key_to_word(a) * key_to_word(b));
}

std::string FreeGroupOracle::invert_key(const std::string& a) const {
  return word_to_key(key_to_word(a).inverse());
}

}  // namespace mgt
