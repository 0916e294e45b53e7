#include "mgt/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mgt {

using nlohmann::json;

bool operator==(const GroupSpecConfig& a, const GroupSpecConfig& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case GroupSpecConfig::Kind::Free:
      return a.rank == b.rank;
    case GroupSpecConfig::Kind::Bs:
      return a.m == b.m && a.n == b.n;
    case GroupSpecConfig::Kind::AbelianHnn:
      return a.lambda == b.lambda && a.mu == b.mu;
    case GroupSpecConfig::Kind::LimitOf:
      if (!a.inner || !b.inner) return a.inner == b.inner;
      return *a.inner == *b.inner;
  }
  return false;
}

static std::vector<std::vector<long long>> parse_matrix_literal(
    const std::string& text) {
  // [[2,0],[0,2]]
  std::vector<std::vector<long long>> rows;
  std::size_t i = 0;
  auto expect = [&](char c) {
    if (i >= text.size() || text[i] != c)
      throw ConfigError("matrix literal: expected '" + std::string(1, c) +
                        "' at position " + std::to_string(i) + " in " + text);
    ++i;
  };
  expect('[');
  while (i < text.size() && text[i] != ']') {
    expect('[');
    std::vector<long long> row;
    while (i < text.size() && text[i] != ']') {
      std::size_t used = 0;
      row.push_back(std::stoll(text.substr(i), &used));
      i += used;
      if (i < text.size() && text[i] == ',') ++i;
    }
    expect(']');
    rows.push_back(std::move(row));
    if (i < text.size() && text[i] == ',') ++i;
  }
  expect(']');
  return rows;
}

GroupSpecConfig GroupSpecConfig::parse_shorthand(const std::string& text) {
  GroupSpecConfig cfg;
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "free") {
      cfg.kind = Kind::Free;
      cfg.rank = static_cast<unsigned>(std::stoul(rest));
      if (cfg.rank == 0) throw ConfigError("free rank must be >= 1");
    } else if (kind == "bs") {
      cfg.kind = Kind::Bs;
      auto comma = rest.find(',');
      if (comma == std::string::npos)
        throw ConfigError("bs shorthand needs two integers: bs:m,n");
      cfg.m = std::stoll(rest.substr(0, comma));
      cfg.n = std::stoll(rest.substr(comma + 1));
    } else if (kind == "abelian_hnn") {
      cfg.kind = Kind::AbelianHnn;
      auto sep = rest.find("],[[");
      if (sep == std::string::npos)
        throw ConfigError("abelian_hnn shorthand: lambda,mu matrix literals");
      cfg.lambda = parse_matrix_literal(rest.substr(0, sep + 1));
      cfg.mu = parse_matrix_literal(rest.substr(sep + 2));
    } else if (kind == "limit_of") {
      cfg.kind = Kind::LimitOf;
      cfg.inner = std::make_shared<GroupSpecConfig>(parse_shorthand(rest));
      if (cfg.inner->kind != Kind::Bs && cfg.inner->kind != Kind::AbelianHnn)
        throw ConfigError("limit_of requires a bs or abelian_hnn inner group");
    } else {
      throw ConfigError("unknown group kind: " + kind);
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed group shorthand: " + text);
  } catch (const std::out_of_range&) {
    throw ConfigError("malformed group shorthand: " + text);
  }
  return cfg;
}

static GroupSpecConfig from_json_value(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("config: expected an object with a 'kind' field");
  GroupSpecConfig cfg;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "free") {
    cfg.kind = GroupSpecConfig::Kind::Free;
    cfg.rank = j.at("rank").get<unsigned>();
  } else if (kind == "bs") {
    cfg.kind = GroupSpecConfig::Kind::Bs;
    cfg.m = j.at("m").get<long long>();
    cfg.n = j.at("n").get<long long>();
  } else if (kind == "abelian_hnn") {
    cfg.kind = GroupSpecConfig::Kind::AbelianHnn;
    cfg.lambda = j.at("lambda").get<std::vector<std::vector<long long>>>();
    cfg.mu = j.at("mu").get<std::vector<std::vector<long long>>>();
  } else if (kind == "limit_of") {
    cfg.kind = GroupSpecConfig::Kind::LimitOf;
    cfg.inner =
        std::make_shared<GroupSpecConfig>(from_json_value(j.at("group")));
  } else {
    throw ConfigError("config: unknown kind '" + kind + "'");
  }
  return cfg;
}

GroupSpecConfig GroupSpecConfig::parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  try {
    return from_json_value(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
}

GroupSpecConfig GroupSpecConfig::load(const std::string& shorthand,
                                      const std::string& config_path) {
  if (!shorthand.empty() && !config_path.empty())
    throw ConfigError("give either --group or --config, not both");
  if (!shorthand.empty()) return parse_shorthand(shorthand);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
  }
  throw ConfigError("a group definition is required (--group or --config)");
}

std::string GroupSpecConfig::to_json() const {
  json j;
  switch (kind) {
    case Kind::Free:
      j = {{"kind", "free"}, {"rank", rank}};
      break;
    case Kind::Bs:
      j = {{"kind", "bs"}, {"m", m}, {"n", n}};
      break;
    case Kind::AbelianHnn:
      j = {{"kind", "abelian_hnn"}, {"lambda", lambda}, {"mu", mu}};
      break;
    case Kind::LimitOf:
      j = {{"kind", "limit_of"}, {"group", json::parse(inner->to_json())}};
      break;
  }
  return j.dump(2);
}

static Monomorphism mono_from_rows(
    const std::vector<std::vector<long long>>& rows, const char* which) {
  if (rows.empty()) throw ConfigError(std::string(which) + ": empty matrix");
  std::vector<std::vector<Int>> conv;
  for (const auto& r : rows) {
    if (r.size() != rows.size())
      throw ConfigError(std::string(which) + ": matrix must be square");
    conv.emplace_back(r.begin(), r.end());
  }
  return Monomorphism(IntMatrix::from_rows(conv));
}

static HnnGroupPtr hnn_from_config(const GroupSpecConfig& cfg) {
  if (cfg.kind == GroupSpecConfig::Kind::Bs) {
    IntMatrix lm(1, 1), mm(1, 1);
    lm(0, 0) = cfg.m;
    mm(0, 0) = cfg.n;
    return std::make_shared<HnnGroup>(
        Monomorphism(lm), Monomorphism(mm),
        "BS(" + std::to_string(cfg.m) + "," + std::to_string(cfg.n) + ")");
  }
  return std::make_shared<HnnGroup>(mono_from_rows(cfg.lambda, "lambda"),
                                    mono_from_rows(cfg.mu, "mu"), "G");
}

ConditionReport report_for(const GroupSpecConfig& cfg) {
  switch (cfg.kind) {
    case GroupSpecConfig::Kind::Bs: {
      IntMatrix lm(1, 1), mm(1, 1);
      lm(0, 0) = cfg.m;
      mm(0, 0) = cfg.n;
      return validate_admissible_pair(Monomorphism(lm), Monomorphism(mm));
    }
    case GroupSpecConfig::Kind::AbelianHnn:
      return validate_admissible_pair(mono_from_rows(cfg.lambda, "lambda"),
                                mono_from_rows(cfg.mu, "mu"));
    case GroupSpecConfig::Kind::LimitOf:
      return report_for(*cfg.inner);
    case GroupSpecConfig::Kind::Free:
      throw ConfigError("free groups have no HNN condition report");
  }
  throw ConfigError("unreachable");
}

BuiltGroup build_group(const GroupSpecConfig& cfg) {
  BuiltGroup out;
  out.config = cfg;
  switch (cfg.kind) {
    case GroupSpecConfig::Kind::Free:
      out.oracle = std::make_shared<FreeGroupOracle>(cfg.rank);
      break;
    case GroupSpecConfig::Kind::Bs:
    case GroupSpecConfig::Kind::AbelianHnn:
      out.hnn = hnn_from_config(cfg);
      out.oracle = std::make_shared<HnnOracle>(out.hnn);
      break;
    case GroupSpecConfig::Kind::LimitOf: {
      out.hnn = hnn_from_config(*cfg.inner);
      out.limit = std::make_shared<LimitOracle>(out.hnn);
      out.oracle = out.limit;
      break;
    }
  }
  return out;
}

FreeWord parse_word(const MarkedGroupOracle& oracle, const std::string& text) {
  std::vector<std::string> names = oracle.generator_names();
  std::string norm = text;
  for (char& c : norm)
    if (c == '*' || c == '.') c = ' ';
  FreeWord out;
  std::istringstream in(norm);
  std::string tok;
  while (in >> tok) {
    long long exp = 1;
    auto caret = tok.find('^');
    std::string base = tok;
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw ConfigError("bad exponent in word token: " + tok);
      }
    }
    std::size_t gen = names.size();
    for (std::size_t j = 0; j < names.size(); ++j)
      if (names[j] == base) gen = j;
    if (gen == names.size())
      throw ConfigError("unknown generator '" + base + "' in word: " + text);
    int sign = exp < 0 ? -1 : 1;
    for (long long c = exp < 0 ? -exp : exp; c > 0; --c)
      out.push({static_cast<int>(gen), sign});
  }
  return out;
}

}  // namespace mgt
