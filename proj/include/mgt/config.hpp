#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mgt/hnn.hpp"
#include "mgt/limit.hpp"
#include "mgt/oracle.hpp"

namespace mgt {

/// Malformed group definition (CLI exit code 4).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Declarative group definition ingested from the CLI: a free group, an
/// abelian-by-t HNN extension, the BS(m,n) shorthand, or the limit of an HNN
/// kind.
struct GroupSpecConfig {
  enum class Kind { Free, AbelianHnn, Bs, LimitOf };

  Kind kind = Kind::Free;
  unsigned rank = 0;                               // free
  long long m = 0, n = 0;                          // bs
  std::vector<std::vector<long long>> lambda, mu;  // abelian_hnn
  std::shared_ptr<GroupSpecConfig> inner;          // limit_of

  /// One-line shorthand: "free:2", "bs:2,3", "limit_of:bs:2,3",
  /// "abelian_hnn:[[2,0],[0,2]],[[3,0],[0,3]]".
  static GroupSpecConfig parse_shorthand(const std::string& text);
  /// JSON config document (same fields, nested for limit_of).
  static GroupSpecConfig parse_json(const std::string& text);
  static GroupSpecConfig load(const std::string& shorthand_or_empty,
                              const std::string& config_path_or_empty);

  /// Canonical JSON emission; re-parses to an equal spec.
  std::string to_json() const;

  friend bool operator==(const GroupSpecConfig& a, const GroupSpecConfig& b);
};

struct BuiltGroup {
  GroupSpecConfig config;
  OraclePtr oracle;
  HnnGroupPtr hnn;                     // set for AbelianHnn/Bs/LimitOf kinds
  std::shared_ptr<const LimitOracle> limit;  // set for LimitOf
};

/// Instantiates the oracle; HNN kinds are validated first and a failing
/// condition report raises std::invalid_argument.
BuiltGroup build_group(const GroupSpecConfig& config);

/// Condition report for HNN kinds without constructing the group.
ConditionReport report_for(const GroupSpecConfig& config);

/// Parses a word like "a^-1 t a" (also '*' or '.' separators, exponents
/// "a^3") over the oracle's generator names.
FreeWord parse_word(const MarkedGroupOracle& oracle, const std::string& text);

}  // namespace mgt
