#pragma once

// Declarative parameter tables: every command lists its fields once, and the
// same table drives CLI flags, JSON config validation and the hash recorded
// in output headers.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace twojet::cli {

using FieldTarget = std::variant<double*, int*, bool*, std::string*, std::vector<double>*, std::vector<int>*,
                                 std::vector<std::string>*>;

struct Field {
  std::string key;
  FieldTarget target;
  std::string help;
  bool hashed = true;  // excluded from the config hash when false (threads, out)
  CLI::Option* option = nullptr;
};

class ParamTable {
 public:
  void add(std::string key, FieldTarget target, std::string help, bool hashed = true);

  /// Registers one --key flag per field on the subcommand; defaults go into the help text.
  void bind(CLI::App& app);

  /// Applies config values for every field that was not given on the command line.
  /// Throws ConfigError on unknown keys or type mismatches.
  void apply_config(const nlohmann::json& config);

  nlohmann::json to_json(bool hashed_only) const;

 private:
  std::vector<Field> fields_;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_config_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace twojet::cli
