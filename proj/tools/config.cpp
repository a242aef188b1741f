#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <type_traits>

namespace twojet::cli {
namespace {

std::string type_error(const std::string& key, const char* expected) {
  return "config key '" + key + "' must be " + expected;
}

}  // namespace

void ParamTable::add(std::string key, FieldTarget target, std::string help, bool hashed) {
  fields_.push_back({std::move(key), target, std::move(help), hashed, nullptr});
}

void ParamTable::bind(CLI::App& app) {
  for (auto& f : fields_) {
    const std::string name = "--" + f.key;
    f.option = std::visit(
        [&](auto* p) -> CLI::Option* {
          using T = std::remove_pointer_t<decltype(p)>;
          CLI::Option* opt = app.add_option(name, *p, f.help)->capture_default_str();
          if constexpr (!std::is_same_v<T, std::string> && !std::is_arithmetic_v<T>) opt->delimiter(',');
          return opt;
        },
        f.target);
  }
}

void ParamTable::apply_config(const nlohmann::json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    auto it = std::find_if(fields_.begin(), fields_.end(), [&](const Field& f) { return f.key == key; });
    if (it == fields_.end()) throw ConfigError("unknown config key '" + key + "'");
    if (it->option && it->option->count() > 0) continue;  // command line wins
    std::visit(
        [&](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, double>) {
            if (!value.is_number()) throw ConfigError(type_error(key, "a number"));
            *p = value.get<double>();
          } else if constexpr (std::is_same_v<T, int>) {
            if (!value.is_number_integer()) throw ConfigError(type_error(key, "an integer"));
            *p = value.get<int>();
          } else if constexpr (std::is_same_v<T, bool>) {
            if (!value.is_boolean()) throw ConfigError(type_error(key, "a boolean"));
            *p = value.get<bool>();
          } else if constexpr (std::is_same_v<T, std::string>) {
            if (!value.is_string()) throw ConfigError(type_error(key, "a string"));
            *p = value.get<std::string>();
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            if (!value.is_array()) throw ConfigError(type_error(key, "an array of numbers"));
            T out;
            for (const auto& v : value) {
              if (!v.is_number()) throw ConfigError(type_error(key, "an array of numbers"));
              out.push_back(v.get<double>());
            }
            *p = std::move(out);
          } else if constexpr (std::is_same_v<T, std::vector<int>>) {
            if (!value.is_array()) throw ConfigError(type_error(key, "an array of integers"));
            T out;
            for (const auto& v : value) {
              if (!v.is_number_integer()) throw ConfigError(type_error(key, "an array of integers"));
              out.push_back(v.get<int>());
            }
            *p = std::move(out);
          } else {
            if (!value.is_array()) throw ConfigError(type_error(key, "an array of strings"));
            T out;
            for (const auto& v : value) {
              if (!v.is_string()) throw ConfigError(type_error(key, "an array of strings"));
              out.push_back(v.get<std::string>());
            }
            *p = std::move(out);
          }
        },
        it->target);
  }
}

nlohmann::json ParamTable::to_json(bool hashed_only) const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& f : fields_) {
    if (hashed_only && !f.hashed) continue;
    std::visit([&](auto* p) { out[f.key] = *p; }, f.target);
  }
  return out;
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace twojet::cli
