#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace twojet::cli {

struct RunHeader {
  std::string command;
  std::uint64_t config_hash = 0;
  long long seed = 0;
};

/// CSV with the run header as leading '#' lines; numbers at 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const RunHeader& header, const std::vector<std::string>& columns);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(const std::string& v);
  void end_row();

 private:
  std::ofstream out_;
  bool first_ = true;
};

std::string format_double(double v);

/// Writes {"header": {...}, "body": body} as pretty JSON.
void write_json(const std::filesystem::path& path, const RunHeader& header, const nlohmann::json& body);

}  // namespace twojet::cli
