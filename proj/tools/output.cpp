#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cli.hpp"

namespace twojet::cli {
namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const RunHeader& header,
                     const std::vector<std::string>& columns)
    : out_(path) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  out_ << "# twojet " << kVersion << " " << header.command << "\n";
  out_ << "# config_hash fnv1a64:" << hex64(header.config_hash) << "\n";
  out_ << "# seed " << header.seed << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (!first_) out_ << ",";
  out_ << v;
  first_ = false;
  return *this;
}

void CsvWriter::end_row() {
  out_ << "\n";
  first_ = true;
}

void write_json(const std::filesystem::path& path, const RunHeader& header, const nlohmann::json& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  nlohmann::json doc = {{"header",
                         {{"tool", "twojet"},
                          {"version", kVersion},
                          {"command", header.command},
                          {"config_hash", "fnv1a64:" + hex64(header.config_hash)},
                          {"seed", header.seed}}},
                        {"body", body}};
  out << doc.dump(2) << "\n";
}

}  // namespace twojet::cli
