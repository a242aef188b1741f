#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using twojet::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("twojet_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "twojet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> data_rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("evolve: default scenario passes and writes headed CSVs") {
  TempDir dir;
  const auto out = (dir.path / "ev").string();
  CHECK(invoke({"evolve", "--out", out, "--N", "24", "--times", "0,0.5,2"}) == 0);
  const std::string csv = slurp(fs::path(out) / "evolve_summary.csv");
  CHECK(csv.rfind("# twojet 0.1.0 evolve\n", 0) == 0);
  CHECK(csv.find("# config_hash fnv1a64:") != std::string::npos);
  CHECK(csv.find("# seed 42\n") != std::string::npos);
  CHECK(data_rows(fs::path(out) / "evolve_summary.csv").size() == 4);
  CHECK(fs::exists(fs::path(out) / "evolve_report.json"));
}

TEST_CASE("evolve: pure diffusion keeps the tail ratio at or below one") {
  TempDir dir;
  CHECK(invoke({"evolve", "--out", dir.path.string(), "--a", "0", "--N", "20", "--times", "0,1,3"}) == 0);
  const auto rows = data_rows(dir.path / "evolve_summary.csv");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cols;
    std::stringstream ss(rows[i]);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    CHECK(std::stod(cols.at(4)) <= 1.0);
  }
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  TempDir dir;
  const auto a = (dir.path / "a").string(), b = (dir.path / "b").string();
  const std::vector<std::string> args{"--N", "16", "--times", "0,1", "--seed", "7"};
  auto with = [&](const std::string& out) {
    std::vector<std::string> v{"evolve", "--out", out, "--threads", out == a ? "1" : "2"};
    v.insert(v.end(), args.begin(), args.end());
    return v;
  };
  REQUIRE(invoke(with(a)) == 0);
  REQUIRE(invoke(with(b)) == 0);
  for (const char* f : {"evolve_summary.csv", "evolve_trajectory.csv", "evolve_report.json"})
    CHECK(slurp(fs::path(a) / f) == slurp(fs::path(b) / f));

  // A different seed changes the body and the header.
  const auto c = (dir.path / "c").string();
  REQUIRE(invoke({"evolve", "--out", c, "--N", "16", "--times", "0,1", "--seed", "8"}) == 0);
  CHECK(slurp(fs::path(a) / "evolve_trajectory.csv") != slurp(fs::path(c) / "evolve_trajectory.csv"));
}

TEST_CASE("config files: values apply, flags override, errors exit 2") {
  TempDir dir;
  const auto cfg = dir.path / "cfg.json";
  write_file(cfg, R"({"N": 16, "times": [0, 1], "seed": 3})");
  const auto out = (dir.path / "o").string();
  CHECK(invoke({"evolve", "--config", cfg.string(), "--out", out, "--seed", "5"}) == 0);
  CHECK(slurp(fs::path(out) / "evolve_summary.csv").find("# seed 5\n") != std::string::npos);
  CHECK(data_rows(fs::path(out) / "evolve_summary.csv").size() == 3);

  write_file(cfg, "{\"N\": 16,");
  CHECK(invoke({"evolve", "--config", cfg.string(), "--out", out}) == 2);
  write_file(cfg, R"({"bogus": 1})");
  CHECK(invoke({"evolve", "--config", cfg.string(), "--out", out}) == 2);
  write_file(cfg, R"({"N": "sixteen"})");
  CHECK(invoke({"evolve", "--config", cfg.string(), "--out", out}) == 2);
  CHECK(invoke({"evolve", "--config", (dir.path / "missing.json").string(), "--out", out}) == 2);
}

TEST_CASE("usage errors exit 2") {
  TempDir dir;
  const auto out = dir.path.string();
  CHECK(invoke({}) == 2);
  CHECK(invoke({"nonsense"}) == 2);
  CHECK(invoke({"evolve", "--N", "abc", "--out", out}) == 2);
  CHECK(invoke({"evolve", "--nu", "0", "--out", out}) == 2);
  CHECK(invoke({"psbound", "--m_max", "1", "--out", out}) == 2);
  CHECK(invoke({"certify", "--m", "0", "--mu", "0.5", "--out", out}) == 2);
  CHECK(invoke({"certify", "--m", "1", "--mu", "0", "--out", out}) == 2);
  CHECK(invoke({"eigs", "--op", "nope", "--out", out}) == 2);
}

TEST_CASE("certify reproduces the m = 1, mu = 0.5 certificate") {
  TempDir dir;
  CHECK(invoke({"certify", "--m", "1", "--mu", "0.5,1.2,0.1+0.1i", "--out", dir.path.string()}) == 0);
  const auto rows = data_rows(dir.path / "certify.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "m,re_mu,im_mu,regime,C_mmu,N_cert,lambda_Ncert");
  CHECK(rows[1].find(",112,12656") != std::string::npos);
  CHECK(rows[2].find("|mu|>=1") != std::string::npos);
  CHECK(rows[3].find("nonreal") != std::string::npos);
}

TEST_CASE("psbound at alpha = 0") {
  TempDir dir;
  CHECK(invoke({"psbound", "--alpha", "0", "--N", "24", "--m_max", "2", "--points", "101", "--out",
                dir.path.string()}) == 0);
  const auto rows = data_rows(dir.path / "psbound.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rfind("0,0.1", 0) == 0);
  CHECK(rows[1].back() == '1');
}

TEST_CASE("eigs and oracles run end to end") {
  TempDir dir;
  CHECK(invoke({"eigs", "--m", "1", "--N", "12", "--op", "lambda_y", "--out", dir.path.string()}) == 0);
  CHECK(data_rows(dir.path / "eigs.csv").size() == 11);
  CHECK(invoke({"oracles", "--trials", "20", "--out", dir.path.string()}) == 0);
  CHECK(fs::exists(dir.path / "oracles.csv"));
  CHECK_FALSE(fs::exists(dir.path / "fixtures"));
}

TEST_CASE("edscan exits 0 on a decreasing sup-norm column") {
  TempDir dir;
  CHECK(invoke({"edscan", "--alphas", "10,100", "--N", "24", "--m_max", "2", "--points", "101", "--out",
                dir.path.string()}) == 0);
  CHECK(data_rows(dir.path / "edscan.csv").size() == 3);
}
