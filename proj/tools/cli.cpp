#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "output.hpp"
#include "twojet/certificates.hpp"
#include "twojet/error.hpp"
#include "twojet/evolution.hpp"
#include "twojet/harmonics.hpp"
#include "twojet/operators.hpp"
#include "twojet/parallel.hpp"
#include "twojet/spectra.hpp"

namespace twojet::cli {
namespace fs = std::filesystem;

namespace {

struct Common {
  int seed = 42;
  int threads = 0;
  std::string out = "out";
};

class Command {
 public:
  virtual ~Command() = default;
  virtual const char* name() const = 0;
  virtual const char* description() const = 0;
  virtual void declare(ParamTable& t) = 0;
  virtual int execute(const RunHeader& header, const fs::path& out) = 0;

  Common common;
};

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ConfigError("empty complex number");
  auto to_double = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse complex number '" + text + "'");
    }
    if (used != part.size()) throw ConfigError("cannot parse complex number '" + text + "'");
    return v;
  };
  if (s.back() != 'i') return {to_double(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) {
    if (s.empty() || s == "+" || s == "-") return {0.0, s == "-" ? -1.0 : 1.0};
    return {0.0, to_double(s)};
  }
  const std::string re = s.substr(0, split), im = s.substr(split);
  const double imv = (im == "+" || im == "-") ? (im == "-" ? -1.0 : 1.0) : to_double(im);
  return {to_double(re), imv};
}

ModeSet random_field(int m_max, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ModeSet out;
  for (int m = -m_max; m <= m_max; ++m) {
    SpectralVector v(m, full_space_n_min(m), N);
    for (auto& c : v.coeffs) c = {normal(rng), normal(rng)};
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- evolve

class EvolveCommand : public Command {
 public:
  const char* name() const override { return "evolve"; }
  const char* description() const override {
    return "Evolve random initial vorticity under the two-jet linearization and check the decay estimates";
  }
  void declare(ParamTable& t) override {
    t.add("nu", &nu, "viscosity (> 0)");
    t.add("a", &a, "jet amplitude");
    t.add("N", &N, "truncation degree");
    t.add("m_max", &m_max, "largest |m| carried by the random initial data");
    t.add("times", &times, "sample times (comma separated)");
    t.add("trajectory", &trajectory, "write the full coefficient trajectory");
  }
  int execute(const RunHeader& header, const fs::path& out) override {
    if (N < std::max(2, m_max) + 2) throw ConfigError("N must be at least max(2, m_max) + 2");
    if (m_max < 0) throw ConfigError("m_max must be nonnegative");
    for (double t : times)
      if (!(t >= 0.0)) throw ConfigError("times must be nonnegative");
    EvolutionScenario sc;
    sc.params = {nu, a};
    sc.params.validate();
    sc.N = N;
    sc.omega0 = random_field(m_max, N, static_cast<std::uint64_t>(common.seed));
    sc.times = times;
    const StabilityReport rep = stability_diagnostics(sc);

    if (trajectory) {
      CsvWriter csv(out / "evolve_trajectory.csv", header, {"t", "m", "n", "re", "im"});
      for (std::size_t k = 0; k < rep.rows.size(); ++k)
        for (const auto& v : rep.trajectory[k])
          for (int n = v.n_min; n <= v.n_max(); ++n) {
            csv.cell(rep.rows[k].t).cell(v.m).cell(n).cell(v.at(n).real()).cell(v.at(n).imag());
            csv.end_row();
          }
    }
    CsvWriter csv(out / "evolve_summary.csv", header,
                  {"t", "deg1_norm", "tail_norm", "tail_bound", "tail_ratio", "c20_err", "c2m_scaled_m-2",
                   "c2m_scaled_m-1", "c2m_scaled_m1", "c2m_scaled_m2"});
    for (const auto& r : rep.rows) {
      csv.cell(r.t).cell(r.deg1_norm).cell(r.tail_norm).cell(r.tail_bound).cell(r.tail_ratio).cell(r.c20_err);
      for (double c : r.c2m_scaled) csv.cell(c);
      csv.end_row();
    }
    const bool deg1_ok = rep.max_deg1_norm <= 1e-12;
    const bool tail_ok = rep.max_tail_ratio <= 1.0 + 1e-9;
    const bool c20_ok = rep.max_c20_err <= 1e-11;
    const bool c2m_ok = std::isfinite(rep.sup_c2m_scaled);
    write_json(out / "evolve_report.json", header,
               {{"max_deg1_norm", rep.max_deg1_norm},
                {"max_tail_ratio", rep.max_tail_ratio},
                {"max_c20_err", rep.max_c20_err},
                {"sup_c2m_scaled", rep.sup_c2m_scaled},
                {"tail_warning", rep.tail_warning},
                {"checks", {{"deg1", deg1_ok}, {"tail", tail_ok}, {"c20", c20_ok}, {"c2m_bounded", c2m_ok}}}});
    std::cout << "evolve: max deg1 " << format_double(rep.max_deg1_norm) << ", max tail ratio "
              << format_double(rep.max_tail_ratio) << ", max c20 err " << format_double(rep.max_c20_err)
              << ", sup c2m scaled " << format_double(rep.sup_c2m_scaled) << "\n";
    if (rep.tail_warning) std::cout << "evolve: warning: initial data has > 1e-8 of its norm in the top 4 degrees\n";
    return deg1_ok && tail_ok && c20_ok && c2m_ok ? kOk : kCheckFailed;
  }

 private:
  double nu = 0.5, a = 1.0;
  int N = 48, m_max = 4;
  std::vector<double> times{0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
  bool trajectory = true;
};

// ---------------------------------------------------------------- eigs

class EigsCommand : public Command {
 public:
  const char* name() const override { return "eigs"; }
  const char* description() const override { return "Eigenvalues of a truncated operator on one mode"; }
  void declare(ParamTable& t) override {
    t.add("m", &m, "zonal mode");
    t.add("N", &N, "truncation degree");
    t.add("op", &op, "operator: lambda_y (Lambda_m on Y), lambda (Lambda_m on L0), L (nu A - i a m Lambda_m)");
    t.add("nu", &nu, "viscosity for op=L");
    t.add("a", &a, "jet amplitude for op=L");
  }
  int execute(const RunHeader& header, const fs::path& out) override {
    BandedOperator M;
    if (op == "lambda_y")
      M = lambda_m_on_Y(m, N);
    else if (op == "lambda")
      M = assemble_lambda_m(m, N);
    else if (op == "L")
      M = assemble_L(m, N, TwoJetParams{nu, a});
    else
      throw ConfigError("op must be one of lambda_y, lambda, L");
    auto ev = eigenvalues(M);
    std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    CsvWriter csv(out / "eigs.csv", header, {"m", "re", "im"});
    double max_im = 0.0, max_re = 0.0;
    nlohmann::json list = nlohmann::json::array();
    for (const cplx z : ev) {
      csv.cell(m).cell(z.real()).cell(z.imag());
      csv.end_row();
      max_im = std::max(max_im, std::abs(z.imag()));
      max_re = std::max(max_re, std::abs(z.real()));
      list.push_back({z.real(), z.imag()});
    }
    bool ok = true;
    if (op == "lambda_y") ok = max_im < 1e-9 && max_re <= 1.0 + 1e-10;
    write_json(out / "eigs.json", header,
               {{"m", m}, {"N", N}, {"op", op}, {"eigenvalues", list}, {"max_abs_imag", max_im}, {"checks_ok", ok}});
    std::cout << "eigs: " << ev.size() << " eigenvalues, max |Im| " << format_double(max_im) << "\n";
    return ok ? kOk : kCheckFailed;
  }

 private:
  int m = 1, N = 64;
  std::string op = "lambda_y";
  double nu = 1.0, a = 0.0;
};

// ---------------------------------------------------------------- psbound

class PsboundCommand : public Command {
 public:
  const char* name() const override { return "psbound"; }
  const char* description() const override {
    return "Pseudospectral bound Phi = sup_lambda ||(i lambda - Q L_alpha)^{-1}|| with an N -> 2N convergence check";
  }
  void declare(ParamTable& t) override {
    t.add("alpha", &alphas, "rescaled amplitudes a/nu (comma separated)");
    t.add("N", &N, "truncation degree (the check also uses 2N)");
    t.add("m_max", &m_max, "largest |m| (>= 2)");
    t.add("points", &grid.points, "uniform lambda-grid size");
    t.add("refine_peaks", &grid.refine_peaks, "grid maxima refined by golden-section search");
  }
  int execute(const RunHeader& header, const fs::path& out) override {
    CsvWriter prof(out / "psbound_profile.csv", header, {"alpha", "m", "lambda", "resolvent_norm"});
    CsvWriter summary(out / "psbound.csv", header, {"alpha", "Phi", "Phi_2N", "converged"});
    nlohmann::json reports = nlohmann::json::array();
    bool ok = true;
    for (double alpha : alphas) {
      const PseudospectrumReport rep = pseudospectral_bound(m_max, N, alpha, grid);
      for (int k = 0; k < m_max; ++k)
        for (std::size_t i = 0; i < rep.modes[k].lambdas.size(); ++i) {
          prof.cell(alpha).cell(k + 1).cell(rep.modes[k].lambdas[i]).cell(rep.modes[k].norms[i]);
          prof.end_row();
        }
      summary.cell(alpha).cell(rep.phi).cell(rep.phi_2N).cell(rep.converged ? 1 : 0);
      summary.end_row();
      ok = ok && rep.converged;
      reports.push_back({{"alpha", alpha},
                         {"N", rep.N},
                         {"m_max", rep.m_max},
                         {"Phi", rep.phi},
                         {"Phi_2N", rep.phi_2N},
                         {"converged", rep.converged},
                         {"argmax", {{"m", rep.argmax_m}, {"lambda", rep.argmax_lambda}}},
                         {"Phi_per_mode", rep.phi_per_mode},
                         {"Phi_per_mode_2N", rep.phi_per_mode_2N}});
      std::cout << "psbound: alpha " << format_double(alpha) << " Phi " << format_double(rep.phi) << " Phi_2N "
                << format_double(rep.phi_2N) << (rep.converged ? " converged" : " NOT converged") << "\n";
    }
    write_json(out / "psbound.json", header, reports);
    return ok ? kOk : kCheckFailed;
  }

 private:
  std::vector<double> alphas{0.0};
  int N = 128, m_max = 4;
  LambdaGrid grid;
};

// ---------------------------------------------------------------- edscan

class EdscanCommand : public Command {
 public:
  const char* name() const override { return "edscan"; }
  const char* description() const override {
    return "Enhanced-dissipation scan: sup_{t>=tau} ||Q exp(t L_alpha)|| over alpha, plus the weighted Wei bound";
  }
  void declare(ParamTable& t) override {
    t.add("alphas", &alphas, "increasing rescaled amplitudes (comma separated)");
    t.add("tau", &tau, "lower end of the time window (> 0)");
    t.add("times", &times, "sample times for the sup (comma separated)");
    t.add("wei_times", &wei_times, "sample times for the weighted Wei bound");
    t.add("N", &N, "truncation degree");
    t.add("m_max", &m_max, "largest |m|");
    t.add("points", &grid.points, "uniform lambda-grid size");
  }
  int execute(const RunHeader& header, const fs::path& out) override {
    if (m_max < 1) throw ConfigError("m_max must be >= 1");
    const auto rows = ed_scan(alphas, tau, times, m_max, N, grid);
    const auto samples = semigroup_samples(alphas, wei_times, m_max, N, grid);
    CsvWriter scan(out / "edscan.csv", header, {"alpha", "Phi", "sup_norm", "psi_prime", "wei_bound"});
    nlohmann::json jrows = nlohmann::json::array();
    bool decreasing = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      scan.cell(r.alpha).cell(r.phi).cell(r.sup_norm).cell(r.psi_prime).cell(r.wei_bound);
      scan.end_row();
      if (k > 0 && !(r.sup_norm < rows[k - 1].sup_norm)) decreasing = false;
      jrows.push_back({{"alpha", r.alpha}, {"Phi", r.phi}, {"sup_norm", r.sup_norm}, {"psi_prime", r.psi_prime},
                       {"wei_bound", r.wei_bound}});
    }
    CsvWriter semi(out / "semigroup.csv", header, {"alpha", "t", "semigroup_norm", "wei_bound", "weighted_norm"});
    nlohmann::json jsamples = nlohmann::json::array();
    bool wei_ok = true;
    for (const auto& s : samples) {
      semi.cell(s.alpha).cell(s.t).cell(s.semigroup_norm).cell(s.wei_bound).cell(s.weighted_norm);
      semi.end_row();
      wei_ok = wei_ok && s.weighted_norm <= s.wei_bound;
      jsamples.push_back({{"alpha", s.alpha}, {"t", s.t}, {"semigroup_norm", s.semigroup_norm},
                          {"wei_bound", s.wei_bound}, {"weighted_norm", s.weighted_norm}});
    }
    write_json(out / "edscan.json", header,
               {{"scan", jrows}, {"semigroup", jsamples}, {"sup_norm_decreasing", decreasing}, {"wei_ok", wei_ok}});
    std::cout << "edscan: sup-norm " << (decreasing ? "strictly decreasing" : "NOT strictly decreasing")
              << ", Wei bound " << (wei_ok ? "holds" : "VIOLATED") << "\n";
    return decreasing && wei_ok ? kOk : kCheckFailed;
  }

 private:
  std::vector<double> alphas{10.0, 100.0, 1000.0};
  double tau = 1.0;
  std::vector<double> times{1.0, 1.5, 2.0, 3.0, 5.0};
  std::vector<double> wei_times{0.5, 1.0, 2.0, 5.0};
  int N = 128, m_max = 4;
  LambdaGrid grid;
};

// ---------------------------------------------------------------- certify

class CertifyCommand : public Command {
 public:
  const char* name() const override { return "certify"; }
  const char* description() const override {
    return "Eigenvalue-exclusion certificates for candidate mu of Lambda_m (all pairs of --m and --mu)";
  }
  void declare(ParamTable& t) override {
    t.add("m", &ms, "zonal modes, nonzero (comma separated)");
    t.add("mu", &mus, "candidates, e.g. 0.5, 1.2, 0.1+0.1i (comma separated)");
  }
  int execute(const RunHeader& header, const fs::path& out) override {
    std::vector<ExclusionCertificate> certs;
    for (int m : ms)
      for (const auto& text : mus) certs.push_back(exclusion_certificate(m, parse_complex(text)));
    CsvWriter csv(out / "certify.csv", header, {"m", "re_mu", "im_mu", "regime", "C_mmu", "N_cert", "lambda_Ncert"});
    nlohmann::json list = nlohmann::json::array();
    bool ok = true;
    for (const auto& c : certs) {
      csv.cell(c.m).cell(c.mu.real()).cell(c.mu.imag()).cell(regime_name(c.regime));
      nlohmann::json j = {{"m", c.m}, {"mu", {c.mu.real(), c.mu.imag()}}, {"regime", regime_name(c.regime)},
                          {"valid", c.valid}};
      if (c.C) {
        csv.cell(*c.C).cell(*c.N_cert).cell(static_cast<long long>(eigenvalue_lambda(*c.N_cert)));
        j["C_mmu"] = *c.C;
        j["N_cert"] = *c.N_cert;
        j["lambda_Ncert"] = eigenvalue_lambda(*c.N_cert);
      } else {
        csv.cell(std::string()).cell(std::string()).cell(std::string());
      }
      csv.end_row();
      ok = ok && c.valid;
      list.push_back(j);
      std::cout << "certify: m " << c.m << " mu " << format_double(c.mu.real()) << "+" << format_double(c.mu.imag())
                << "i regime " << regime_name(c.regime);
      if (c.C) std::cout << " C " << format_double(*c.C) << " N_cert " << *c.N_cert;
      std::cout << "\n";
    }
    write_json(out / "certify.json", header, list);
    return ok ? kOk : kCheckFailed;
  }

 private:
  std::vector<int> ms{1};
  std::vector<std::string> mus{"0.5"};
};

// ---------------------------------------------------------------- oracles

SpectralVector random_vector(std::mt19937_64& rng, int m_max, int n_cap) {
  std::uniform_int_distribution<int> pick_m(1, m_max);
  std::bernoulli_distribution flip;
  std::normal_distribution<double> normal;
  int m = pick_m(rng);
  if (flip(rng)) m = -m;
  const int lo = std::abs(m);
  SpectralVector v(m, lo, std::max(lo, n_cap));
  for (auto& c : v.coeffs) c = {normal(rng), normal(rng)};
  return v;
}

nlohmann::json vector_json(const SpectralVector& v) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& z : v.coeffs) c.push_back({z.real(), z.imag()});
  return {{"m", v.m}, {"n_min", v.n_min}, {"coeffs", c}};
}

class OraclesCommand : public Command {
 public:
  const char* name() const override { return "oracles"; }
  const char* description() const override {
    return "Randomized Hardy and L-infinity inequality trials plus the reduction-identity battery";
  }
  void declare(ParamTable& t) override {
    t.add("trials", &trials, "randomized trials per inequality");
    t.add("linf_n_max", &linf_n_max, "largest degree in L-infinity trials");
    t.add("linf_m_max", &linf_m_max, "largest |m| in L-infinity trials");
    t.add("hardy_n_max", &hardy_n_max, "largest degree in Hardy trials");
    t.add("hardy_m_max", &hardy_m_max, "largest |m| in Hardy trials");
    t.add("reduction_n_max", &reduction_n_max, "largest degree in the reduction-identity battery");
  }
  int execute(const RunHeader& header, const fs::path& out) override {
    if (trials < 0 || linf_m_max < 1 || hardy_m_max < 1) throw ConfigError("invalid oracle sizes");
    struct Trial {
      SpectralVector u;
      double mu = 0.0, theta1 = 0.0, theta2 = 0.0;
      OracleResult r;
    };
    std::vector<Trial> hardy(trials), linf(trials);
    const auto base = static_cast<std::uint64_t>(common.seed);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
      std::mt19937_64 rng(base * 1000003ULL + 2 * i);
      Trial& h = hardy[i];
      h.u = random_vector(rng, hardy_m_max, hardy_n_max);
      h.mu = std::uniform_real_distribution<double>(-0.95, 0.95)(rng);
      const double tm = std::acos(h.mu);
      if (std::bernoulli_distribution(0.5)(rng)) {
        h.theta1 = 0.0;
        h.theta2 = std::numbers::pi;
      } else {
        h.theta1 = std::uniform_real_distribution<double>(0.0, tm)(rng);
        h.theta2 = std::uniform_real_distribution<double>(tm, std::numbers::pi)(rng);
      }
      h.r = hardy_oracle(h.u, h.mu, h.theta1, h.theta2);

      std::mt19937_64 rng2(base * 1000003ULL + 2 * i + 1);
      linf[i].u = random_vector(rng2, linf_m_max, linf_n_max);
      linf[i].r = linf_oracle(linf[i].u);
    });

    double red_worst = 0.0;
    for (int am = 1; am <= 3; ++am)
      for (int m : {am, -am})
        for (double mu : {0.1, 0.5, 0.9, -0.1, -0.5, -0.9})
          for (int n = am + 1; n <= reduction_n_max; ++n)
            red_worst = std::max(red_worst, reduction_identity_residual(reduction_coefficients(m, mu, n)));

    const fs::path fixtures = out / "fixtures";
    auto summarize = [&](const char* label, const std::vector<Trial>& v, bool with_mu) {
      int fails = 0;
      double worst = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].r.rhs > 0.0) worst = std::max(worst, v[i].r.lhs / v[i].r.rhs);
        if (v[i].r.ok) continue;
        ++fails;
        fs::create_directories(fixtures);
        nlohmann::json j = {{"oracle", label}, {"trial", i}, {"u", vector_json(v[i].u)},
                            {"lhs", v[i].r.lhs}, {"rhs", v[i].r.rhs}};
        if (with_mu) {
          j["mu"] = v[i].mu;
          j["theta1"] = v[i].theta1;
          j["theta2"] = v[i].theta2;
        }
        write_json(fixtures / (std::string(label) + "_" + std::to_string(i) + ".json"), header, j);
      }
      return std::make_pair(fails, worst);
    };
    const auto [hardy_fails, hardy_worst] = summarize("hardy", hardy, true);
    const auto [linf_fails, linf_worst] = summarize("linf", linf, false);
    const bool red_ok = red_worst < 1e-8;

    CsvWriter csv(out / "oracles.csv", header, {"oracle", "trials", "failures", "worst"});
    csv.cell(std::string("hardy")).cell(trials).cell(hardy_fails).cell(hardy_worst);
    csv.end_row();
    csv.cell(std::string("linf")).cell(trials).cell(linf_fails).cell(linf_worst);
    csv.end_row();
    csv.cell(std::string("reduction")).cell(0).cell(red_ok ? 0 : 1).cell(red_worst);
    csv.end_row();
    write_json(out / "oracles.json", header,
               {{"hardy", {{"trials", trials}, {"failures", hardy_fails}, {"worst_lhs_over_rhs", hardy_worst}}},
                {"linf", {{"trials", trials}, {"failures", linf_fails}, {"worst_lhs_over_rhs", linf_worst}}},
                {"reduction", {{"max_residual", red_worst}, {"ok", red_ok}}}});
    std::cout << "oracles: hardy " << hardy_fails << "/" << trials << " failures (worst lhs/rhs "
              << format_double(hardy_worst) << "), linf " << linf_fails << "/" << trials
              << " failures (worst lhs/rhs " << format_double(linf_worst) << "), reduction residual "
              << format_double(red_worst) << "\n";
    return hardy_fails == 0 && linf_fails == 0 && red_ok ? kOk : kCheckFailed;
  }

 private:
  int trials = 1000;
  int linf_n_max = 32, linf_m_max = 6;
  int hardy_n_max = 10, hardy_m_max = 3;
  int reduction_n_max = 20;
};

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"twojet: spectral toolkit for the linearized two-jet flow on the sphere"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::vector<std::unique_ptr<Command>> commands;
  commands.push_back(std::make_unique<EvolveCommand>());
  commands.push_back(std::make_unique<EigsCommand>());
  commands.push_back(std::make_unique<PsboundCommand>());
  commands.push_back(std::make_unique<EdscanCommand>());
  commands.push_back(std::make_unique<CertifyCommand>());
  commands.push_back(std::make_unique<OraclesCommand>());

  std::vector<ParamTable> tables(commands.size());
  std::vector<std::string> config_paths(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    auto& c = *commands[k];
    CLI::App* sub = app.add_subcommand(c.name(), c.description());
    c.declare(tables[k]);
    tables[k].add("seed", &c.common.seed, "random seed, recorded in every output header");
    tables[k].add("threads", &c.common.threads, "worker threads (0 = hardware concurrency)", false);
    tables[k].add("out", &c.common.out, "output directory", false);
    tables[k].bind(*sub);
    sub->add_option("--config", config_paths[k], "JSON file with any of the options above; flags override it");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  for (std::size_t k = 0; k < commands.size(); ++k) {
    if (!subs[k]->parsed()) continue;
    auto& c = *commands[k];
    try {
      if (!config_paths[k].empty()) tables[k].apply_config(load_config_file(config_paths[k]));
      set_default_threads(c.common.threads);
      const fs::path out = c.common.out;
      fs::create_directories(out);
      RunHeader header;
      header.command = c.name();
      header.seed = c.common.seed;
      header.config_hash = fnv1a64(std::string(c.name()) + tables[k].to_json(true).dump());
      return c.execute(header, out);
    } catch (const ConfigError& e) {
      std::cerr << "twojet " << c.name() << ": config error: " << e.what() << "\n";
      return kUsageError;
    } catch (const DomainError& e) {
      std::cerr << "twojet " << c.name() << ": invalid parameters: " << e.what() << "\n";
      return kUsageError;
    } catch (const std::exception& e) {
      std::cerr << "twojet " << c.name() << ": " << e.what() << "\n";
      return kCheckFailed;
    }
  }
  return kUsageError;
}

}  // namespace twojet::cli
