// Command-line front end: simulate / screen / bench / oracle-kg / c1-check.
// Exit codes: 0 success, 2 usage error, 1 runtime error.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kfuse/baselines.hpp"
#include "kfuse/bench.hpp"
#include "kfuse/csv.hpp"
#include "kfuse/kfilter.hpp"
#include "kfuse/simgen.hpp"
#include "kfuse/theory.hpp"

namespace {

// "1,-1,0.5" or repeat tokens like "0.8x10"; padded with zeros to p.
std::vector<double> parse_beta(const std::string& text, std::size_t p) {
  std::vector<double> beta;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    if (pos == std::string::npos) pos = text.size();
    const std::string tok = text.substr(start, pos - start);
    start = pos + 1;
    if (tok.empty()) continue;
    const std::size_t xpos = tok.find('x');
    std::string val = tok;
    std::size_t repeat = 1;
    if (xpos != std::string::npos) {
      val = tok.substr(0, xpos);
      repeat = std::stoul(tok.substr(xpos + 1));
    }
    const double v = std::stod(val);
    for (std::size_t k = 0; k < repeat; ++k) beta.push_back(v);
    if (pos == text.size()) break;
  }
  if (beta.empty()) throw CLI::ValidationError("--beta", "empty coefficient list");
  if (beta.size() > p) {
    throw CLI::ValidationError("--beta", "more coefficients than --p");
  }
  beta.resize(p, 0.0);
  return beta;
}

std::vector<int> parse_slices(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find(',', start);
    if (pos == std::string::npos) pos = text.size();
    out.push_back(std::stoi(text.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

int cmd_simulate(const std::string& model, std::size_t n, std::size_t p,
                 std::uint64_t seed, const std::string& out) {
  kfuse::ModelSpec spec{model, n, p, seed};
  const kfuse::Dataset ds = kfuse::generate(spec);
  kfuse::write_dataset_csv(ds, out, model, seed);
  std::cout << "wrote " << out << " (n=" << n << ", p=" << p << ", truth size "
            << ds.truth.size() << ")\n";
  return 0;
}

int cmd_screen(const std::string& input, const std::string& response,
               const std::string& kind_name, const std::vector<std::string>& methods,
               std::size_t dn, const std::string& slices, const std::string& out,
               int threads) {
  const auto kind = kfuse::response_kind_from_string(kind_name);
  const kfuse::Dataset ds = kfuse::read_csv(input, response, kind);
  const std::size_t n = ds.x.rows;
  const std::size_t p = ds.x.cols;
  if (dn == 0) dn = kfuse::default_dn(n, p);
  if (dn > p) throw std::invalid_argument("--dn larger than p");

  std::optional<std::vector<int>> g_list;
  if (!slices.empty()) g_list = parse_slices(slices);

  std::vector<kfuse::ScreeningResult> results;
  for (const auto& mname : methods) {
    const auto m = kfuse::parse_method(mname);
    switch (m.kind) {
      case kfuse::MethodKind::fused: {
        kfuse::FilterConfig cfg;
        cfg.grid = kfuse::build_grid(ds.resp, g_list);
        cfg.d_n = dn;
        cfg.threads = threads;
        results.push_back(kfuse::screen(ds.x, ds.resp, cfg));
        break;
      }
      case kfuse::MethodKind::kolmogorov: {
        kfuse::FilterConfig cfg;
        cfg.d_n = dn;
        cfg.threads = threads;
        cfg.method_label = m.label();
        switch (ds.resp.kind) {
          case kfuse::ResponseKind::continuous:
            cfg.grid.assignments.push_back(kfuse::assign_continuous(ds.resp.values, m.G));
            break;
          case kfuse::ResponseKind::count:
            cfg.grid.assignments.push_back(kfuse::assign_count(ds.resp.values, m.G));
            break;
          case kfuse::ResponseKind::categorical:
            cfg.grid.assignments.push_back(
                kfuse::assign_categorical(ds.resp.values, ds.resp.levels));
            break;
        }
        cfg.grid.G_list.push_back(cfg.grid.assignments.back().G);
        results.push_back(kfuse::screen(ds.x, ds.resp, cfg));
        break;
      }
      case kfuse::MethodKind::sis:
        if (ds.resp.kind != kfuse::ResponseKind::continuous) {
          throw std::invalid_argument("sis requires continuous response");
        }
        results.push_back(kfuse::sis_screen(ds.x, ds.resp.values, dn, threads));
        break;
      case kfuse::MethodKind::rcs:
        if (ds.resp.kind != kfuse::ResponseKind::continuous) {
          throw std::invalid_argument("rcs requires continuous response");
        }
        results.push_back(kfuse::rcs_screen(ds.x, ds.resp.values, dn, threads));
        break;
      case kfuse::MethodKind::dcs:
        results.push_back(kfuse::dcs_screen(ds.x, ds.resp, dn, threads));
        break;
    }
  }
  kfuse::write_screen_csv(results, out);
  for (const auto& res : results) {
    std::cout << res.method_label << " selected (d_n=" << res.selected.size() << "):";
    for (std::size_t j : res.selected) std::cout << ' ' << j;
    std::cout << "\n";
  }
  return 0;
}

int cmd_bench(const std::string& model, std::size_t n, std::size_t p,
              std::size_t reps, const std::string& methods, std::uint64_t seed,
              const std::string& out, int threads) {
  kfuse::BenchConfig cfg;
  cfg.model = kfuse::ModelSpec{model, n, p, 0};
  cfg.replicates = reps;
  cfg.master_seed = seed;
  cfg.threads = threads;
  std::size_t start = 0;
  while (start < methods.size()) {
    std::size_t pos = methods.find(',', start);
    if (pos == std::string::npos) pos = methods.size();
    cfg.methods.push_back(kfuse::parse_method(methods.substr(start, pos - start)));
    start = pos + 1;
  }
  const kfuse::BenchReport report = kfuse::run_bench(cfg);
  std::cout << kfuse::format_table(report);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << kfuse::report_json(report);
  }
  std::fprintf(stderr, "# wall time %.1fs\n", report.runtime_seconds);
  return 0;
}

int cmd_oracle_kg(double rho, int G, double tol) {
  std::cout << kfuse::format_double(kfuse::oracle_kg_normal(rho, G, tol)) << "\n";
  return 0;
}

int cmd_c1_check(const std::string& cov, double rho, const std::string& beta_text,
                 std::size_t p) {
  kfuse::CovarianceSpec sigma;
  sigma.p = p;
  sigma.rho = rho;
  if (cov == "identity") {
    sigma.kind = kfuse::CovarianceSpec::Kind::identity;
  } else if (cov == "cs") {
    sigma.kind = kfuse::CovarianceSpec::Kind::compound_symmetry;
  } else if (cov == "ar") {
    sigma.kind = kfuse::CovarianceSpec::Kind::ar1;
  } else {
    throw std::invalid_argument("unknown covariance kind: " + cov);
  }
  const auto beta = parse_beta(beta_text, p);
  const auto res = kfuse::condition_c1_set(sigma, beta);
  std::cout << "S = {";
  for (std::size_t k = 0; k < res.set.size(); ++k) {
    std::cout << (k ? "," : "") << res.set[k];
  }
  std::cout << "}\n|S| = " << res.set.size()
            << "\nmargin = " << kfuse::format_double(res.margin) << "\n";
  if (res.ar_bound) std::cout << "ar_bound = " << *res.ar_bound << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fused Kolmogorov filter screening toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // allow the global --threads after a subcommand name

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")
      ->envname("KFUSE_THREADS");

  auto* sim = app.add_subcommand("simulate", "generate a simulation-model dataset");
  std::string sim_model = "1a", sim_out = "data.csv";
  std::size_t sim_n = 200, sim_p = 5000;
  std::uint64_t sim_seed = 42;
  sim->add_option("--model", sim_model, "model id (1a,1b,1c,2a,2b,2c,3,4,5,6,7)")
      ->required();
  sim->add_option("--n", sim_n, "observations")->required();
  sim->add_option("--p", sim_p, "variables")->required();
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out", sim_out, "output CSV path")->required();

  auto* scr = app.add_subcommand("screen", "rank variables of a CSV dataset");
  std::string scr_input, scr_resp = "y", scr_kind = "continuous", scr_slices, scr_out;
  std::vector<std::string> scr_methods;
  std::size_t scr_dn = 0;
  scr->add_option("--input", scr_input, "input CSV")->required();
  scr->add_option("--response", scr_resp, "response column name or 1-based index");
  scr->add_option("--kind", scr_kind, "continuous|count|categorical");
  scr->add_option("--method", scr_methods,
                  "fused|kolmogorov:G|sis|rcs|dcs (repeatable)");
  scr->add_option("--dn", scr_dn, "variables to keep (default ceil(n/ln n))");
  scr->add_option("--slices", scr_slices, "explicit slice counts, e.g. 3,4,5,6");
  scr->add_option("--out", scr_out, "output ranking CSV")->required();

  auto* ben = app.add_subcommand("bench", "replicate benchmark (minimum model size)");
  std::string ben_model, ben_methods = "fused", ben_out;
  std::size_t ben_n = 200, ben_p = 5000, ben_reps = 100;
  std::uint64_t ben_seed = 42;
  ben->add_option("--model", ben_model, "model id")->required();
  ben->add_option("--n", ben_n, "observations");
  ben->add_option("--p", ben_p, "variables");
  ben->add_option("--reps", ben_reps, "replicates");
  ben->add_option("--methods", ben_methods, "comma list of methods");
  ben->add_option("--seed", ben_seed, "master seed");
  ben->add_option("--out", ben_out, "JSON report path");

  auto* okg = app.add_subcommand("oracle-kg", "population K^G under a Gaussian copula");
  double okg_rho = 0.0, okg_tol = 1e-8;
  int okg_g = 3;
  okg->add_option("--rho", okg_rho, "copula correlation")->required();
  okg->add_option("--G", okg_g, "slice count")->required();
  okg->add_option("--tol", okg_tol, "quadrature tolerance");

  auto* c1c = app.add_subcommand("c1-check", "condition (C1) separation diagnostic");
  std::string c1_cov = "identity", c1_beta;
  double c1_rho = 0.0;
  std::size_t c1_p = 0;
  c1c->add_option("--cov", c1_cov, "identity|cs|ar")->required();
  c1c->add_option("--rho", c1_rho, "covariance parameter");
  c1c->add_option("--beta", c1_beta, "coefficients, e.g. 1,-1 or 0.8x10")->required();
  c1c->add_option("--p", c1_p, "dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_model, sim_n, sim_p, sim_seed, sim_out);
    if (scr->parsed()) {
      if (scr_methods.empty()) scr_methods.push_back("fused");
      return cmd_screen(scr_input, scr_resp, scr_kind, scr_methods, scr_dn,
                        scr_slices, scr_out, threads);
    }
    if (ben->parsed()) {
      return cmd_bench(ben_model, ben_n, ben_p, ben_reps, ben_methods, ben_seed,
                       ben_out, threads);
    }
    if (okg->parsed()) return cmd_oracle_kg(okg_rho, okg_g, okg_tol);
    if (c1c->parsed()) return cmd_c1_check(c1_cov, c1_rho, c1_beta, c1_p);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
