// Command-line front end: synthetic data generation, barycenter fitting,
// multiplier bootstrap, ground-truth harness, operator diagnostics and
// CDF comparison. Every command is a pure function of its inputs and the
// mandatory seed, so reruns are byte-identical.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bwb/barycenter.hpp"
#include "bwb/bootstrap.hpp"
#include "bwb/bw_core.hpp"
#include "bwb/dataset_io.hpp"
#include "bwb/errors.hpp"
#include "bwb/estimators.hpp"
#include "bwb/experiment.hpp"
#include "bwb/sbm.hpp"

namespace {

using nlohmann::json;

struct GeneratorOptions {
  std::string preset = "paper6";
  int d = 0;                     // 0: take the preset's value
  std::vector<int> block_sizes;  // empty: preset's value
  int jitter = -1;               // -1: preset's value
  double r = bwb::kDefaultRegularization;
};

void add_generator_flags(CLI::App* cmd, GeneratorOptions& gen) {
  cmd->add_option("--preset", gen.preset, "Generator preset: paper6 (d=20, blocks 10+-2)")
      ->check(CLI::IsMember({"paper6"}));
  cmd->add_option("--d", gen.d, "Node count override");
  cmd->add_option("--block-sizes", gen.block_sizes, "Comma-separated block sizes override")
      ->delimiter(',');
  cmd->add_option("--jitter", gen.jitter, "Block-size jitter half-width override");
  cmd->add_option("--r", gen.r, "Laplacian regularization");
}

bwb::SbmConfig resolve_sbm(const GeneratorOptions& gen) {
  bwb::SbmConfig cfg = bwb::paper6_sbm();
  if (gen.d > 0 && gen.block_sizes.empty()) {
    cfg = bwb::desk_sbm(gen.d);
    cfg.size_jitter = 0;
  } else if (gen.d > 0) {
    cfg.d = gen.d;
  }
  if (!gen.block_sizes.empty()) {
    cfg.block_sizes = gen.block_sizes;
    if (gen.d == 0) {
      int total = 0;
      for (int b : cfg.block_sizes) total += b;
      cfg.d = total;
    }
  }
  if (gen.jitter >= 0) cfg.size_jitter = gen.jitter;
  if (gen.r <= 0.0) throw bwb::ConfigError("regularization must be positive");
  cfg.validate();
  return cfg;
}

json sbm_to_json(const bwb::SbmConfig& cfg, double r) {
  json j;
  j["d"] = cfg.d;
  j["block_sizes"] = cfg.block_sizes;
  j["size_jitter"] = cfg.size_jitter;
  j["p"] = {{cfg.p(0, 0), cfg.p(0, 1)}, {cfg.p(1, 0), cfg.p(1, 1)}};
  j["weight_means"] = {{cfg.weight_means(0, 0), cfg.weight_means(0, 1)},
                       {cfg.weight_means(1, 0), cfg.weight_means(1, 1)}};
  j["r"] = r;
  return j;
}

bwb::StatKind parse_stat(const std::string& name) {
  if (name == "bw") return bwb::StatKind::BuresWasserstein;
  if (name == "frobenius") return bwb::StatKind::Frobenius;
  throw bwb::ConfigError("unknown statistic: " + name);
}

bwb::WeightScheme parse_scheme(const std::string& name, std::size_t n) {
  if (name == "exp1") return bwb::WeightScheme::Exp1();
  if (name == "po1") return bwb::WeightScheme::Po1();
  if (name == "bern2") return bwb::WeightScheme::Bern2();
  if (name == "ones") return bwb::WeightScheme::Provided(std::vector<double>(n, 1.0));
  throw bwb::ConfigError("unknown weight scheme: " + name);
}

/// CDF tables share one schema: x,lo,mean,hi. A single CDF writes its own
/// value into all three band columns.
void write_cdf_csv(const std::filesystem::path& path, const bwb::EmpiricalCdf& cdf) {
  std::ofstream out(path);
  if (!out) throw bwb::IoError("cannot write file: " + path.string());
  out << "x,lo,mean,hi\n";
  for (double x : cdf.points()) {
    const std::string f = bwb::detail::format_double(cdf.eval(x));
    out << bwb::detail::format_double(x) << ',' << f << ',' << f << ',' << f << '\n';
  }
}

void write_band_csv(const std::filesystem::path& path, const std::vector<bwb::BandPoint>& band) {
  std::ofstream out(path);
  if (!out) throw bwb::IoError("cannot write file: " + path.string());
  out << "x,lo,mean,hi\n";
  for (const bwb::BandPoint& p : band) {
    out << bwb::detail::format_double(p.x) << ',' << bwb::detail::format_double(p.lo) << ','
        << bwb::detail::format_double(p.mean) << ',' << bwb::detail::format_double(p.hi) << '\n';
  }
}

/// Reads the jump points (x column) back from a CDF table.
std::vector<double> read_cdf_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw bwb::IoError("cannot open file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,", 0) != 0) {
    throw bwb::IoError("missing x,... header in " + path.string());
  }
  std::vector<double> xs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      xs.push_back(std::stod(line.substr(0, line.find(','))));
    } catch (const std::exception&) {
      throw bwb::IoError("parse failure in " + path.string() + ": '" + line + "'");
    }
  }
  if (xs.empty()) throw bwb::IoError("empty CDF table: " + path.string());
  return xs;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw bwb::IoError("cannot write file: " + path.string());
  out << j.dump(2) << '\n';
}

json report_to_json(const bwb::BootstrapReport& report) {
  json j;
  j["stat_kind"] = bwb::stat_kind_name(report.stat_kind);
  j["n"] = report.n;
  j["B"] = report.b;
  j["scheme"] = report.scheme;
  j["seed"] = report.seed;
  j["replicates"] = report.replicates;
  json q = json::object();
  for (const auto& [level, value] : report.quantiles) {
    q[bwb::detail::format_double(level)] = value;
  }
  j["quantiles"] = q;
  j["rejected_draws"] = report.rejected_draws;
  return j;
}

std::vector<double> replicates_from_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw bwb::IoError("cannot open report: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw bwb::IoError("report parse failure: " + std::string(e.what()));
  }
  try {
    return j.at("replicates").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw bwb::IoError("report schema failure: " + std::string(e.what()));
  }
}

bwb::EmpiricalCdf load_cdf(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    return bwb::EmpiricalCdf::FromValues(replicates_from_report(path));
  }
  return bwb::EmpiricalCdf::FromValues(read_cdf_csv(path));
}

/// sup_x |mean_k F_k(x) - G(x)| over the union of jump points, exact for
/// right-continuous step functions.
double ks_mean_vs(const std::vector<bwb::EmpiricalCdf>& fs, const bwb::EmpiricalCdf& g) {
  std::vector<double> xs = g.points();
  for (const bwb::EmpiricalCdf& f : fs) {
    xs.insert(xs.end(), f.points().begin(), f.points().end());
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double sup = 0.0;
  for (double x : xs) {
    double mean = 0.0;
    for (const bwb::EmpiricalCdf& f : fs) mean += f.eval(x);
    mean /= static_cast<double>(fs.size());
    sup = std::max(sup, std::abs(mean - g.eval(x)));
  }
  return sup;
}

int cmd_gen(const GeneratorOptions& gen, std::size_t n, std::uint64_t seed,
            const std::string& out_dir) {
  if (n == 0) throw bwb::ConfigError("gen: --n must be positive");
  const bwb::SbmConfig cfg = resolve_sbm(gen);
  const std::vector<bwb::SymMatrix> matrices = bwb::sample_matrices(cfg, gen.r, n, seed);
  bwb::save_dataset(matrices, out_dir, seed, sbm_to_json(cfg, gen.r));
  std::cout << "gen: d=" << cfg.d << " n=" << n << " seed=" << seed << " -> " << out_dir
            << std::endl;
  return 0;
}

int cmd_barycenter(const std::string& data_path, const std::string& out_path,
                   const std::string& log_path, double tol, int max_iter) {
  const bwb::SampleSet data = bwb::load_dataset(data_path);
  bwb::SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.track_objective = true;
  const bwb::BarycenterResult fit = bwb::barycenter(data, cfg);
  bwb::write_matrix_csv(out_path, fit.q.mat());
  json log;
  log["converged"] = fit.converged;
  log["iterations"] = fit.iterations;
  log["residual"] = fit.residual;
  log["tol"] = cfg.tol;
  log["objective_trace"] = fit.objective_trace;
  log["mean_map_error"] = bwb::mean_map_check(fit.q, data);
  if (!log_path.empty()) write_json(log_path, log);
  // non-convergence is reported, not raised: exit code stays 0
  std::cout << "barycenter: converged=" << (fit.converged ? "true" : "false")
            << " iterations=" << fit.iterations << " residual=" << fit.residual << " -> "
            << out_path << std::endl;
  return 0;
}

int cmd_bootstrap(const std::string& data_path, const std::string& qn_path, int b,
                  const std::string& scheme_name, const std::string& stat_name,
                  std::uint64_t seed, const std::string& out_path, const std::string& cdf_path,
                  double tol, int max_iter, int threads) {
  if (b < 1) throw bwb::ConfigError("bootstrap: --B must be positive");
  const bwb::SampleSet data = bwb::load_dataset(data_path);
  bwb::SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  bwb::SymMatrix q_n;
  if (qn_path.empty()) {
    q_n = bwb::barycenter(data, cfg).q;
  } else {
    q_n = bwb::SymMatrix::FromDense(bwb::read_matrix_csv(qn_path));
  }
  const bwb::WeightScheme scheme = parse_scheme(scheme_name, data.size());
  const bwb::BootstrapReport report =
      bwb::run_bootstrap(data, q_n, b, scheme, parse_stat(stat_name), cfg, seed, threads);
  write_json(out_path, report_to_json(report));
  if (!cdf_path.empty()) write_cdf_csv(cdf_path, report.cdf);
  std::cout << "bootstrap: B=" << b << " scheme=" << report.scheme
            << " rejected=" << report.rejected_draws << " -> " << out_path << std::endl;
  return 0;
}

int cmd_truth(const GeneratorOptions& gen, std::size_t n, std::size_t n_truth, int n_reps,
              const std::string& stat_name, std::uint64_t seed, const std::string& out_path,
              const std::string& qstar_path, double tol, int max_iter) {
  if (n == 0 || n_truth == 0 || n_reps < 1) {
    throw bwb::ConfigError("truth: --n, --n-truth and --n-reps must be positive");
  }
  if (n_truth < n) {
    std::cerr << "warning: n_truth=" << n_truth << " < n=" << n
              << "; the reference barycenter is noisier than the fits it grades" << std::endl;
  }
  const bwb::SbmConfig cfg = resolve_sbm(gen);
  bwb::SolverConfig solver;
  solver.tol = tol;
  solver.max_iter = max_iter;
  const bwb::TruthResult truth =
      bwb::build_truth(cfg, gen.r, n_truth, n, n_reps, parse_stat(stat_name), solver, seed);
  write_cdf_csv(out_path, truth.cdf);
  if (!qstar_path.empty()) bwb::write_matrix_csv(qstar_path, truth.q_star.mat());
  std::cout << "truth: n_truth=" << n_truth << " n=" << n << " n_reps=" << n_reps << " -> "
            << out_path << std::endl;
  return 0;
}

int cmd_diag(const std::string& data_path, const std::string& qn_path,
             const std::string& ref_path, const std::string& boot_path,
             const std::string& stat_name, int draws, std::uint64_t seed,
             const std::string& out_path, const std::string& cdf_path, double tol,
             int max_iter) {
  if (draws < 1) throw bwb::ConfigError("diag: --draws must be positive");
  const bwb::SampleSet data = bwb::load_dataset(data_path);
  bwb::SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  const bwb::SymMatrix q_n = qn_path.empty()
                                 ? bwb::barycenter(data, cfg).q
                                 : bwb::SymMatrix::FromDense(bwb::read_matrix_csv(qn_path));
  const bwb::StatKind stat = parse_stat(stat_name);
  const bwb::DiagnosticBundle bundle = bwb::build_diagnostics(q_n, data);

  json out;
  out["d"] = q_n.dim();
  out["n"] = data.size();
  out["seed"] = seed;
  out["stat"] = stat_name;
  out["draws"] = draws;
  out["tr_sigma"] = bundle.sigma.trace();
  const Eigen::VectorXd f_eigs = bundle.f.eigenvalues();
  out["f_lambda_min"] = f_eigs(f_eigs.size() - 1);
  out["f_lambda_max"] = f_eigs(0);
  out["kappa_f"] = bwb::condition_number(bundle.f);
  out["kappa_qn"] = bwb::condition_number(q_n);
  try {
    const bwb::SpectrumDiag spectrum = bwb::spectrum_diag(bundle.xi);
    out["xi_spectrum"] = {{"lambda1_sq", spectrum.lambda1_sq},
                          {"lambda2_sq", spectrum.lambda2_sq},
                          {"varkappa", spectrum.varkappa},
                          {"gamma", spectrum.gamma},
                          {"trace", spectrum.trace}};
  } catch (const bwb::RankError&) {
    out["xi_spectrum"] = nullptr;  // rank below 2, anti-concentration undefined
  }
  if (!ref_path.empty()) {
    const bwb::SymMatrix q_ref = bwb::SymMatrix::FromDense(bwb::read_matrix_csv(ref_path));
    const bwb::SymOperator f_ref = bwb::f_op(q_ref, data);
    const bwb::DiscrepancyScalars scalars = bwb::discrepancy(q_ref, q_n, f_ref, bundle.f);
    out["reference"] = {{"q", scalars.q}, {"f", scalars.f}, {"eta", scalars.eta}};
  }

  const bwb::SymOperator* a = stat == bwb::StatKind::BuresWasserstein ? &bundle.a : nullptr;
  const std::vector<double> stats = bwb::sample_gaussian_stat(bundle.xi, a, draws, seed);
  const bwb::EmpiricalCdf gauss_cdf = bwb::EmpiricalCdf::FromValues(stats);
  if (!cdf_path.empty()) write_cdf_csv(cdf_path, gauss_cdf);
  if (!boot_path.empty()) {
    out["ks_gauss_vs_boot"] = bwb::ks_distance(gauss_cdf, load_cdf(boot_path));
  }
  write_json(out_path, out);
  std::cout << "diag: tr_sigma=" << bundle.sigma.trace() << " -> " << out_path << std::endl;
  return 0;
}

int cmd_compare(const std::string& truth_path, const std::vector<std::string>& boot_paths,
                const std::string& gauss_path, const std::vector<double>& grid_opt,
                const std::string& out_path, const std::string& summary_path) {
  const bwb::EmpiricalCdf truth = load_cdf(truth_path);
  std::vector<bwb::EmpiricalCdf> boots;
  for (const std::string& p : boot_paths) boots.push_back(load_cdf(p));
  if (boots.empty()) throw bwb::ConfigError("compare: need at least one --boot input");

  std::vector<double> grid = grid_opt;
  if (grid.empty()) {
    grid = truth.points();
    for (const bwb::EmpiricalCdf& f : boots) {
      grid.insert(grid.end(), f.points().begin(), f.points().end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  } else if (!std::is_sorted(grid.begin(), grid.end())) {
    throw bwb::ConfigError("compare: --grid must be sorted");
  }

  if (boots.size() >= 2) {
    write_band_csv(out_path, bwb::confidence_bands(boots, grid));
  } else {
    std::ofstream out(out_path);
    if (!out) throw bwb::IoError("cannot write file: " + out_path);
    out << "x,lo,mean,hi\n";
    for (double x : grid) {
      const std::string f = bwb::detail::format_double(boots.front().eval(x));
      out << bwb::detail::format_double(x) << ',' << f << ',' << f << ',' << f << '\n';
    }
  }

  json summary;
  summary["n_bootstrap_cdfs"] = boots.size();
  summary["grid_points"] = grid.size();
  const double ks_mean = ks_mean_vs(boots, truth);
  summary["ks_mean_boot_vs_truth"] = ks_mean;
  std::vector<double> per_boot;
  for (const bwb::EmpiricalCdf& f : boots) per_boot.push_back(bwb::ks_distance(f, truth));
  summary["ks_boot_vs_truth"] = per_boot;
  if (!gauss_path.empty()) {
    summary["ks_gauss_vs_truth"] = bwb::ks_distance(load_cdf(gauss_path), truth);
  }
  if (!summary_path.empty()) write_json(summary_path, summary);
  std::cout << "compare: ks(mean bootstrap, truth)=" << ks_mean << " -> " << out_path
            << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bures-Wasserstein barycenters with multiplier-bootstrap uncertainty"};
  app.require_subcommand(1);

  // gen
  GeneratorOptions gen_opts;
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate a dataset of regularized inverse Laplacians");
  add_generator_flags(gen, gen_opts);
  gen->add_option("--n", gen_n, "Number of matrices")->required();
  gen->add_option("--seed", gen_seed, "Master seed")->required();
  gen->add_option("--out", gen_out, "Output directory")->required();

  // barycenter
  std::string bc_data, bc_out, bc_log;
  double bc_tol = 1e-10;
  int bc_max_iter = 500;
  CLI::App* bc = app.add_subcommand("barycenter", "Fit the barycenter of a dataset");
  bc->add_option("--data", bc_data, "Dataset manifest path")->required();
  bc->add_option("--out", bc_out, "Output matrix CSV")->required();
  bc->add_option("--log", bc_log, "Convergence log JSON");
  bc->add_option("--tol", bc_tol, "Residual tolerance");
  bc->add_option("--max-iter", bc_max_iter, "Iteration cap");

  // bootstrap
  std::string bs_data, bs_qn, bs_scheme = "bern2", bs_stat = "bw", bs_out, bs_cdf;
  int bs_b = 0, bs_threads = 1, bs_max_iter = 500;
  double bs_tol = 1e-10;
  std::uint64_t bs_seed = 0;
  CLI::App* bs = app.add_subcommand("bootstrap", "Multiplier bootstrap around the fitted barycenter");
  bs->add_option("--data", bs_data, "Dataset manifest path")->required();
  bs->add_option("--qn", bs_qn, "Fitted barycenter CSV (computed when omitted)");
  bs->add_option("--B", bs_b, "Replicate count")->required();
  bs->add_option("--scheme", bs_scheme, "Weight scheme: exp1|po1|bern2|ones");
  bs->add_option("--stat", bs_stat, "Statistic: bw|frobenius");
  bs->add_option("--seed", bs_seed, "Master seed")->required();
  bs->add_option("--out", bs_out, "Report JSON path")->required();
  bs->add_option("--cdf-out", bs_cdf, "Replicate CDF CSV path");
  bs->add_option("--tol", bs_tol, "Solver tolerance");
  bs->add_option("--max-iter", bs_max_iter, "Solver iteration cap");
  bs->add_option("--threads", bs_threads, "Worker cap")->envname("BWB_THREADS");

  // truth
  GeneratorOptions tr_opts;
  std::size_t tr_n = 0, tr_n_truth = 0;
  int tr_reps = 0, tr_max_iter = 500;
  double tr_tol = 1e-10;
  std::string tr_stat = "bw", tr_out, tr_qstar;
  std::uint64_t tr_seed = 0;
  CLI::App* tr = app.add_subcommand("truth", "Ground-truth sampling CDF from fresh datasets");
  add_generator_flags(tr, tr_opts);
  tr->add_option("--n", tr_n, "Dataset size being graded")->required();
  tr->add_option("--n-truth", tr_n_truth, "Pool size for the reference barycenter")->required();
  tr->add_option("--n-reps", tr_reps, "Number of fresh datasets")->required();
  tr->add_option("--stat", tr_stat, "Statistic: bw|frobenius");
  tr->add_option("--seed", tr_seed, "Master seed")->required();
  tr->add_option("--out", tr_out, "True-CDF CSV path")->required();
  tr->add_option("--qstar-out", tr_qstar, "Reference barycenter CSV path");
  tr->add_option("--tol", tr_tol, "Solver tolerance");
  tr->add_option("--max-iter", tr_max_iter, "Solver iteration cap");

  // diag
  std::string dg_data, dg_qn, dg_ref, dg_boot, dg_stat = "bw", dg_out, dg_cdf;
  int dg_draws = 100000, dg_max_iter = 500;
  double dg_tol = 1e-10;
  std::uint64_t dg_seed = 0;
  CLI::App* dg = app.add_subcommand("diag", "Operator diagnostics and Gaussian-limit sampling");
  dg->add_option("--data", dg_data, "Dataset manifest path")->required();
  dg->add_option("--qn", dg_qn, "Fitted barycenter CSV (computed when omitted)");
  dg->add_option("--ref", dg_ref, "Reference barycenter CSV for q/f/eta");
  dg->add_option("--boot", dg_boot, "Bootstrap report or CDF table to compare against");
  dg->add_option("--stat", dg_stat, "Statistic: bw|frobenius");
  dg->add_option("--draws", dg_draws, "Monte-Carlo draw count");
  dg->add_option("--seed", dg_seed, "Master seed")->required();
  dg->add_option("--out", dg_out, "Diagnostics JSON path")->required();
  dg->add_option("--cdf-out", dg_cdf, "Gaussian CDF CSV path");
  dg->add_option("--tol", dg_tol, "Solver tolerance");
  dg->add_option("--max-iter", dg_max_iter, "Solver iteration cap");

  // compare
  std::string cp_truth, cp_gauss, cp_out, cp_summary;
  std::vector<std::string> cp_boot;
  std::vector<double> cp_grid;
  CLI::App* cp = app.add_subcommand("compare", "Merge CDFs into bands and Kolmogorov distances");
  cp->add_option("--truth", cp_truth, "True-CDF table")->required();
  cp->add_option("--boot", cp_boot, "Bootstrap report JSON or CDF table (repeatable)")
      ->required()
      ->take_all();
  cp->add_option("--gauss", cp_gauss, "Gaussian CDF table");
  cp->add_option("--grid", cp_grid, "Explicit sorted evaluation grid")->delimiter(',');
  cp->add_option("--out", cp_out, "Band CSV path")->required();
  cp->add_option("--summary", cp_summary, "Summary JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_opts, gen_n, gen_seed, gen_out);
    if (bc->parsed()) return cmd_barycenter(bc_data, bc_out, bc_log, bc_tol, bc_max_iter);
    if (bs->parsed()) {
      return cmd_bootstrap(bs_data, bs_qn, bs_b, bs_scheme, bs_stat, bs_seed, bs_out, bs_cdf,
                           bs_tol, bs_max_iter, bs_threads);
    }
    if (tr->parsed()) {
      return cmd_truth(tr_opts, tr_n, tr_n_truth, tr_reps, tr_stat, tr_seed, tr_out, tr_qstar,
                       tr_tol, tr_max_iter);
    }
    if (dg->parsed()) {
      return cmd_diag(dg_data, dg_qn, dg_ref, dg_boot, dg_stat, dg_draws, dg_seed, dg_out,
                      dg_cdf, dg_tol, dg_max_iter);
    }
    if (cp->parsed()) return cmd_compare(cp_truth, cp_boot, cp_gauss, cp_grid, cp_out, cp_summary);
  } catch (const bwb::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
