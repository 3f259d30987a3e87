// ics: invariant coordinate selection with a numerically stable pivoted-QR
// backend. Subcommands: run, gen, sweep, distances, bench.
//
// Exit codes: 0 success, 2 numerical failure (singular covariance and
// friends), 3 usage or parse errors.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "ics/csv.hpp"
#include "ics/experiments.hpp"
#include "ics/ics.hpp"
#include "ics/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ics;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 3;

void emit_error_json(const std::string& kind, const std::string& message,
                     json extra = json::object()) {
  json err = {{"error", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  std::cerr << err.dump() << "\n";
}

// ---------------------------------------------------------------------------
// shared flag bundles

struct DatasetFlags {
  std::string orientation = "obs-rows";
  std::string header = "auto";
  std::string delimiter = ",";

  void attach(CLI::App* cmd) {
    cmd->add_option("--orientation", orientation,
                    "CSV layout: obs-rows (default) or vars-rows")
        ->check(CLI::IsMember({"obs-rows", "vars-rows"}));
    cmd->add_option("--header", header, "Header row: auto, yes, no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    cmd->add_option("--delimiter", delimiter, "Cell delimiter (default ,)");
  }

  io::DatasetOptions options() const {
    io::DatasetOptions o;
    o.orientation = orientation == "vars-rows" ? io::Orientation::kVarsRows
                                               : io::Orientation::kObsRows;
    o.header = header == "yes"  ? io::HeaderMode::kYes
               : header == "no" ? io::HeaderMode::kNo
                                : io::HeaderMode::kAuto;
    if (delimiter.size() != 1) {
      throw ShapeError("--delimiter must be a single character");
    }
    o.delimiter = delimiter[0];
    return o;
  }
};

struct IcsFlags {
  double alpha = 1.0;
  bool constant_weight = false;
  double clamp_floor = 0.0;
  bool no_row_pivot = false;
  double rank_epsilon = 1e-8;
  std::string rank_criterion = "leading";
  std::string reduction = "urv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha,
                    "Weight exponent: w(d) = d^alpha (1 = cov4/FOBI, "
                    "-1 = covAxis/PAA)");
    cmd->add_flag("--constant-weight", constant_weight,
                  "Use w = 1 instead of the power family");
    cmd->add_option("--clamp-floor", clamp_floor,
                    "Clamp zero distances to this floor instead of erroring "
                    "(alpha < 0 only)");
    cmd->add_flag("--no-row-pivot", no_row_pivot,
                  "Disable the row presort by max-abs norm");
    cmd->add_option("--rank-epsilon", rank_epsilon,
                    "Rank scan tolerance (default 1e-8)");
    cmd->add_option("--rank-criterion", rank_criterion,
                    "Rank scan rule: leading (|R_qq| vs |R_11|) or successive")
        ->check(CLI::IsMember({"leading", "successive"}));
    cmd->add_option("--reduction", reduction,
                    "Rank-deficient handling: urv, truncate, none")
        ->check(CLI::IsMember({"urv", "truncate", "none"}));
  }

  IcsOptions options() const {
    IcsOptions o;
    if (constant_weight) {
      o.weight = WeightSpec::constant();
    } else if (clamp_floor > 0.0) {
      o.weight = WeightSpec::power_clamped(alpha, clamp_floor);
    } else {
      o.weight = WeightSpec::power(alpha);
    }
    o.row_pivot = !no_row_pivot;
    o.rank_epsilon = rank_epsilon;
    o.rank_criterion = rank_criterion == "successive"
                           ? RankCriterion::kSuccessive
                           : RankCriterion::kLeading;
    o.reduction = reduction == "truncate" ? Reduction::kTruncate
                  : reduction == "none"   ? Reduction::kNone
                                          : Reduction::kUrv;
    return o;
  }
};

std::uint64_t resolve_seed(std::uint64_t flag_value, bool flag_given) {
  if (flag_given) return flag_value;  // flag wins over env
  if (const char* env = std::getenv("ICS_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw ShapeError("ICS_SEED is not a valid unsigned integer: " +
                       std::string(env));
    }
    return static_cast<std::uint64_t>(v);
  }
  return flag_value;
}

// ---------------------------------------------------------------------------
// artifact writers

std::string criterion_name(RankCriterion c) {
  return c == RankCriterion::kLeading ? "leading" : "successive";
}

void write_rank_json(const fs::path& path, const RankDecision& rd) {
  json j = {{"q", rd.q},
            {"epsilon", rd.epsilon},
            {"criterion", criterion_name(rd.criterion)},
            {"r_diag_abs", std::vector<double>(
                               rd.r_diag_abs.data(),
                               rd.r_diag_abs.data() + rd.r_diag_abs.size())}};
  std::ofstream(path) << j.dump(2) << "\n";
}

void write_result_artifacts(const fs::path& dir, const IcsResult& res,
                            const RankDecision& rd) {
  fs::create_directories(dir);
  const Index p = res.eigenvalues.size();
  const Index n = res.scores.cols();

  Matrix eig(p, 2);
  for (Index i = 0; i < p; ++i) {
    eig(i, 0) = static_cast<double>(i + 1);
    eig(i, 1) = res.eigenvalues[i];
  }
  io::write_matrix_csv((dir / "eigenvalues.csv").string(), eig,
                       {"index", "value"});

  std::vector<std::string> bcols;
  for (Index j = 0; j < res.unmixing.cols(); ++j) {
    bcols.push_back("var_" + std::to_string(j + 1));
  }
  io::write_matrix_csv((dir / "unmixing.csv").string(), res.unmixing, bcols);

  std::vector<std::string> iccols;
  for (Index j = 0; j < p; ++j) {
    iccols.push_back("ic_" + std::to_string(j + 1));
  }
  io::write_matrix_csv((dir / "scores.csv").string(),
                       res.scores.transpose(), iccols);
  (void)n;

  write_rank_json(dir / "rank.json", rd);

  json diag = {
      {"algorithm", res.algorithm == IcsAlgorithm::kQr ? "qr" : "eigen"},
      {"rank_used", res.rank_used},
      {"condition_estimate", res.diagnostics.condition_estimate},
      {"min_relative_gap", res.diagnostics.min_relative_gap},
      {"near_equal_eigenvalues", res.diagnostics.near_equal_eigenvalues},
      {"detected_rank", res.diagnostics.detected_rank},
      {"col_perm", res.col_perm}};
  std::ofstream(dir / "diagnostics.json") << diag.dump(2) << "\n";
}

int numerical_failure(const NumericalError& e) {
  json extra = json::object();
  if (const auto* sc = dynamic_cast<const SingularCovariance*>(&e)) {
    extra["rcond"] = sc->rcond;
    extra["min_eigenvalue"] = sc->min_eigenvalue;
    emit_error_json("SingularCovariance", e.what(), extra);
  } else if (const auto* st = dynamic_cast<const SingularTriangular*>(&e)) {
    extra["index"] = st->index;
    emit_error_json("SingularTriangular", e.what(), extra);
  } else if (const auto* zd = dynamic_cast<const ZeroDistance*>(&e)) {
    extra["indices"] = zd->indices;
    emit_error_json("ZeroDistance", e.what(), extra);
  } else if (const auto* rd = dynamic_cast<const RankDeficient*>(&e)) {
    extra["detected_rank"] = rd->detected_rank;
    extra["full_dim"] = rd->full_dim;
    emit_error_json("RankDeficient", e.what(), extra);
  } else {
    emit_error_json("NumericalError", e.what());
  }
  return kExitNumerical;
}

// ---------------------------------------------------------------------------
// run

int cmd_run(const std::string& dataset_path, const DatasetFlags& df,
            const IcsFlags& icf, const std::string& algorithm,
            const std::string& out_dir) {
  io::Dataset ds = io::read_dataset(dataset_path, df.options());
  IcsOptions opts = icf.options();
  opts.validate();

  // The rank decision comes from the pivoted QR of the centered data and
  // is reported for every algorithm.
  CenteredData cd = center(ds.x);
  const double scale = std::sqrt(static_cast<double>(cd.n_obs() - 1));
  PivotedQR qr =
      qr_pivoted(cd.xc.transpose() / scale, true, opts.row_pivot);
  RankDecision rd =
      numerical_rank(qr.r_diag_abs, opts.rank_epsilon, opts.rank_criterion);

  const bool run_qr = algorithm == "qr" || algorithm == "both";
  const bool run_eigen = algorithm == "eigen" || algorithm == "both";
  const fs::path out(out_dir);

  bool numerical_failed = false;
  IcsResult qr_res, eigen_res;
  bool have_qr = false, have_eigen = false;

  if (run_qr) {
    try {
      ReducedIcs red = reduce_then_ics(ds.x, opts);
      qr_res = std::move(red.result);
      have_qr = true;
      const fs::path dir = algorithm == "both" ? out / "qr" : out;
      write_result_artifacts(dir, qr_res, red.rank);
      if (!red.rank.full_rank()) {
        io::write_matrix_csv((dir / "basis.csv").string(), red.basis, {});
      }
    } catch (const NumericalError& e) {
      numerical_failure(e);
      numerical_failed = true;
    }
  }
  if (run_eigen) {
    try {
      eigen_res = ics_eigen(cd, opts);
      have_eigen = true;
      write_result_artifacts(algorithm == "both" ? out / "eigen" : out,
                             eigen_res, rd);
    } catch (const NumericalError& e) {
      numerical_failure(e);
      numerical_failed = true;
    }
  }

  if (have_qr && have_eigen &&
      qr_res.eigenvalues.size() == eigen_res.eigenvalues.size()) {
    const double denom = eigen_res.eigenvalues.cwiseAbs().maxCoeff();
    const double diff =
        (qr_res.eigenvalues - eigen_res.eigenvalues).cwiseAbs().maxCoeff();
    std::cout << "eigenvalue agreement (qr vs eigen): max relative diff = "
              << (denom > 0 ? diff / denom : diff) << "\n";
  }
  std::cout << "rank: q = " << rd.q << " of p = " << cd.p_vars()
            << " (criterion " << criterion_name(rd.criterion) << ", epsilon "
            << rd.epsilon << ")\n";
  return numerical_failed ? kExitNumerical : kExitOk;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen_mixture(Index n, Index p, double epsilon, double delta,
                    std::uint64_t seed, const std::string& out_path) {
  experiments::MixtureSpec spec{n, p, epsilon, delta, seed};
  experiments::LabeledData data = experiments::gen_mixture_labeled(spec);

  io::DatasetOptions dopts;
  dopts.orientation = io::Orientation::kObsRows;
  io::write_dataset(out_path, data.x, dopts, {});

  json meta = {{"kind", "mixture"}, {"n", n},       {"p", p},
               {"epsilon", epsilon}, {"delta", delta}, {"seed", seed},
               {"labels", data.labels}};
  std::ofstream(out_path + ".meta.json") << meta.dump(2) << "\n";
  std::cout << "wrote " << out_path << " (" << n << " obs x " << p
            << " vars) and ground-truth sidecar\n";
  return kExitOk;
}

int cmd_gen_ica(Index n, const std::vector<std::string>& source_names,
                std::uint64_t seed, const std::string& out_path) {
  experiments::IcaSpec spec;
  spec.n = n;
  spec.seed = seed;
  spec.sources.clear();
  for (const std::string& s : source_names) {
    if (s == "gaussian") spec.sources.push_back(experiments::SourceDist::kGaussian);
    else if (s == "t5") spec.sources.push_back(experiments::SourceDist::kStudentT5);
    else if (s == "uniform") spec.sources.push_back(experiments::SourceDist::kUniform);
    else if (s == "laplace") spec.sources.push_back(experiments::SourceDist::kLaplace);
    else throw ShapeError("unknown source distribution: " + s);
  }
  experiments::IcaData data = experiments::gen_ica(spec);

  io::DatasetOptions dopts;
  io::write_dataset(out_path, data.x, dopts, {});
  const std::string sources_csv = out_path + ".sources.csv";
  io::write_dataset(sources_csv, data.sources, dopts, {});

  std::vector<double> mixing_diag;
  for (Index j = 0; j < data.mixing.rows(); ++j) {
    mixing_diag.push_back(data.mixing(j, j));
  }
  json meta = {{"kind", "ica"},
               {"n", n},
               {"seed", seed},
               {"sources", source_names},
               {"mixing_diag", mixing_diag},
               {"sources_csv", sources_csv}};
  std::ofstream(out_path + ".meta.json") << meta.dump(2) << "\n";
  std::cout << "wrote " << out_path << " and ground-truth sidecar\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

std::vector<WeightSpec> parse_pairs(const std::string& pairs) {
  std::vector<WeightSpec> out;
  std::istringstream ss(pairs);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "cov4") out.push_back(WeightSpec::power(1.0));
    else if (tok == "covaxis") out.push_back(WeightSpec::power(-1.0));
    else if (tok == "constant") out.push_back(WeightSpec::constant());
    else if (tok.rfind("alpha=", 0) == 0) {
      out.push_back(WeightSpec::power(std::stod(tok.substr(6))));
    } else {
      throw ShapeError("unknown scatter pair: " + tok +
                       " (use cov4, covaxis, constant, alpha=<x>)");
    }
  }
  if (out.empty()) throw ShapeError("no scatter pairs given");
  return out;
}

int cmd_sweep(int kmin, int kmax, int kstep, const std::string& pairs,
              const std::string& algorithms, const std::string& base,
              Index n, Index p, double epsilon, double delta,
              std::uint64_t seed, const IcsFlags& icf,
              const std::string& out_dir) {
  experiments::SweepConfig cfg;
  if (kstep < 1) throw ShapeError("--kstep must be >= 1");
  for (int k = kmin; k <= kmax; k += kstep) cfg.k_grid.push_back(k);
  cfg.pairs = parse_pairs(pairs);
  if (algorithms == "both") {
    cfg.algorithms = {IcsAlgorithm::kEigen, IcsAlgorithm::kQr};
  } else if (algorithms == "eigen") {
    cfg.algorithms = {IcsAlgorithm::kEigen};
  } else if (algorithms == "qr") {
    cfg.algorithms = {IcsAlgorithm::kQr};
  } else {
    throw ShapeError("--algorithms must be eigen, qr or both");
  }
  cfg.base = base == "ica" ? experiments::SweepBase::kIca
                           : experiments::SweepBase::kMixture;
  cfg.mixture = {n, p, epsilon, delta, seed};
  cfg.ica.n = n;
  cfg.ica.seed = seed;
  cfg.ics_options = icf.options();

  experiments::SweepReport rep = experiments::sweep(cfg);

  fs::create_directories(out_dir);
  const fs::path out(out_dir);

  // sweep.csv: k, pair, algorithm, status, eig_1..eig_p, kappa
  {
    std::ofstream csv(out / "sweep.csv");
    csv << "k,pair,algorithm,status";
    for (Index j = 0; j < rep.p; ++j) csv << ",eig_" << (j + 1);
    csv << ",kappa\n";
    for (const auto& cell : rep.cells) {
      csv << cell.k << ',' << cell.pair << ','
          << (cell.algorithm == IcsAlgorithm::kQr ? "qr" : "eigen") << ','
          << (cell.status == experiments::RunStatus::kOk ? "OK"
                                                         : "SINGULAR_ERROR");
      for (Index j = 0; j < rep.p; ++j) {
        csv << ',';
        if (cell.status == experiments::RunStatus::kOk &&
            j < cell.eigenvalues.size()) {
          csv << io::format_double(cell.eigenvalues[j]);
        }
      }
      csv << ',';
      if (std::isfinite(cell.kappa)) csv << io::format_double(cell.kappa);
      csv << '\n';
    }
  }

  {
    json cells = json::array();
    for (const auto& cell : rep.cells) {
      json c = {{"k", cell.k},
                {"pair", cell.pair},
                {"algorithm",
                 cell.algorithm == IcsAlgorithm::kQr ? "qr" : "eigen"},
                {"status", cell.status == experiments::RunStatus::kOk
                               ? "OK"
                               : "SINGULAR_ERROR"},
                {"kappa", std::isfinite(cell.kappa) ? json(cell.kappa)
                                                    : json(nullptr)}};
      if (cell.status == experiments::RunStatus::kOk) {
        c["eigenvalues"] = std::vector<double>(
            cell.eigenvalues.data(),
            cell.eigenvalues.data() + cell.eigenvalues.size());
      } else {
        c["error"] = cell.error;
      }
      cells.push_back(std::move(c));
    }
    json j = {{"p", rep.p}, {"cells", cells}};
    std::ofstream(out / "sweep.json") << j.dump(2) << "\n";
  }

  // One SVG panel per pair x algorithm, one line per eigenvalue index.
  {
    std::vector<io::SvgPanel> panels;
    for (const WeightSpec& pair : cfg.pairs) {
      for (IcsAlgorithm alg : cfg.algorithms) {
        io::SvgPanel panel;
        panel.title = "cov-" + pair.name() + " / " +
                      (alg == IcsAlgorithm::kQr ? "ICSQR" : "ICSEigen");
        panel.log_y = true;
        panel.x_label = "k (log10 condition)";
        panel.y_label = "eigenvalue";
        for (Index j = 0; j < rep.p; ++j) {
          io::SvgSeries s;
          s.label = (j == 0) ? "eig_1..eig_" + std::to_string(rep.p) : "";
          for (const auto& cell : rep.cells) {
            if (cell.pair != pair.name() || cell.algorithm != alg) continue;
            s.xs.push_back(cell.k);
            s.ys.push_back(cell.status == experiments::RunStatus::kOk &&
                                   j < cell.eigenvalues.size()
                               ? cell.eigenvalues[j]
                               : std::numeric_limits<double>::quiet_NaN());
          }
          panel.series.push_back(std::move(s));
        }
        panels.push_back(std::move(panel));
      }
    }
    io::write_svg_panels((out / "sweep.svg").string(), panels,
                         (int)cfg.algorithms.size());
  }

  int failures = 0;
  for (const auto& cell : rep.cells) {
    if (cell.status != experiments::RunStatus::kOk) ++failures;
  }
  std::cout << "sweep: " << rep.cells.size() << " cells, " << failures
            << " numerical failures (recorded in-report)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// distances

int cmd_distances(const std::string& dataset_path, const DatasetFlags& df,
                  const IcsFlags& icf, Index components, int top,
                  const std::string& out_dir) {
  io::Dataset ds = io::read_dataset(dataset_path, df.options());
  if (components < 1 || components > ds.x.rows()) {
    throw ShapeError("--components must lie in [1, p = " +
                     std::to_string(ds.x.rows()) + "]");
  }
  ReducedIcs red = reduce_then_ics(ds.x, icf.options());
  Vector d = ics_distances(red.result, components);

  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  Matrix table(d.size(), 2);
  for (Index i = 0; i < d.size(); ++i) {
    table(i, 0) = static_cast<double>(i + 1);
    table(i, 1) = d[i];
  }
  io::write_matrix_csv((out / "distances.csv").string(), table,
                       {"index", "icsd2"});

  io::SvgPanel panel;
  panel.title = "squared ICS distances (first " +
                std::to_string(components) + " component(s))";
  panel.x_label = "observation";
  panel.y_label = "ICSD^2";
  io::SvgSeries s;
  s.draw_line = false;
  for (Index i = 0; i < d.size(); ++i) {
    s.xs.push_back(static_cast<double>(i + 1));
    s.ys.push_back(d[i]);
  }
  panel.series.push_back(std::move(s));
  io::write_svg_panels((out / "distances.svg").string(), {panel}, 1);

  std::vector<Index> order(static_cast<std::size_t>(d.size()));
  for (Index i = 0; i < d.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&d](Index a, Index b) { return d[a] > d[b]; });
  std::cout << "top " << top << " observations by ICSD^2:\n";
  std::cout << "rank,index,icsd2\n";
  for (int r = 0; r < top && r < (int)order.size(); ++r) {
    const Index i = order[static_cast<std::size_t>(r)];
    std::cout << (r + 1) << ',' << (i + 1) << ',' << io::format_double(d[i])
              << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(Index n, Index p, int reps, std::uint64_t seed,
              const std::string& out_dir) {
  experiments::BenchmarkReport rep = experiments::benchmark(n, p, reps, seed);

  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  Matrix table(reps, 3);
  for (int r = 0; r < reps; ++r) {
    table(r, 0) = r + 1;
    table(r, 1) = rep.qr_seconds[static_cast<std::size_t>(r)];
    table(r, 2) = rep.eigen_seconds[static_cast<std::size_t>(r)];
  }
  io::write_matrix_csv((out / "bench.csv").string(), table,
                       {"rep", "qr_seconds", "eigen_seconds"});

  json j = {{"n", n},
            {"p", p},
            {"reps", reps},
            {"median_qr_seconds", rep.median_qr_seconds},
            {"median_eigen_seconds", rep.median_eigen_seconds},
            {"flops_qr_factorization", rep.flops_qr_factorization},
            {"flops_ics_qr", rep.flops_ics_qr},
            {"flops_ics_eigen", rep.flops_ics_eigen}};
  std::ofstream(out / "bench.json") << j.dump(2) << "\n";

  std::cout << "bench n=" << n << " p=" << p << " reps=" << reps
            << ": median qr " << rep.median_qr_seconds << " s, median eigen "
            << rep.median_eigen_seconds << " s\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant coordinate selection via pivoted QR"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run ICS on a CSV dataset");
  std::string run_dataset, run_algorithm = "qr", run_out = ".";
  DatasetFlags run_df;
  IcsFlags run_icf;
  run->add_option("dataset", run_dataset, "CSV file")->required();
  run->add_option("--algorithm", run_algorithm, "qr (default), eigen, both")
      ->check(CLI::IsMember({"qr", "eigen", "both"}));
  run->add_option("--out", run_out, "Output directory (default .)");
  run_df.attach(run);
  run_icf.attach(run);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate synthetic datasets");
  std::string gen_kind, gen_out = "dataset.csv";
  Index gen_n = 10000, gen_p = 4;
  double gen_epsilon = 0.10, gen_delta = 6.0;
  std::uint64_t gen_seed = 1;
  bool gen_seed_given = false;
  std::vector<std::string> gen_sources = {"gaussian", "t5", "uniform",
                                          "laplace"};
  gen->add_option("kind", gen_kind, "mixture or ica")
      ->required()
      ->check(CLI::IsMember({"mixture", "ica"}));
  gen->add_option("--n", gen_n, "Observations");
  gen->add_option("--p", gen_p, "Variables (mixture)");
  gen->add_option("--epsilon", gen_epsilon, "Mixing proportion (mixture)");
  gen->add_option("--delta", gen_delta, "Location shift (mixture)");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--sources", gen_sources,
                  "ICA source distributions (gaussian t5 uniform laplace)");
  gen->add_option("--out", gen_out, "Output CSV path");
  (void)gen_seed_opt;

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Condition-number stability sweep over k = log10 kappa");
  int sw_kmin = 0, sw_kmax = 30, sw_kstep = 1, sw_top = 0;
  std::string sw_pairs = "cov4,covaxis", sw_algorithms = "both",
              sw_base = "mixture", sw_out = ".";
  Index sw_n = 10000, sw_p = 4;
  double sw_epsilon = 0.10, sw_delta = 6.0;
  std::uint64_t sw_seed = 1;
  IcsFlags sw_icf;
  sweep_cmd->add_option("--kmin", sw_kmin, "First exponent (default 0)");
  sweep_cmd->add_option("--kmax", sw_kmax, "Last exponent (default 30)");
  sweep_cmd->add_option("--kstep", sw_kstep, "Exponent step (default 1)");
  sweep_cmd->add_option("--pairs", sw_pairs,
                        "Comma list: cov4, covaxis, constant, alpha=<x>");
  sweep_cmd->add_option("--algorithms", sw_algorithms, "eigen, qr or both");
  sweep_cmd->add_option("--base", sw_base, "Base data: mixture or ica")
      ->check(CLI::IsMember({"mixture", "ica"}));
  sweep_cmd->add_option("--n", sw_n, "Observations");
  sweep_cmd->add_option("--p", sw_p, "Variables (mixture base)");
  sweep_cmd->add_option("--epsilon", sw_epsilon, "Mixing proportion");
  sweep_cmd->add_option("--delta", sw_delta, "Location shift");
  auto* sw_seed_opt = sweep_cmd->add_option("--seed", sw_seed, "RNG seed");
  sweep_cmd->add_option("--out", sw_out, "Output directory");
  sw_icf.attach(sweep_cmd);
  (void)sw_top;

  // distances
  auto* dist = app.add_subcommand(
      "distances", "Squared ICS distances for outlier ranking");
  std::string dist_dataset, dist_out = ".";
  Index dist_components = 1;
  int dist_top = 10;
  DatasetFlags dist_df;
  IcsFlags dist_icf;
  dist->add_option("dataset", dist_dataset, "CSV file")->required();
  dist->add_option("--components,-k", dist_components,
                   "Leading invariant coordinates to sum (default 1)");
  dist->add_option("--top", dist_top, "Rows of the printed ranking");
  dist->add_option("--out", dist_out, "Output directory");
  dist_df.attach(dist);
  dist_icf.attach(dist);

  // bench
  auto* bench = app.add_subcommand("bench", "Wall-clock comparison of the "
                                            "two algorithms");
  Index bench_n = 20000, bench_p = 50;
  int bench_reps = 5;
  std::uint64_t bench_seed = 1;
  std::string bench_out = ".";
  bench->add_option("--n", bench_n, "Observations (default 20000)");
  bench->add_option("--p", bench_p, "Variables (default 50)");
  bench->add_option("--reps", bench_reps, "Repetitions (default 5)");
  auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "RNG seed");
  bench->add_option("--out", bench_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_dataset, run_df, run_icf, run_algorithm, run_out);
    }
    if (gen->parsed()) {
      const std::uint64_t seed =
          resolve_seed(gen_seed, gen_seed_opt->count() > 0);
      if (gen_kind == "mixture") {
        return cmd_gen_mixture(gen_n, gen_p, gen_epsilon, gen_delta, seed,
                               gen_out);
      }
      return cmd_gen_ica(gen_n, gen_sources, seed, gen_out);
    }
    if (sweep_cmd->parsed()) {
      const std::uint64_t seed =
          resolve_seed(sw_seed, sw_seed_opt->count() > 0);
      return cmd_sweep(sw_kmin, sw_kmax, sw_kstep, sw_pairs, sw_algorithms,
                       sw_base, sw_n, sw_p, sw_epsilon, sw_delta, seed,
                       sw_icf, sw_out);
    }
    if (dist->parsed()) {
      return cmd_distances(dist_dataset, dist_df, dist_icf, dist_components,
                           dist_top, dist_out);
    }
    if (bench->parsed()) {
      const std::uint64_t seed =
          resolve_seed(bench_seed, bench_seed_opt->count() > 0);
      return cmd_bench(bench_n, bench_p, bench_reps, seed, bench_out);
    }
  } catch (const NumericalError& e) {
    return numerical_failure(e);
  } catch (const Error& e) {
    emit_error_json("UsageError", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    emit_error_json("InternalError", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
