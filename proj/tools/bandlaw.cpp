// bandlaw: reproducible band/block random matrix experiments.
//
// Subcommands: simulate, predict, check-scl, verify-conditions, oracle jw,
// repro fig1. Exit codes: 0 success, 2 config error, 3 numeric failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bandlaw/errors.hpp"
#include "bandlaw/experiment.hpp"
#include "bandlaw/limitlaw.hpp"
#include "bandlaw/structure.hpp"

namespace {

using namespace bandlaw;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("out: cannot open '" + path + "' for writing");
  out << text;
}

int parse_hist_bins(const std::string& text) {
  std::string t = text;
  if (t.rfind("bins=", 0) == 0) t = t.substr(5);
  try {
    const int bins = std::stoi(t);
    if (bins < 1) throw ConfigError("emit-hist: bins must be >= 1");
    return bins;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("emit-hist: expected bins=INT, got '" + text + "'");
  }
}

// Pair-partition syntax: 1-based blocks "1:2,3:4".
combinat::PairPartition parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> blocks;
  int max_elem = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string tok = text.substr(pos, next - pos);
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw ConfigError("pairs: expected 'a:b' blocks, got '" + tok + "'");
    const int a = std::stoi(tok.substr(0, colon));
    const int b = std::stoi(tok.substr(colon + 1));
    blocks.emplace_back(a - 1, b - 1);
    max_elem = std::max({max_elem, a, b});
    pos = next + 1;
  }
  return combinat::PairPartition::from_blocks(max_elem, blocks);
}

struct SimulateArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int n = 0, replicas = 0, threads = 0;
  std::string out, hist;
  bool emit_eigenvalues = false;
};

int run_simulate(const SimulateArgs& args) {
  experiment::ExperimentConfig cfg;
  if (!args.config_path.empty())
    cfg = experiment::config_from_json_text(read_file(args.config_path));
  if (args.seed_set) cfg.seed = args.seed;
  if (args.n > 0) cfg.n = args.n;
  if (args.replicas > 0) cfg.replicas = args.replicas;
  cfg.validate();

  const int threads = experiment::resolve_threads(args.threads);
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = experiment::run_experiment(cfg, threads);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "simulate: %d replicas, dim %d, %d threads, %.2f s\n", rep.replicas,
               rep.dimension, threads, wall);

  write_output(args.out, experiment::report_to_json_text(cfg, rep));
  const std::string stem =
      args.out.empty() || args.out == "-" ? std::string("bandlaw") : args.out;
  if (args.emit_eigenvalues)
    write_output(stem + ".eigenvalues.csv", experiment::eigenvalues_to_csv(rep));
  if (!args.hist.empty())
    write_output(stem + ".hist.csv",
                 experiment::histogram_to_csv(rep, parse_hist_bins(args.hist)));
  return 0;
}

int run_repro_fig1(int block_n, int replicas, std::uint64_t seed, int threads,
                   const std::string& out_dir) {
  std::filesystem::create_directories(out_dir.empty() ? "." : out_dir);
  const std::string dir = out_dir.empty() ? "." : out_dir;
  for (int k = 2; k <= 4; ++k) {
    experiment::ExperimentConfig cfg;
    cfg.ensemble.kind = experiment::EnsembleConfig::Kind::rademacher;
    cfg.structure.kind = experiment::StructureConfig::Kind::block;
    cfg.structure.block_kind = structure::BlockKind::homogeneous;
    cfg.structure.block_k = k;
    cfg.n = block_n;
    cfg.replicas = replicas;
    cfg.seed = seed;
    cfg.kmax = 4;
    cfg.validate();
    const auto rep = experiment::run_experiment(cfg, experiment::resolve_threads(threads));
    const std::string stem = dir + "/fig1_k" + std::to_string(k);
    write_output(stem + ".json", experiment::report_to_json_text(cfg, rep));
    write_output(stem + "_hist.csv", experiment::histogram_to_csv(rep, 80));
    double m4 = 0.0;
    for (const auto& row : rep.moments)
      if (row.k == 4) m4 = row.mean;
    std::fprintf(stderr, "fig1 k=%d: dim %d, mean KS %.4f, mean m4 %.4f -> %s.json\n", k,
                 rep.dimension, rep.ks_raw_mean, m4, stem.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"band/block random matrix simulation and limit-law prediction"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "sample replicas, solve spectra, emit a report");
  simulate->add_option("--config", sim.config_path, "JSON config file");
  simulate->add_option("--seed", sim.seed, "64-bit seed (overrides config)")
      ->each([&](const std::string&) { sim.seed_set = true; });
  simulate->add_option("--n", sim.n, "dimension (overrides config)");
  simulate->add_option("--replicas", sim.replicas, "replica count (overrides config)");
  simulate->add_option("--threads", sim.threads, "worker threads (default: BANDLAW_THREADS or all)");
  simulate->add_option("--out", sim.out, "output path for the JSON report (default stdout)");
  simulate->add_flag("--emit-eigenvalues", sim.emit_eigenvalues,
                     "also write <out>.eigenvalues.csv");
  simulate->add_option("--emit-hist", sim.hist, "also write <out>.hist.csv, e.g. bins=80");

  std::string predict_w = "uniform";
  int predict_kmax = 8, predict_grid = limitlaw::kDefaultGridSize;
  std::string predict_out;
  auto* predict = app.add_subcommand("predict", "limit moments and SCL verdict for a weight");
  predict->add_option("--w", predict_w, "weight shorthand, e.g. indicator:0,0.5 or uniform");
  predict->add_option("--kmax", predict_kmax, "highest moment order (even, <= 8)");
  predict->add_option("--grid-m", predict_grid, "quadrature nodes");
  predict->add_option("--out", predict_out, "output path (default stdout)");

  std::string scl_w = "uniform";
  double scl_tol = experiment::kDefaultSclTol;
  int scl_grid = limitlaw::kDefaultGridSize;
  auto* check_scl = app.add_subcommand("check-scl", "semicircle characterization for a weight");
  check_scl->add_option("--w", scl_w, "weight shorthand");
  check_scl->add_option("--tol", scl_tol, "verdict tolerance");
  check_scl->add_option("--grid-m", scl_grid, "quadrature nodes");

  std::string rel_kind = "trivial";
  int rel_k = 2, rel_block_n = 10;
  auto* verify = app.add_subcommand("verify-conditions",
                                    "exact brute-force counts for the relation conditions");
  verify->add_option("--relation", rel_kind, "trivial|toeplitz|hankel|homogeneous");
  verify->add_option("--k", rel_k, "block count parameter");
  verify->add_option("--block-n", rel_block_n, "per-block dimension");

  auto* oracle = app.add_subcommand("oracle", "finite-n oracles");
  std::string ojw_pairs = "1:2,3:4", ojw_w = "uniform", ojw_mode = "exact";
  int ojw_n = 100, ojw_grid = limitlaw::kDefaultGridSize;
  std::int64_t ojw_samples = 1000000;
  std::uint64_t ojw_seed = 1;
  auto* ojw = oracle->add_subcommand("jw", "finite-n backtracking-tree sum vs kernel value");
  ojw->add_option("--pairs", ojw_pairs, "pair partition, 1-based, e.g. 1:2,3:4");
  ojw->add_option("--w", ojw_w, "weight shorthand");
  ojw->add_option("--n", ojw_n, "index range");
  ojw->add_option("--mode", ojw_mode, "exact|mc");
  ojw->add_option("--samples", ojw_samples, "Monte Carlo samples");
  ojw->add_option("--seed", ojw_seed, "Monte Carlo seed");
  ojw->add_option("--grid-m", ojw_grid, "quadrature nodes for the kernel value");
  oracle->require_subcommand(1);

  int fig1_block_n = 500, fig1_replicas = 10, fig1_threads = 0;
  std::uint64_t fig1_seed = 1;
  std::string fig1_out_dir = ".";
  auto* repro = app.add_subcommand("repro", "rebuild reported experiments");
  auto* fig1 = repro->add_subcommand("fig1", "homogeneous blocks, k = 2,3,4, Rademacher");
  fig1->add_option("--block-n", fig1_block_n, "per-block dimension");
  fig1->add_option("--replicas", fig1_replicas, "replica count");
  fig1->add_option("--seed", fig1_seed, "seed");
  fig1->add_option("--threads", fig1_threads, "worker threads");
  fig1->add_option("--out-dir", fig1_out_dir, "output directory");
  repro->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (predict->parsed()) {
      const auto w = experiment::WeightSpec::parse_shorthand(predict_w);
      const auto rep = experiment::predict(w, predict_kmax, predict_grid);
      write_output(predict_out, experiment::predict_to_json_text(w, rep));
      return 0;
    }
    if (check_scl->parsed()) {
      const auto w = experiment::WeightSpec::parse_shorthand(scl_w);
      const auto rep = limitlaw::is_semicircle(w.build(), limitlaw::QuadGrid{scl_grid}, scl_tol);
      std::printf(
          "{\n  \"schema\": 1,\n  \"verdict\": %s,\n  \"max_asymmetry\": %.17g,\n"
          "  \"phi_range\": %.17g,\n  \"tol\": %.17g\n}\n",
          rep.verdict ? "true" : "false", rep.max_asymmetry, rep.phi_range, scl_tol);
      return 0;
    }
    if (verify->parsed()) {
      structure::RelationKind kind;
      if (rel_kind == "trivial")
        kind = structure::RelationKind::trivial;
      else if (rel_kind == "toeplitz")
        kind = structure::RelationKind::toeplitz_block;
      else if (rel_kind == "hankel")
        kind = structure::RelationKind::hankel_block;
      else if (rel_kind == "homogeneous")
        kind = structure::RelationKind::homogeneous_block;
      else
        throw ConfigError("relation: unknown kind '" + rel_kind + "'");
      const auto rel = structure::make_equivalence(kind, rel_k, rel_block_n);
      const auto rep = structure::verify_conditions(rel);
      std::printf(
          "{\n  \"schema\": 1,\n  \"relation\": \"%s\",\n  \"k\": %d,\n  \"block_n\": %d,\n"
          "  \"n\": %d,\n  \"e1_max\": %lld,\n  \"e2_max\": %lld,\n  \"e3_count\": %lld\n}\n",
          rel_kind.c_str(), rel_k, rel_block_n, rel.n(),
          static_cast<long long>(rep.e1_max), static_cast<long long>(rep.e2_max),
          static_cast<long long>(rep.e3_count));
      return 0;
    }
    if (ojw->parsed()) {
      const auto pp = parse_pairs(ojw_pairs);
      const auto w = experiment::WeightSpec::parse_shorthand(ojw_w).build();
      double finite;
      if (ojw_mode == "exact") {
        finite = limitlaw::jw_finite_n_exact(pp, w, ojw_n);
      } else if (ojw_mode == "mc") {
        ensembles::RngStream rng(ojw_seed, 0);
        finite = limitlaw::jw_finite_n_mc(pp, w, ojw_n, ojw_samples, rng);
      } else {
        throw ConfigError("mode: expected exact or mc, got '" + ojw_mode + "'");
      }
      const double kernel = limitlaw::jw(pp, w, limitlaw::QuadGrid{ojw_grid});
      std::printf(
          "{\n  \"schema\": 1,\n  \"pairs\": \"%s\",\n  \"n\": %d,\n  \"mode\": \"%s\",\n"
          "  \"finite_n\": %.17g,\n  \"kernel\": %.17g,\n  \"abs_diff\": %.17g\n}\n",
          pp.to_string().c_str(), ojw_n, ojw_mode.c_str(), finite, kernel,
          std::abs(finite - kernel));
      return 0;
    }
    if (fig1->parsed())
      return run_repro_fig1(fig1_block_n, fig1_replicas, fig1_seed, fig1_threads, fig1_out_dir);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
