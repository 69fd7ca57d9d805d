#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandlaw/limitlaw.hpp"
#include "bandlaw/structure.hpp"

namespace bandlaw::experiment {

// Default tolerance for the semicircle verdict; well above grid noise
// (jump_count/grid_m) and well below any genuine asymmetry of an indicator
// weight.
inline constexpr double kDefaultSclTol = 0.05;

// Serializable description of a weight function.
struct WeightSpec {
  enum class Kind { constant, indicator_union, piecewise_constant, tabulated };
  Kind kind = Kind::constant;
  double value = 1.0;                                // constant
  std::vector<std::pair<double, double>> intervals;  // indicator_union
  std::vector<double> breakpoints, values;           // piecewise_constant / tabulated

  structure::WeightFunction build() const;
  // Shorthand: "uniform" | "constant:C" | "indicator:a,b;c,d;..." |
  // "piecewise:b0,b1,...,bp|v1,...,vp"
  static WeightSpec parse_shorthand(const std::string& text);
};

struct EnsembleConfig {
  enum class Kind { rademacher, gaussian, curie_weiss, au_gaussian };
  Kind kind = Kind::rademacher;
  double beta = 0.5;  // curie_weiss
  double rho = 0.0;   // au_gaussian
};

struct StructureConfig {
  enum class Kind { full, periodic_band, nonperiodic_band, weighted, block };
  Kind kind = Kind::full;
  // bands take exactly one of: halfwidth, exponent (h = ceil(n^delta)),
  // ratio (h = ceil(rho n))
  std::optional<int> halfwidth;
  std::optional<double> exponent;
  std::optional<double> ratio;
  std::optional<WeightSpec> weight;  // weighted
  structure::BlockKind block_kind = structure::BlockKind::homogeneous;
  int block_k = 2;  // block
};

struct ExperimentConfig {
  EnsembleConfig ensemble;
  StructureConfig structure;
  int n = 100;  // block structures read this as the per-block dimension
  int replicas = 1;
  std::uint64_t seed = 1;
  int kmax = 8;  // even, <= 8
  int grid_m = limitlaw::kDefaultGridSize;

  void validate() const;  // throws ConfigError naming the field
  int resolved_halfwidth() const;
  int matrix_dimension() const;  // block structures: grid * n
};

// JSON round-trip for config files; unknown keys are rejected with their
// path. CLI flags override file keys before validate().
ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& cfg);

struct MomentRow {
  int k = 0;
  double mean = 0.0, se = 0.0;
};

struct ExperimentReport {
  int replicas = 0;
  int dimension = 0;
  std::vector<MomentRow> moments;  // raw ESD moments, k = 1..kmax
  double ks_raw_mean = 0.0, ks_raw_se = 0.0;

  // Weight-model section: present for full / weighted / ratio-band / block
  // structures. Bands given a ratio are matched against their weighted model
  // after rescaling the eigenvalues by sqrt(b_n/n).
  bool has_model = false;
  WeightSpec model_weight;
  double model_scale = 1.0;
  // phi0 is int phi on the report grid (the value used to normalize, so the
  // constant-phi case recovers Catalan numbers exactly); phi0_dual is the
  // 2 int (1-x) w^2 route, reported as a cross-check.
  double phi0 = 0.0;
  double phi0_dual = 0.0;
  std::vector<MomentRow> model_moments;            // of scaled eigenvalues, even k
  std::vector<double> model_normalized;            // mean / phi0^(k/2)
  std::vector<double> predicted_raw;               // limit moments, even k
  std::vector<double> predicted_normalized;        // / phi0^(k/2)
  double ks_model_mean = 0.0, ks_model_se = 0.0;   // vs semicircle after /sqrt(phi0)
  limitlaw::SclReport scl;

  std::vector<std::vector<double>> replica_eigenvalues;  // ascending, per replica
};

// Deterministic given (config, seed): replica r draws from stream r, and
// aggregation runs in replica order regardless of the thread count.
ExperimentReport run_experiment(const ExperimentConfig& cfg, int threads);

// Rendered outputs. The JSON report is byte-deterministic (no timings).
std::string report_to_json_text(const ExperimentConfig& cfg, const ExperimentReport& rep);
std::string eigenvalues_to_csv(const ExperimentReport& rep);
std::string histogram_to_csv(const ExperimentReport& rep, int bins);

struct PredictRow {
  int k = 0;
  double raw = 0.0, normalized = 0.0, catalan = 0.0;
};
struct PredictReport {
  int grid_m = 0;
  double phi0 = 0.0;       // int phi on the grid; normalization base
  double phi0_dual = 0.0;  // 2 int (1-x) w^2 cross-check
  std::vector<PredictRow> rows;  // even k <= kmax
  limitlaw::SclReport scl;
  double scl_tol = kDefaultSclTol;
};
PredictReport predict(const WeightSpec& w, int kmax, int grid_m,
                      double scl_tol = kDefaultSclTol);
std::string predict_to_json_text(const WeightSpec& w, const PredictReport& rep);

// --threads, then BANDLAW_THREADS, then hardware concurrency.
int resolve_threads(int cli_threads);

}  // namespace bandlaw::experiment
