#include "bandlaw/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "bandlaw/errors.hpp"
#include "bandlaw/spectra.hpp"

namespace bandlaw::experiment {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

std::vector<double> split_doubles(const std::string& s, char sep) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t next = s.find(sep, pos);
    if (next == std::string::npos) next = s.size();
    const std::string tok = s.substr(pos, next - pos);
    if (!tok.empty()) out.push_back(std::stod(tok));
    pos = next + 1;
    if (next == s.size()) break;
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

structure::WeightFunction WeightSpec::build() const {
  switch (kind) {
    case Kind::constant:
      return structure::WeightFunction::constant(value);
    case Kind::indicator_union:
      return structure::WeightFunction::indicator_union(intervals);
    case Kind::piecewise_constant:
      return structure::WeightFunction::piecewise_constant(breakpoints, values);
    case Kind::tabulated:
      return structure::WeightFunction::tabulated(values);
  }
  throw ConfigError("w.kind: unknown weight kind");
}

WeightSpec WeightSpec::parse_shorthand(const std::string& text) {
  WeightSpec w;
  if (text == "uniform" || text == "constant" || text.empty()) {
    w.kind = Kind::constant;
    w.value = 1.0;
    return w;
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "constant") {
    w.kind = Kind::constant;
    w.value = body.empty() ? 1.0 : std::stod(body);
    return w;
  }
  if (head == "indicator") {
    w.kind = Kind::indicator_union;
    size_t pos = 0;
    while (pos < body.size()) {
      size_t next = body.find(';', pos);
      if (next == std::string::npos) next = body.size();
      const auto ends = split_doubles(body.substr(pos, next - pos), ',');
      if (ends.size() != 2)
        config_fail("w", "indicator interval needs two endpoints, got '" + body + "'");
      w.intervals.emplace_back(ends[0], ends[1]);
      pos = next + 1;
    }
    return w;
  }
  if (head == "piecewise") {
    const auto bar = body.find('|');
    if (bar == std::string::npos)
      config_fail("w", "piecewise shorthand is 'piecewise:b0,..,bp|v1,..,vp'");
    w.kind = Kind::piecewise_constant;
    w.breakpoints = split_doubles(body.substr(0, bar), ',');
    w.values = split_doubles(body.substr(bar + 1), ',');
    return w;
  }
  config_fail("w", "unknown weight shorthand '" + text + "'");
}

void ExperimentConfig::validate() const {
  if (n < 1) config_fail("n", "must be >= 1");
  if (replicas < 1) config_fail("replicas", "must be >= 1");
  if (kmax < 2 || kmax > 8 || kmax % 2 != 0) config_fail("kmax", "must be even and in [2, 8]");
  if (grid_m < 64) config_fail("grid_m", "must be >= 64");
  switch (ensemble.kind) {
    case EnsembleConfig::Kind::curie_weiss:
      if (!(ensemble.beta > 0.0 && ensemble.beta <= 1.0))
        config_fail("ensemble.beta", "must be in (0, 1]");
      break;
    case EnsembleConfig::Kind::au_gaussian:
      if (!(ensemble.rho >= 0.0 && ensemble.rho <= 1.0))
        config_fail("ensemble.rho", "must be in [0, 1]");
      break;
    default:
      break;
  }
  const auto& st = structure;
  const bool is_band = st.kind == StructureConfig::Kind::periodic_band ||
                       st.kind == StructureConfig::Kind::nonperiodic_band;
  if (is_band) {
    const int given = (st.halfwidth ? 1 : 0) + (st.exponent ? 1 : 0) + (st.ratio ? 1 : 0);
    if (given != 1)
      config_fail("structure", "bands take exactly one of halfwidth, exponent, ratio");
    if (st.halfwidth && (*st.halfwidth < 1 || *st.halfwidth > n))
      config_fail("structure.halfwidth", "must be in [1, n]");
    if (st.exponent && !(*st.exponent > 0.0 && *st.exponent <= 1.0))
      config_fail("structure.exponent", "must be in (0, 1]");
    if (st.ratio && !(*st.ratio > 0.0 && *st.ratio < 1.0))
      config_fail("structure.ratio", "must be in (0, 1)");
  }
  if (st.kind == StructureConfig::Kind::weighted) {
    if (!st.weight) config_fail("structure.w", "weighted structure needs a weight spec");
    st.weight->build();  // surfaces interval/breakpoint errors
  }
  if (st.kind == StructureConfig::Kind::block) {
    if (st.block_k < 1) config_fail("structure.k", "must be >= 1");
    if (st.block_kind == structure::BlockKind::hankel && st.block_k % 2 == 0)
      config_fail("structure.k", "hankel blocks need odd k");
  }
}

int ExperimentConfig::resolved_halfwidth() const {
  const auto& st = structure;
  if (st.halfwidth) return *st.halfwidth;
  int h = 0;
  if (st.exponent)
    h = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), *st.exponent)));
  else if (st.ratio)
    h = static_cast<int>(std::ceil(*st.ratio * n));
  else
    config_fail("structure", "band structure without halfwidth, exponent, or ratio");
  return std::min(std::max(h, 1), n);
}

int ExperimentConfig::matrix_dimension() const {
  if (structure.kind != StructureConfig::Kind::block) return n;
  const int grid = structure.block_kind == structure::BlockKind::hankel
                       ? (structure.block_k + 1) / 2
                       : structure.block_k;
  return grid * n;
}

namespace {

json weight_to_json(const WeightSpec& w) {
  json j;
  switch (w.kind) {
    case WeightSpec::Kind::constant:
      j["kind"] = "constant";
      j["value"] = w.value;
      break;
    case WeightSpec::Kind::indicator_union: {
      j["kind"] = "indicator_union";
      json iv = json::array();
      for (auto [lo, hi] : w.intervals) iv.push_back(json::array({lo, hi}));
      j["intervals"] = iv;
      break;
    }
    case WeightSpec::Kind::piecewise_constant:
      j["kind"] = "piecewise_constant";
      j["breakpoints"] = w.breakpoints;
      j["values"] = w.values;
      break;
    case WeightSpec::Kind::tabulated:
      j["kind"] = "tabulated";
      j["values"] = w.values;
      break;
  }
  return j;
}

WeightSpec weight_from_json(const json& j, const std::string& path) {
  WeightSpec w;
  if (!j.is_object() || !j.contains("kind")) config_fail(path, "weight spec needs a kind");
  const std::string kind = j.at("kind");
  if (kind == "constant") {
    w.kind = WeightSpec::Kind::constant;
    w.value = j.value("value", 1.0);
  } else if (kind == "indicator_union") {
    w.kind = WeightSpec::Kind::indicator_union;
    if (!j.contains("intervals")) config_fail(path + ".intervals", "required");
    for (const auto& iv : j.at("intervals")) {
      if (!iv.is_array() || iv.size() != 2) config_fail(path + ".intervals", "need [lo, hi] pairs");
      w.intervals.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
  } else if (kind == "piecewise_constant") {
    w.kind = WeightSpec::Kind::piecewise_constant;
    w.breakpoints = j.value("breakpoints", std::vector<double>{});
    w.values = j.value("values", std::vector<double>{});
  } else if (kind == "tabulated") {
    w.kind = WeightSpec::Kind::tabulated;
    w.values = j.value("values", std::vector<double>{});
  } else {
    config_fail(path + ".kind", "unknown weight kind '" + kind + "'");
  }
  return w;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  if (j.contains("ensemble")) {
    const auto& e = j.at("ensemble");
    const std::string kind = e.is_string() ? e.get<std::string>() : e.value("kind", "rademacher");
    if (kind == "rademacher")
      cfg.ensemble.kind = EnsembleConfig::Kind::rademacher;
    else if (kind == "gaussian")
      cfg.ensemble.kind = EnsembleConfig::Kind::gaussian;
    else if (kind == "curie_weiss")
      cfg.ensemble.kind = EnsembleConfig::Kind::curie_weiss;
    else if (kind == "au_gaussian")
      cfg.ensemble.kind = EnsembleConfig::Kind::au_gaussian;
    else
      config_fail("ensemble.kind", "unknown ensemble '" + kind + "'");
    if (e.is_object()) {
      cfg.ensemble.beta = e.value("beta", cfg.ensemble.beta);
      cfg.ensemble.rho = e.value("rho", cfg.ensemble.rho);
    }
  }
  if (j.contains("structure")) {
    const auto& s = j.at("structure");
    const std::string kind = s.is_string() ? s.get<std::string>() : s.value("kind", "full");
    if (kind == "full")
      cfg.structure.kind = StructureConfig::Kind::full;
    else if (kind == "periodic_band")
      cfg.structure.kind = StructureConfig::Kind::periodic_band;
    else if (kind == "nonperiodic_band")
      cfg.structure.kind = StructureConfig::Kind::nonperiodic_band;
    else if (kind == "weighted")
      cfg.structure.kind = StructureConfig::Kind::weighted;
    else if (kind == "block")
      cfg.structure.kind = StructureConfig::Kind::block;
    else
      config_fail("structure.kind", "unknown structure '" + kind + "'");
    if (s.is_object()) {
      if (s.contains("halfwidth")) cfg.structure.halfwidth = s.at("halfwidth").get<int>();
      if (s.contains("exponent")) cfg.structure.exponent = s.at("exponent").get<double>();
      if (s.contains("ratio")) cfg.structure.ratio = s.at("ratio").get<double>();
      if (s.contains("w")) cfg.structure.weight = weight_from_json(s.at("w"), "structure.w");
      if (s.contains("block_kind")) {
        const std::string bk = s.at("block_kind");
        if (bk == "toeplitz")
          cfg.structure.block_kind = structure::BlockKind::toeplitz;
        else if (bk == "hankel")
          cfg.structure.block_kind = structure::BlockKind::hankel;
        else if (bk == "homogeneous")
          cfg.structure.block_kind = structure::BlockKind::homogeneous;
        else
          config_fail("structure.block_kind", "unknown block kind '" + bk + "'");
      }
      if (s.contains("k")) cfg.structure.block_k = s.at("k").get<int>();
    }
  }
  cfg.n = j.value("n", cfg.n);
  cfg.replicas = j.value("replicas", cfg.replicas);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.kmax = j.value("kmax", cfg.kmax);
  cfg.grid_m = j.value("grid_m", cfg.grid_m);
  return cfg;
}

namespace {

json config_to_json(const ExperimentConfig& cfg) {
  json e;
  switch (cfg.ensemble.kind) {
    case EnsembleConfig::Kind::rademacher:
      e["kind"] = "rademacher";
      break;
    case EnsembleConfig::Kind::gaussian:
      e["kind"] = "gaussian";
      break;
    case EnsembleConfig::Kind::curie_weiss:
      e["kind"] = "curie_weiss";
      e["beta"] = cfg.ensemble.beta;
      break;
    case EnsembleConfig::Kind::au_gaussian:
      e["kind"] = "au_gaussian";
      e["rho"] = cfg.ensemble.rho;
      break;
  }
  json s;
  switch (cfg.structure.kind) {
    case StructureConfig::Kind::full:
      s["kind"] = "full";
      break;
    case StructureConfig::Kind::periodic_band:
      s["kind"] = "periodic_band";
      break;
    case StructureConfig::Kind::nonperiodic_band:
      s["kind"] = "nonperiodic_band";
      break;
    case StructureConfig::Kind::weighted:
      s["kind"] = "weighted";
      break;
    case StructureConfig::Kind::block:
      s["kind"] = "block";
      break;
  }
  if (cfg.structure.halfwidth) s["halfwidth"] = *cfg.structure.halfwidth;
  if (cfg.structure.exponent) s["exponent"] = *cfg.structure.exponent;
  if (cfg.structure.ratio) s["ratio"] = *cfg.structure.ratio;
  if (cfg.structure.weight) s["w"] = weight_to_json(*cfg.structure.weight);
  if (cfg.structure.kind == StructureConfig::Kind::block) {
    s["block_kind"] = cfg.structure.block_kind == structure::BlockKind::toeplitz ? "toeplitz"
                      : cfg.structure.block_kind == structure::BlockKind::hankel ? "hankel"
                                                                                 : "homogeneous";
    s["k"] = cfg.structure.block_k;
  }
  json j;
  j["ensemble"] = e;
  j["structure"] = s;
  j["n"] = cfg.n;
  j["replicas"] = cfg.replicas;
  j["seed"] = cfg.seed;
  j["kmax"] = cfg.kmax;
  j["grid_m"] = cfg.grid_m;
  return j;
}

ensembles::EnsembleSample sample_ensemble(const EnsembleConfig& ens, int n,
                                          ensembles::RngStream& rng) {
  switch (ens.kind) {
    case EnsembleConfig::Kind::rademacher:
      return ensembles::sample_iid(ensembles::IidDist::rademacher, n, rng);
    case EnsembleConfig::Kind::gaussian:
      return ensembles::sample_iid(ensembles::IidDist::std_gaussian, n, rng);
    case EnsembleConfig::Kind::curie_weiss:
      return ensembles::curie_weiss_scheme(ens.beta, n, rng);
    case EnsembleConfig::Kind::au_gaussian:
      return ensembles::sample_au_gaussian(n, ens.rho, rng);
  }
  throw ConfigError("ensemble.kind: unknown ensemble");
}

// Flat family draw for block structures: one approximately uncorrelated
// family covers all blocks, filled in documented order (symmetric blocks by
// upper triangle row-major, full blocks row-major).
std::vector<Matrix> sample_blocks(const ExperimentConfig& cfg, ensembles::RngStream& rng) {
  const int bn = cfg.n;
  const int k = cfg.structure.block_k;
  const auto kind = cfg.structure.block_kind;
  const std::int64_t sym_count = static_cast<std::int64_t>(bn) * (bn + 1) / 2;
  const std::int64_t full_count = static_cast<std::int64_t>(bn) * bn;

  std::vector<bool> symmetric;
  switch (kind) {
    case structure::BlockKind::homogeneous:
      symmetric = {true, false};  // {A, B}
      break;
    case structure::BlockKind::toeplitz:
      symmetric.assign(k, false);
      symmetric[0] = true;
      break;
    case structure::BlockKind::hankel:
      symmetric.assign(k, false);
      for (int i = 0; i < k; i += 2) symmetric[i] = true;
      break;
  }
  std::int64_t total = 0;
  for (bool s : symmetric) total += s ? sym_count : full_count;

  std::vector<double> flat;
  switch (cfg.ensemble.kind) {
    case EnsembleConfig::Kind::rademacher:
      flat = ensembles::sample_iid_values(ensembles::IidDist::rademacher, total, rng);
      break;
    case EnsembleConfig::Kind::gaussian:
      flat = ensembles::sample_iid_values(ensembles::IidDist::std_gaussian, total, rng);
      break;
    case EnsembleConfig::Kind::curie_weiss:
      flat = ensembles::CurieWeissSampler(cfg.ensemble.beta, total).sample(rng);
      break;
    case EnsembleConfig::Kind::au_gaussian:
      flat = ensembles::sample_au_gaussian_values(total, cfg.ensemble.rho,
                                                  cfg.matrix_dimension(), rng);
      break;
  }

  std::vector<Matrix> blocks;
  std::size_t idx = 0;
  for (bool sym : symmetric) {
    Matrix b(bn, bn);
    if (sym) {
      for (int i = 0; i < bn; ++i)
        for (int j = i; j < bn; ++j) b.set_symmetric(i, j, flat[idx++]);
    } else {
      for (int i = 0; i < bn; ++i)
        for (int j = 0; j < bn; ++j) b(i, j) = flat[idx++];
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

structure::StructuredMatrix build_replica_matrix(const ExperimentConfig& cfg,
                                                 std::uint64_t replica) {
  ensembles::RngStream rng(cfg.seed, replica);
  switch (cfg.structure.kind) {
    case StructureConfig::Kind::full: {
      const auto s = sample_ensemble(cfg.ensemble, cfg.n, rng);
      auto m = structure::build_weighted(s, structure::WeightFunction::constant(1.0));
      m.provenance = "full";
      return m;
    }
    case StructureConfig::Kind::periodic_band: {
      const auto s = sample_ensemble(cfg.ensemble, cfg.n, rng);
      return structure::build_periodic_band(
          s, structure::BandSpec::periodic_band(cfg.n, cfg.resolved_halfwidth()));
    }
    case StructureConfig::Kind::nonperiodic_band: {
      const auto s = sample_ensemble(cfg.ensemble, cfg.n, rng);
      return structure::build_nonperiodic_band(
          s, structure::BandSpec::nonperiodic_band(cfg.n, cfg.resolved_halfwidth()));
    }
    case StructureConfig::Kind::weighted: {
      const auto s = sample_ensemble(cfg.ensemble, cfg.n, rng);
      return structure::build_weighted(s, cfg.structure.weight->build());
    }
    case StructureConfig::Kind::block: {
      const auto blocks = sample_blocks(cfg, rng);
      return structure::build_block_matrix(cfg.structure.block_kind, blocks,
                                           cfg.structure.block_k);
    }
  }
  throw ConfigError("structure.kind: unknown structure");
}

// Weighted model matching the structure, when one applies.
std::optional<WeightSpec> model_weight_for(const ExperimentConfig& cfg) {
  WeightSpec w;
  switch (cfg.structure.kind) {
    case StructureConfig::Kind::full:
    case StructureConfig::Kind::block:
      w.kind = WeightSpec::Kind::constant;
      w.value = 1.0;
      return w;
    case StructureConfig::Kind::weighted:
      return cfg.structure.weight;
    case StructureConfig::Kind::periodic_band:
      if (!cfg.structure.ratio) return std::nullopt;
      w.kind = WeightSpec::Kind::indicator_union;
      w.intervals = {{0.0, *cfg.structure.ratio}, {1.0 - *cfg.structure.ratio, 1.0}};
      return w;
    case StructureConfig::Kind::nonperiodic_band:
      if (!cfg.structure.ratio) return std::nullopt;
      w.kind = WeightSpec::Kind::indicator_union;
      w.intervals = {{0.0, *cfg.structure.ratio}};
      return w;
  }
  return std::nullopt;
}

void mean_se(const std::vector<double>& xs, double& mean, double& se) {
  const int r = static_cast<int>(xs.size());
  double s = 0.0;
  for (double x : xs) s += x;
  mean = s / r;
  if (r < 2) {
    se = 0.0;
    return;
  }
  double v = 0.0;
  for (double x : xs) v += (x - mean) * (x - mean);
  se = std::sqrt(v / (r - 1) / r);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const int replicas = cfg.replicas;
  ExperimentReport rep;
  rep.replicas = replicas;
  rep.dimension = cfg.matrix_dimension();
  rep.replica_eigenvalues.assign(replicas, {});

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= replicas) return;
      try {
        const auto m = build_replica_matrix(cfg, static_cast<std::uint64_t>(i));
        rep.replica_eigenvalues[i] = spectra::symmetric_eigenvalues(m.values);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int t = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  const int dim = rep.dimension;
  auto moment_of = [&](const std::vector<double>& eig, int k, double scale) {
    double s = 0.0;
    for (double l : eig) {
      double p = 1.0;
      for (int i = 0; i < k; ++i) p *= l * scale;
      s += p;
    }
    return s / dim;
  };

  for (int k = 1; k <= cfg.kmax; ++k) {
    std::vector<double> per_rep(replicas);
    for (int r = 0; r < replicas; ++r)
      per_rep[r] = moment_of(rep.replica_eigenvalues[r], k, 1.0);
    MomentRow row;
    row.k = k;
    mean_se(per_rep, row.mean, row.se);
    rep.moments.push_back(row);
  }
  {
    std::vector<double> per_rep(replicas);
    for (int r = 0; r < replicas; ++r) {
      spectra::SpectralResult sr{dim, rep.replica_eigenvalues[r], ""};
      per_rep[r] = spectra::ks_distance(sr, spectra::semicircle_cdf);
    }
    mean_se(per_rep, rep.ks_raw_mean, rep.ks_raw_se);
  }

  const auto model_w = model_weight_for(cfg);
  if (model_w) {
    rep.has_model = true;
    rep.model_weight = *model_w;
    const auto w = model_w->build();
    const limitlaw::QuadGrid grid{cfg.grid_m};
    rep.phi0 = limitlaw::integrate_phi(w, grid);
    rep.phi0_dual = limitlaw::phi0(w, grid);
    rep.scl = limitlaw::is_semicircle(w, grid, kDefaultSclTol);

    double scale = 1.0;
    if ((cfg.structure.kind == StructureConfig::Kind::periodic_band ||
         cfg.structure.kind == StructureConfig::Kind::nonperiodic_band) &&
        cfg.structure.ratio) {
      const int b = structure::BandSpec{cfg.n, cfg.resolved_halfwidth(), true}.bandwidth();
      scale = std::sqrt(static_cast<double>(b) / cfg.n);
    }
    rep.model_scale = scale;

    limitlaw::Kernel kernel(w, grid);
    const bool normalizable = rep.phi0 > 1e-12;
    for (int k = 2; k <= cfg.kmax; k += 2) {
      std::vector<double> per_rep(replicas);
      for (int r = 0; r < replicas; ++r)
        per_rep[r] = moment_of(rep.replica_eigenvalues[r], k, scale);
      MomentRow row;
      row.k = k;
      mean_se(per_rep, row.mean, row.se);
      rep.model_moments.push_back(row);
      const double predicted = kernel.limit_moment(k);
      rep.predicted_raw.push_back(predicted);
      const double denom = normalizable ? std::pow(rep.phi0, k / 2.0) : 1.0;
      rep.model_normalized.push_back(normalizable ? row.mean / denom : 0.0);
      rep.predicted_normalized.push_back(normalizable ? predicted / denom : 0.0);
    }
    if (normalizable) {
      const double root = std::sqrt(rep.phi0);
      std::vector<double> per_rep(replicas);
      for (int r = 0; r < replicas; ++r) {
        std::vector<double> scaled = rep.replica_eigenvalues[r];
        for (double& l : scaled) l *= scale / root;
        spectra::SpectralResult sr{dim, std::move(scaled), ""};
        per_rep[r] = spectra::ks_distance(sr, spectra::semicircle_cdf);
      }
      mean_se(per_rep, rep.ks_model_mean, rep.ks_model_se);
    }
  }
  return rep;
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  return config_to_json(cfg).dump(2) + "\n";
}

std::string report_to_json_text(const ExperimentConfig& cfg, const ExperimentReport& rep) {
  json j;
  j["schema"] = 1;
  j["config"] = config_to_json(cfg);
  j["dimension"] = rep.dimension;
  j["replicas"] = rep.replicas;
  json moments = json::array();
  for (const auto& row : rep.moments) {
    json r;
    r["k"] = row.k;
    r["mean"] = row.mean;
    r["se"] = row.se;
    moments.push_back(r);
  }
  j["moments"] = moments;
  j["ks_semicircle"] = {{"mean", rep.ks_raw_mean}, {"se", rep.ks_raw_se}};
  if (rep.has_model) {
    json m;
    m["weight"] = weight_to_json(rep.model_weight);
    m["phi0"] = rep.phi0;
    m["phi0_dual"] = rep.phi0_dual;
    m["scale"] = rep.model_scale;
    json rows = json::array();
    for (size_t i = 0; i < rep.model_moments.size(); ++i) {
      json r;
      r["k"] = rep.model_moments[i].k;
      r["mean"] = rep.model_moments[i].mean;
      r["se"] = rep.model_moments[i].se;
      r["normalized"] = rep.model_normalized[i];
      r["predicted"] = rep.predicted_raw[i];
      r["predicted_normalized"] = rep.predicted_normalized[i];
      r["catalan"] = spectra::semicircle_moment(rep.model_moments[i].k);
      rows.push_back(r);
    }
    m["moments"] = rows;
    m["ks_semicircle"] = {{"mean", rep.ks_model_mean}, {"se", rep.ks_model_se}};
    m["scl"] = {{"verdict", rep.scl.verdict},
                {"max_asymmetry", rep.scl.max_asymmetry},
                {"phi_range", rep.scl.phi_range},
                {"tol", kDefaultSclTol}};
    j["model"] = m;
  }
  return j.dump(2) + "\n";
}

std::string eigenvalues_to_csv(const ExperimentReport& rep) {
  std::string out = "replica,index,eigenvalue\n";
  for (size_t r = 0; r < rep.replica_eigenvalues.size(); ++r)
    for (size_t i = 0; i < rep.replica_eigenvalues[r].size(); ++i)
      out += std::to_string(r) + "," + std::to_string(i) + "," +
             format_double(rep.replica_eigenvalues[r][i]) + "\n";
  return out;
}

std::string histogram_to_csv(const ExperimentReport& rep, int bins) {
  if (bins < 1) throw ConfigError("emit-hist: bins must be >= 1");
  double lo = 1e300, hi = -1e300;
  std::int64_t total = 0;
  for (const auto& eig : rep.replica_eigenvalues)
    for (double l : eig) {
      lo = std::min(lo, l);
      hi = std::max(hi, l);
      ++total;
    }
  if (total == 0) return "bin_lo,bin_hi,count\n";
  if (hi <= lo) hi = lo + 1.0;
  std::vector<std::int64_t> counts(bins, 0);
  const double width = (hi - lo) / bins;
  for (const auto& eig : rep.replica_eigenvalues)
    for (double l : eig) {
      int b = static_cast<int>((l - lo) / width);
      b = std::min(std::max(b, 0), bins - 1);
      ++counts[b];
    }
  std::string out = "bin_lo,bin_hi,count\n";
  for (int b = 0; b < bins; ++b)
    out += format_double(lo + b * width) + "," + format_double(lo + (b + 1) * width) + "," +
           std::to_string(counts[b]) + "\n";
  return out;
}

PredictReport predict(const WeightSpec& w, int kmax, int grid_m, double scl_tol) {
  if (kmax < 2 || kmax % 2 != 0 || kmax > 8) config_fail("kmax", "must be even and in [2, 8]");
  if (grid_m < 64) config_fail("grid_m", "must be >= 64");
  const auto wf = w.build();
  const limitlaw::QuadGrid grid{grid_m};
  limitlaw::Kernel kernel(wf, grid);
  PredictReport rep;
  rep.grid_m = grid_m;
  rep.phi0 = limitlaw::integrate_phi(wf, grid);
  rep.phi0_dual = limitlaw::phi0(wf, grid);
  rep.scl_tol = scl_tol;
  rep.scl = limitlaw::is_semicircle(wf, grid, scl_tol);
  const bool normalizable = rep.phi0 > 1e-12;
  for (int k = 2; k <= kmax; k += 2) {
    PredictRow row;
    row.k = k;
    row.raw = kernel.limit_moment(k);
    row.normalized = normalizable ? row.raw / std::pow(rep.phi0, k / 2.0) : 0.0;
    row.catalan = spectra::semicircle_moment(k);
    rep.rows.push_back(row);
  }
  return rep;
}

std::string predict_to_json_text(const WeightSpec& w, const PredictReport& rep) {
  json j;
  j["schema"] = 1;
  j["w"] = weight_to_json(w);
  j["grid_m"] = rep.grid_m;
  j["phi0"] = rep.phi0;
  j["phi0_dual"] = rep.phi0_dual;
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["k"] = r.k;
    row["raw"] = r.raw;
    row["normalized"] = r.normalized;
    row["catalan"] = r.catalan;
    rows.push_back(row);
  }
  j["moments"] = rows;
  j["scl"] = {{"verdict", rep.scl.verdict},
              {"max_asymmetry", rep.scl.max_asymmetry},
              {"phi_range", rep.scl.phi_range},
              {"tol", rep.scl_tol}};
  return j.dump(2) + "\n";
}

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("BANDLAW_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace bandlaw::experiment
