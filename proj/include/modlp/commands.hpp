#pragma once

// Batch commands behind the CLI driver: run-configuration loading with
// command-line overrides, a deterministic worker pool, and the five
// report commands emitting CSV/SVG artifacts. Outputs depend on the
// configuration and seed only, never on the thread count: random draws
// are keyed per sweep item and results are merged in item order after
// the pool joins. The acceptance runner builds on these in
// acceptance.hpp.

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "modlp/fock.hpp"
#include "modlp/gns.hpp"
#include "modlp/io.hpp"
#include "modlp/lattice.hpp"
#include "modlp/rng.hpp"

namespace modlp {

struct RunConfig {
  std::string command;
  nlohmann::json params;  // command-specific parameter block
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;
  int threads = 1;
  std::uint64_t config_hash = 0;  // over command, params and seed only
};

struct CliOverrides {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

// The hash excludes the output directory and the thread count, so the
// trailing CSV metadata line matches across reruns that only relocate
// or reparallelize the same sweep.
inline RunConfig make_run_config(std::string command, nlohmann::json params,
                                 std::uint64_t seed, int threads,
                                 std::filesystem::path out_dir) {
  RunConfig cfg;
  cfg.command = std::move(command);
  cfg.params = std::move(params);
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.out_dir = std::move(out_dir);
  if (cfg.threads < 1 || cfg.threads > 256)
    throw parameter_error("threads must lie in [1, 256]");
  nlohmann::json canonical;
  canonical["command"] = cfg.command;
  canonical["params"] = cfg.params;
  canonical["seed"] = cfg.seed;
  cfg.config_hash = fnv1a64(canonical.dump());
  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& config_path,
                                 const CliOverrides& overrides = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw input_error("config " + config_path.string() + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("command") || !j.at("command").is_string())
    throw input_error("config " + config_path.string() + ": missing string field \"command\"");
  std::string command;
  nlohmann::json params;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir;
  try {
    command = j.at("command").get<std::string>();
    params = j.value("params", nlohmann::json::object());
    seed = j.value("seed", std::uint64_t{1});
    threads = j.value("threads", 1);
    out_dir = j.value("out", std::string("out/") + command);
  } catch (const nlohmann::json::exception& e) {
    throw input_error("config " + config_path.string() + ": " + e.what());
  }
  if (!params.is_object())
    throw input_error("config " + config_path.string() + ": params must be an object");
  if (overrides.out_dir) out_dir = *overrides.out_dir;
  if (overrides.seed) seed = *overrides.seed;
  if (overrides.threads) threads = *overrides.threads;
  return make_run_config(std::move(command), std::move(params), seed, threads,
                         std::move(out_dir));
}

// Work-stealing loop over item indices. The body must write results to
// preallocated slots keyed by the index; merge order is then the item
// order regardless of scheduling. The first exception wins, further
// claims stop, and the winner is rethrown after the join.
inline void parallel_for(std::size_t items, int threads,
                         const std::function<void(std::size_t)>& body) {
  if (items == 0) return;
  const std::size_t workers =
      std::min(static_cast<std::size_t>(std::max(threads, 1)), items);
  if (workers <= 1) {
    for (std::size_t i = 0; i < items; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_lock;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= items) return;
        try {
          body(i);
        } catch (...) {
          {
            std::lock_guard<std::mutex> lock(error_lock);
            if (!first_error) first_error = std::current_exception();
          }
          next.store(items);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& params, const char* key) {
  if (!params.is_object() || !params.contains(key))
    throw input_error(std::string("params: missing field \"") + key + "\"");
  return params.at(key);
}

template <class T>
T json_get(const nlohmann::json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string(what) + ": " + e.what());
  }
}

inline Region parse_region(const nlohmann::json& j, const char* what) {
  if (j.is_object() && j.contains("first") && j.contains("last"))
    return Region::interval(json_get<Eigen::Index>(j.at("first"), what),
                            json_get<Eigen::Index>(j.at("last"), what));
  if (j.is_object() && j.contains("sites")) {
    Region r;
    r.sites = json_get<std::vector<Eigen::Index>>(j.at("sites"), what);
    return r;
  }
  throw input_error(std::string(what) + ": region needs first/last or sites");
}

inline LatticeSurface parse_lattice(const nlohmann::json& j) {
  if (!j.is_object()) throw input_error("lattice: expected an object");
  LatticeSurface lat;
  const std::string topo = j.value("topology", std::string("chain"));
  if (topo == "chain")
    lat.topology = Topology::chain;
  else if (topo == "circle")
    lat.topology = Topology::circle;
  else if (topo == "grid2d")
    lat.topology = Topology::grid2d;
  else if (topo == "torus2d")
    lat.topology = Topology::torus2d;
  else
    throw input_error("lattice: unknown topology \"" + topo + "\"");
  lat.sizes = json_get<std::vector<Eigen::Index>>(require_field(j, "sizes"), "lattice.sizes");
  lat.spacing = j.value("spacing", 1.0);
  lat.mass = j.value("mass", 1.0);
  return lat;
}

inline std::vector<std::pair<Region, Region>> parse_region_pairs(const nlohmann::json& params) {
  std::vector<std::pair<Region, Region>> pairs;
  for (const auto& pj : require_field(params, "region_pairs")) {
    pairs.emplace_back(parse_region(require_field(pj, "inner"), "inner"),
                       parse_region(require_field(pj, "outer"), "outer"));
  }
  if (pairs.empty()) throw input_error("region_pairs: need at least one pair");
  return pairs;
}

}  // namespace detail

using ArtifactList = std::vector<std::filesystem::path>;

inline void write_artifact(const RunConfig& cfg, const std::string& name,
                           const std::string& content, ArtifactList& written) {
  ensure_directory(cfg.out_dir);
  const std::filesystem::path path = cfg.out_dir / name;
  write_text_file(path, content);
  written.push_back(path);
}

// Ground-state spectrum plus compressed-defect singular values for each
// configured regular region pair; the decay plot is log-scaled.
inline ArtifactList run_lattice_spectrum(const RunConfig& cfg) {
  const LatticeSurface lat = detail::parse_lattice(detail::require_field(cfg.params, "lattice"));
  const GroundStateData gs = ground_state(lat);
  const auto pairs = detail::parse_region_pairs(cfg.params);

  CsvTable spectrum({"index", "eigenvalue"});
  for (Eigen::Index i = 0; i < gs.a_values.size(); ++i)
    spectrum.add_row({std::to_string(i), format_double(gs.a_values(i))});

  std::vector<DefectReport> reports(pairs.size());
  parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
    reports[i] = compressed_defect(gs, pairs[i].first, pairs[i].second);
  });

  CsvTable decay({"pair", "margin", "k", "singular_value"});
  std::vector<SvgSeries> series;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    SvgSeries s;
    s.label = "pair " + std::to_string(i) + " (margin " + std::to_string(reports[i].margin) + ")";
    for (std::size_t k = 0; k < reports[i].singular_values.size(); ++k) {
      decay.add_row({std::to_string(i), std::to_string(reports[i].margin), std::to_string(k + 1),
                     format_double(reports[i].singular_values[k])});
      s.xs.push_back(static_cast<double>(k + 1));
      s.ys.push_back(reports[i].singular_values[k]);
    }
    series.push_back(std::move(s));
  }

  ArtifactList written;
  write_artifact(cfg, "spectrum.csv", spectrum.render(cfg.config_hash), written);
  write_artifact(cfg, "defect_decay.csv", decay.render(cfg.config_hash), written);
  write_artifact(cfg, "decay.svg",
                 svg_line_plot("compressed defect decay", "k", "singular value", series, true),
                 written);
  return written;
}

// Modular inequality chain for region-localized states: each configured
// pair contributes one restricted state, swept over the (alpha, p) grid.
inline ArtifactList run_modular_decay(const RunConfig& cfg) {
  const LatticeSurface lat = detail::parse_lattice(detail::require_field(cfg.params, "lattice"));
  const GroundStateData gs = ground_state(lat);
  const auto pairs = detail::parse_region_pairs(cfg.params);
  const auto alphas = detail::json_get<std::vector<double>>(
      detail::require_field(cfg.params, "alphas"), "alphas");
  const auto ps =
      detail::json_get<std::vector<double>>(detail::require_field(cfg.params, "ps"), "ps");
  if (alphas.empty() || ps.empty()) throw input_error("alphas and ps grids must be nonempty");

  std::vector<QuasiFreeState> states;
  std::vector<RealMatrix> selectors;
  states.reserve(pairs.size());
  for (const auto& pr : pairs) {
    states.push_back(local_quasifree_state(gs, pr.second));
    selectors.push_back(region_data_selector(pr.second, pr.first));
  }

  struct Job {
    std::size_t pair;
    double alpha, p;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (double a : alphas)
      for (double p : ps) jobs.push_back({i, a, p});

  std::vector<DeltamodReport> results(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    results[i] =
        deltamod_chain(states[jobs[i].pair], selectors[jobs[i].pair], jobs[i].alpha, jobs[i].p);
  });

  CsvTable table({"pair", "alpha", "p", "check", "lhs", "rhs", "constant", "pass"});
  for (std::size_t i = 0; i < jobs.size(); ++i)
    for (const DeltamodRow& row : results[i].rows)
      table.add_row({std::to_string(jobs[i].pair), format_double(jobs[i].alpha),
                     format_double(jobs[i].p), std::string(1, row.check), format_double(row.lhs),
                     format_double(row.rhs), format_double(row.constant), row.pass ? "1" : "0"});

  ArtifactList written;
  write_artifact(cfg, "deltamod_chain.csv", table.render(cfg.config_hash), written);
  return written;
}

// Nuclearity sandwich sweep. The Fermi block draws random standard
// subspaces and one-particle maps per (modes, sample) pair and brackets
// the second-quantized map with the restart oracle; the Bose block
// sweeps scalar one-mode maps on a truncated symmetric Fock space. One
// row per (configuration, p) with the fixed header
// p,lower,upper,oracle,method; the oracle cell is empty when no oracle
// applies.
inline ArtifactList run_fock_sandwich(const RunConfig& cfg) {
  const bool has_fermi = cfg.params.contains("fermi");
  const bool has_bose = cfg.params.contains("bose");
  if (!has_fermi && !has_bose) throw input_error("params: need a fermi or bose block");

  struct Job {
    bool fermi = false;
    Eigen::Index modes = 1;
    int sample = 0;
    double t = 0.0;
    double p = 1.0;
    std::uint64_t stream = 0;  // random draws are keyed by this, not by thread
  };
  std::vector<Job> jobs;
  int restarts = 48;
  Eigen::Index bose_cut = 12;

  if (has_fermi) {
    const auto& f = cfg.params.at("fermi");
    const auto modes = detail::json_get<std::vector<Eigen::Index>>(
        detail::require_field(f, "modes"), "fermi.modes");
    const int samples =
        detail::json_get<int>(detail::require_field(f, "samples"), "fermi.samples");
    const auto pv = detail::json_get<std::vector<double>>(
        detail::require_field(f, "p_values"), "fermi.p_values");
    restarts = f.value("restarts", restarts);
    if (modes.empty() || pv.empty() || samples < 1)
      throw input_error("fermi block: modes, samples and p_values must be nonempty");
    if (restarts < 1) throw parameter_error("fermi block: restarts must be positive");
    std::uint64_t stream = 0;
    for (Eigen::Index n : modes) {
      if (n < 1 || n > 10) throw parameter_error("fermi block: modes must lie in [1, 10]");
      for (int s = 0; s < samples; ++s) {
        ++stream;
        for (double p : pv) {
          Job job;
          job.fermi = true;
          job.modes = n;
          job.sample = s;
          job.p = p;
          job.stream = stream;
          jobs.push_back(job);
        }
      }
    }
  }
  if (has_bose) {
    const auto& b = cfg.params.at("bose");
    const auto ts = detail::json_get<std::vector<double>>(
        detail::require_field(b, "t_values"), "bose.t_values");
    const auto pv = detail::json_get<std::vector<double>>(
        detail::require_field(b, "p_values"), "bose.p_values");
    bose_cut = b.value("max_occupation", bose_cut);
    if (ts.empty() || pv.empty()) throw input_error("bose block: t_values and p_values required");
    for (double t : ts)
      for (double p : pv) {
        Job job;
        job.t = t;
        job.p = p;
        jobs.push_back(job);
      }
  }

  std::vector<std::vector<std::string>> rows(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    if (job.fermi) {
      Rng rng = Rng::stream(cfg.seed, job.stream);
      const StandardSubspace h = random_standard_subspace(rng, job.modes);
      Matrix x1 = rng.complex_gaussian_matrix(static_cast<int>(job.modes),
                                              static_cast<int>(job.modes));
      x1 *= 0.8 / operator_norm(x1);
      const FermiFock fock(job.modes);
      XiBounds xi = xi_sandwich(h, x1, job.p, fock);
      std::vector<Matrix> gens;
      for (Eigen::Index c = 0; c < h.basis.cols(); ++c)
        gens.push_back(fermi_field(Vector(h.basis.col(c)), fock));
      const MatrixAlgebra algebra = MatrixAlgebra::from_generators(fock.dimension(), gens);
      const Matrix x_fock = second_quantize(x1, fock);
      const XiOracle oracle = xi_banach_oracle(algebra, x_fock, job.p, restarts,
                                               cfg.seed + 1000003 * job.stream);
      xi.has_oracle = true;
      xi.oracle = oracle.lp_lower;
      rows[i] = {format_double(job.p), format_double(xi.lower), format_double(xi.upper),
                 format_double(xi.oracle),
                 xi.method + ";n=" + std::to_string(job.modes) +
                     ";sample=" + std::to_string(job.sample)};
    } else {
      const StandardSubspace h(1, Matrix::Ones(1, 1));
      const Matrix x1 = job.t * Matrix::Identity(1, 1);
      const BoseFockTruncation trunc(1, bose_cut);
      const XiBounds xi = xi_sandwich(h, x1, job.p, trunc);
      rows[i] = {format_double(job.p), format_double(xi.lower), format_double(xi.upper),
                 std::string(), xi.method + ";t=" + format_double(job.t, 6)};
    }
  });

  CsvTable table({"p", "lower", "upper", "oracle", "method"});
  for (auto& row : rows) table.add_row(std::move(row));

  ArtifactList written;
  write_artifact(cfg, "xi_bounds.csv", table.render(cfg.config_hash), written);
  return written;
}

// GNS and modular invariant report for one state and algebra: Tomita
// relation residuals, modular spectrum against density ratios where the
// state is faithful on the full algebra, restriction monotonicity and
// random convex mixtures. Rows report value against threshold; failed
// rows indicate a library defect, not bad input.
inline ArtifactList run_gns_verify(const RunConfig& cfg) {
  const nlohmann::json& dj = detail::require_field(cfg.params, "density");
  Matrix density;
  if (dj.is_object() && dj.contains("diagonal")) {
    const auto diag =
        detail::json_get<std::vector<double>>(dj.at("diagonal"), "density.diagonal");
    density = Matrix::Zero(static_cast<Eigen::Index>(diag.size()),
                           static_cast<Eigen::Index>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i)
      density(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  } else {
    density = matrix_from_json(dj);
  }
  const Eigen::Index d = density.rows();
  const std::string algebra_kind = cfg.params.value("algebra", std::string("full"));
  MatrixAlgebra algebra =
      algebra_kind == "diagonal" ? MatrixAlgebra::diagonal(d) : MatrixAlgebra::full(d);
  if (algebra_kind != "full" && algebra_kind != "diagonal")
    throw input_error("algebra: expected \"full\" or \"diagonal\"");
  const std::string sub_kind = cfg.params.value("subalgebra", std::string("diagonal"));
  MatrixAlgebra subalgebra =
      sub_kind == "full" ? MatrixAlgebra::full(d) : MatrixAlgebra::diagonal(d);
  if (sub_kind != "full" && sub_kind != "diagonal")
    throw input_error("subalgebra: expected \"full\" or \"diagonal\"");
  const auto alphas = detail::json_get<std::vector<double>>(
      detail::require_field(cfg.params, "alphas"), "alphas");
  if (alphas.empty()) throw input_error("alphas grid must be nonempty");
  const int mixtures = cfg.params.value("mixtures", 8);

  const AlgebraState state(density);
  const GnsData gns = gns_construct(algebra, state);
  CsvTable table({"check", "detail", "value", "threshold", "pass"});
  const auto push = [&table](const std::string& check, const std::string& detail_text,
                             double value, double threshold) {
    table.add_row({check, detail_text, format_double(value), format_double(threshold),
                   value <= threshold ? "1" : "0"});
  };

  {
    double worst = 0.0;
    const Matrix delta_half = operator_power(gns.modular_delta, 0.5);
    for (const Matrix& b : gns.algebra.basis) {
      const Vector vb = gns.vector_of(b);
      const Vector vb_star = gns.vector_of(Matrix(b.adjoint()));
      worst = std::max(worst,
                       (gns.tomita_s.apply(vb) - Vector(gns.q_projection * vb_star)).norm());
      worst = std::max(worst, std::abs((delta_half * vb).norm() -
                                       Vector(gns.q_projection * vb_star).norm()));
    }
    push("tomita_relation", "max residual of S aO = Q a*O and the norm identity", worst, 1e-9);
  }
  {
    const Matrix j2 = gns.modular_j * gns.modular_j.conjugate();
    push("j_involution", "norm of J^2 - Q", (j2 - gns.q_projection).norm(), 1e-9);
  }
  if (algebra_kind == "full" && gns.faithful) {
    std::vector<double> expected;
    const SpectralData rho = hermitian_spectral(density);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        expected.push_back(rho.eigenvalues(i) / rho.eigenvalues(j));
    std::sort(expected.begin(), expected.end());
    const SpectralData ds = hermitian_spectral(gns.modular_delta);
    std::vector<double> got(ds.eigenvalues.data(), ds.eigenvalues.data() + ds.eigenvalues.size());
    std::sort(got.begin(), got.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
      worst = std::max(worst, std::abs(got[i] - expected[i]));
    push("delta_spectrum", "modular spectrum vs density eigenvalue ratios", worst, 1e-9);
  }
  {
    const auto rowset = inclusion_monotonicity_check(algebra, subalgebra, state, alphas);
    double worst = 0.0;
    for (const MonotonicityRow& r : rowset)
      worst = std::max(worst, r.lhs - r.rhs);
    push("monotonicity", "max restriction-monotonicity violation over the alpha grid",
         std::max(worst, 0.0), 1e-9);
  }
  {
    std::vector<double> violation(static_cast<std::size_t>(std::max(mixtures, 0)), 0.0);
    static const double kMixP[3] = {0.5, 1.0, 2.0};
    parallel_for(violation.size(), cfg.threads, [&](std::size_t i) {
      Rng rng = Rng::stream(cfg.seed, 900000 + i);
      const AlgebraState other(rng.density_matrix(static_cast<int>(d)));
      const double r1 = 0.1 + 0.8 * rng.uniform01();
      const double alpha = alphas[i % alphas.size()];
      const double p = kMixP[i % 3];
      const MixtureReport rep =
          convex_mixture_check(algebra, subalgebra, state, other, r1, alpha, p);
      violation[i] = std::max(rep.lp_mixture - rep.rhs, 0.0);
    });
    double worst = 0.0;
    for (double v : violation) worst = std::max(worst, v);
    push("mixtures", "max convex-mixture bound violation over random partners", worst, 1e-9);
  }

  ArtifactList written;
  write_artifact(cfg, "gns_report.csv", table.render(cfg.config_hash), written);
  return written;
}

namespace detail {

struct NamedScalarFunction {
  std::string name;
  std::function<double(double)> fn;
};

inline NamedScalarFunction parse_scalar_function(const std::string& name) {
  if (name == "sqrt") return {name, [](double x) { return std::sqrt(std::max(x, 0.0)); }};
  if (name == "square") return {name, [](double x) { return x * x; }};
  if (name.rfind("pow:", 0) == 0) {
    double beta = 0.0;
    try {
      beta = std::stod(name.substr(4));
    } catch (const std::exception&) {
      throw input_error("functions: cannot parse exponent in \"" + name + "\"");
    }
    return {name, [beta](double x) { return std::pow(std::max(x, 0.0), beta); }};
  }
  throw input_error("functions: expected sqrt, square or pow:<beta>, got \"" + name + "\"");
}

}  // namespace detail

// Operator-monotonicity sweep on random ordered PSD pairs. Violations
// for non-monotone functions are expected findings and are reported in
// the summary, not raised as errors.
inline ArtifactList run_loewner_sweep(const RunConfig& cfg) {
  const auto names = detail::json_get<std::vector<std::string>>(
      detail::require_field(cfg.params, "functions"), "functions");
  const int trials = detail::json_get<int>(detail::require_field(cfg.params, "trials"), "trials");
  const int dim = cfg.params.value("dim", 4);
  if (names.empty()) throw input_error("functions list must be nonempty");
  if (trials < 1) throw parameter_error("trials must be positive");
  if (dim < 1 || dim > 64) throw parameter_error("dim must lie in [1, 64]");

  std::vector<detail::NamedScalarFunction> fns;
  for (const std::string& n : names) fns.push_back(detail::parse_scalar_function(n));

  const std::size_t total = fns.size() * static_cast<std::size_t>(trials);
  std::vector<LoewnerResult> results(total);
  parallel_for(total, cfg.threads, [&](std::size_t i) {
    const std::size_t f = i / static_cast<std::size_t>(trials);
    Rng rng = Rng::stream(cfg.seed, i);
    const Matrix a = rng.psd_matrix(dim);
    const Matrix b = a + rng.psd_matrix(dim);
    results[i] = loewner_check(a, b, fns[f].fn);
  });

  CsvTable rows({"function", "trial", "min_eigenvalue", "monotone"});
  CsvTable summary({"function", "trials", "violations"});
  for (std::size_t f = 0; f < fns.size(); ++f) {
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
      const LoewnerResult& res = results[f * static_cast<std::size_t>(trials) +
                                         static_cast<std::size_t>(t)];
      if (!res.monotone) ++violations;
      rows.add_row({fns[f].name, std::to_string(t), format_double(res.min_eigenvalue),
                    res.monotone ? "1" : "0"});
    }
    summary.add_row({fns[f].name, std::to_string(trials), std::to_string(violations)});
  }

  ArtifactList written;
  write_artifact(cfg, "loewner_trials.csv", rows.render(cfg.config_hash), written);
  write_artifact(cfg, "loewner_summary.csv", summary.render(cfg.config_hash), written);
  return written;
}

// Dispatch for the report commands; the acceptance command has its own
// runner so that this header stays independent of the gate.
inline ArtifactList run_report_command(const RunConfig& cfg) {
  if (cfg.command == "lattice-spectrum") return run_lattice_spectrum(cfg);
  if (cfg.command == "modular-decay") return run_modular_decay(cfg);
  if (cfg.command == "fock-sandwich") return run_fock_sandwich(cfg);
  if (cfg.command == "gns-verify") return run_gns_verify(cfg);
  if (cfg.command == "loewner-sweep") return run_loewner_sweep(cfg);
  throw input_error("unknown command \"" + cfg.command + "\"");
}

}  // namespace modlp
