#include "cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "lcft/correlators/limits.hpp"
#include "lcft/correlators/three_point.hpp"
#include "lcft/errors.hpp"
#include "lcft/gmc/ensemble.hpp"
#include "lcft/gmc/gmc.hpp"
#include "lcft/specfun/dozz.hpp"
#include "lcft/specfun/upsilon.hpp"
#include "lcft/spectrum/toy.hpp"
#include "lcft/util/parallel.hpp"
#include "lcft/virasoro/block.hpp"
#include "lcft/virasoro/verma.hpp"

namespace lcft::cli {

namespace {

using nlohmann::json;

json cjson(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json deterministic(json value, double tolerance) {
  return {{"value", std::move(value)}, {"tolerance", tolerance}, {"units", "dimensionless"}};
}

json stochastic(const McEstimate& e) {
  json j{{"mean", e.mean}, {"std_error", e.std_error}, {"units", "dimensionless"}};
  if (e.has_median_of_means) {
    j["median_of_means"] = e.median_of_means;
    j["median_of_means_band"] = e.median_of_means_band;
  }
  return j;
}

json stochastic(double mean, double error) {
  return {{"mean", mean}, {"std_error", error}, {"units", "dimensionless"}};
}

json params_json(const LiouvilleParams& p) {
  return {{"gamma", p.gamma()}, {"mu", p.mu()}, {"Q", p.Q()}, {"central_charge", p.central_charge()}};
}

int threads_for(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("LCFT_THREADS"); env && *env) {
    const double t = parse_real(env);
    if (t < 0 || t != std::floor(t) || t > 4096) throw ConfigError("LCFT_THREADS must be a non-negative integer");
    if (t > 0) return static_cast<int>(t);
  }
  return resolve_threads(0);
}

int to_int(std::int64_t v, const char* key) {
  if (v < -1000000000 || v > 1000000000) throw ConfigError(std::string(key) + " out of range");
  return static_cast<int>(v);
}

std::uint64_t seed_of(const RunConfig& c) {
  const std::int64_t s = c.integer("seed");
  if (s < 0) throw ConfigError("seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

std::int64_t samples_of(const RunConfig& c) {
  const std::int64_t n = c.integer("samples");
  if (n < 2) throw ConfigError("samples must be at least 2");
  return n;
}

template <std::size_t N, class T>
std::array<T, N> fixed_list(const std::vector<T>& v, const char* key) {
  if (v.size() != N) throw ConfigError(std::string(key) + " needs " + std::to_string(N) + " entries");
  std::array<T, N> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

SurfaceGeometry geometry_of(const RunConfig& c) {
  GeometryKind kind;
  try {
    kind = geometry_kind_from_string(c.text("geometry"));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return SurfaceGeometry(kind, to_int(c.integer("cutoff"), "cutoff"));
}

struct Context {
  const RunConfig& config;
  int threads;
  json result;
  json diagnostics = json::object();
  std::optional<LiouvilleParams> params;
  std::optional<Table> curve;
  std::string title;
};

void run_upsilon(Context& x) {
  const double g = x.config.real("gamma");
  x.params.emplace(g, 1.0);
  const double tol = x.config.real("quad_tol");
  const specfun::UpsilonEvaluator ev(g, tol);
  const specfun::UpsilonLog r = ev.log_upsilon(x.config.complex("z"));
  x.result = deterministic(r.is_zero ? cjson(0.0) : cjson(r.value()), std::max(1e-10, 100.0 * tol));
  x.result["is_zero"] = r.is_zero;
  if (!r.is_zero) x.result["log_value"] = cjson(r.log_value);
  x.diagnostics["shifts"] = r.shifts;
}

void run_dozz(Context& x) {
  x.params.emplace(x.config.real("gamma"), x.config.real("mu"));
  const auto a = fixed_list<3>(x.config.complexes("alphas"), "alphas");
  const specfun::DozzResult r = specfun::evaluate_dozz(a[0], a[1], a[2], *x.params);
  x.result = deterministic(r.pole ? json(nullptr) : cjson(r.value), 1e-9);
  x.result["pole_flag"] = r.pole;
  x.result["zero_flag"] = r.zero;
  x.result["branch_dependent"] = r.branch_dependent;
  if (!r.pole && !r.zero) x.result["log_value"] = cjson(r.log_value);
}

void run_reflection(Context& x) {
  x.params.emplace(x.config.real("gamma"), x.config.real("mu"));
  const specfun::ReflectionResult r = specfun::evaluate_reflection(x.config.complex("alpha"), *x.params);
  x.result = deterministic(r.pole ? json(nullptr) : cjson(r.value), 1e-10);
  x.result["pole_flag"] = r.pole;
  if (!r.pole) x.result["modulus"] = std::abs(r.value);
}

void run_gram(Context& x) {
  using virasoro::Rational;
  const int level = to_int(x.config.integer("level"), "level");
  const Rational delta(normalize_rational(x.config.text("delta")));
  const Rational c(normalize_rational(x.config.text("c")));
  const auto g = virasoro::gram_matrix(level, delta, c);
  json basis = json::array(), rows = json::array();
  for (const auto& d : g.basis) basis.push_back(d.parts());
  for (int i = 0; i < g.entries.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < g.entries.cols(); ++j) row.push_back(g.entries(i, j).str());
    rows.push_back(row);
  }
  x.result = deterministic(rows, 0.0);
  x.result["basis"] = basis;
  x.result["determinant"] = virasoro::exact_determinant(g.entries).str();
  x.result["exact"] = true;
}

void run_block(Context& x) {
  x.params.emplace(x.config.real("gamma"), x.config.real("mu"));
  const auto a = fixed_list<4>(x.config.complexes("alphas"), "alphas");
  const int level = to_int(x.config.integer("level"), "level");
  const virasoro::BlockValue b =
      virasoro::four_point_block(x.config.complex("z"), x.config.real("p"), a, *x.params, level);
  x.result = deterministic(cjson(b.value), b.truncation);
  x.result["series_sum"] = cjson(b.series_sum);
  json coeffs = json::array();
  std::vector<double> n, re, im;
  for (std::size_t k = 0; k < b.series.coefficients.size(); ++k) {
    coeffs.push_back(cjson(b.series.coefficients[k]));
    n.push_back(double(k));
    re.push_back(b.series.coefficients[k].real());
    im.push_back(b.series.coefficients[k].imag());
  }
  x.result["coefficients"] = coeffs;
  x.diagnostics["truncation"] = b.truncation;
  x.diagnostics["max_condition"] = b.series.max_condition;
  Table t;
  t.add_column("level", n);
  t.add_column("re", re);
  t.add_column("im", im);
  x.curve = std::move(t);
  x.title = "block coefficients";
}

void run_sample_gmc(Context& x) {
  const double g = x.config.real("gamma");
  x.params.emplace(g, 1.0);
  const SurfaceGeometry geo = geometry_of(x.config);
  const std::int64_t n = samples_of(x.config);
  const std::uint64_t seed = seed_of(x.config);
  const gmc::FieldEnsemble ens(geo);
  const std::vector<double> m = gmc::total_mass_samples(ens, g, n, seed, x.threads);
  const McEstimate e = make_estimate(m, seed, g > gmc::kHeavyTailGamma);
  x.result = stochastic(e);
  x.result["base_volume"] = geo.volume();
  x.diagnostics["cutoff"] = geo.resolution();
  x.diagnostics["geometry"] = std::string(to_string(geo.kind()));
  x.diagnostics["cells"] = ens.grid().size();
  x.diagnostics["n_samples"] = n;
  x.diagnostics["seed"] = seed;
  std::vector<double> idx(m.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = double(k);
  Table t;
  t.add_column("sample", idx);
  t.add_column("total_mass", m);
  x.curve = std::move(t);
  x.title = "total chaos mass";
}

void run_moments(Context& x) {
  const double g = x.config.real("gamma");
  x.params.emplace(g, 1.0);
  const SurfaceGeometry geo = geometry_of(x.config);
  const std::int64_t n = samples_of(x.config);
  const std::uint64_t seed = seed_of(x.config);
  const McEstimate e = gmc::total_mass_moments(g, geo, x.config.real("q"), n, seed, x.threads);
  x.result = stochastic(e);
  x.diagnostics["cutoff"] = geo.resolution();
  x.diagnostics["geometry"] = std::string(to_string(geo.kind()));
  x.diagnostics["n_samples"] = n;
  x.diagnostics["seed"] = seed;
}

correlators::MonteCarloOptions mc_options(const Context& x) {
  correlators::MonteCarloOptions o;
  o.n_samples = samples_of(x.config);
  o.seed = seed_of(x.config);
  o.threads = x.threads;
  return o;
}

void run_three_point(Context& x) {
  using namespace correlators;
  x.params.emplace(x.config.real("gamma"), x.config.real("mu"));
  const auto a = fixed_list<3>(x.config.reals("alphas"), "alphas");
  const int l_max = to_int(x.config.integer("cutoff"), "cutoff");
  MonteCarloOptions o = mc_options(x);
  const std::string& drift = x.config.text("drift");
  if (drift == "averaged") {
    o.drift = DriftKernel::averaged;
  } else if (drift != "truncated") {
    throw ConfigError("drift must be truncated or averaged");
  }
  const Complex z = x.config.complex("z");
  std::vector<Triple> triples{{VertexInsertion{a[0], SpherePoint(Complex(0.0))}, VertexInsertion{a[1], SpherePoint(z)},
                               VertexInsertion{a[2], SpherePoint::infinity()}}};
  const std::vector<double> ref = x.config.reals("reference");
  if (!ref.empty()) {
    const auto r = fixed_list<3>(ref, "reference");
    triples.push_back({VertexInsertion{r[0], SpherePoint(Complex(0.0))}, VertexInsertion{r[1], SpherePoint(Complex(1.0))},
                       VertexInsertion{r[2], SpherePoint::infinity()}});
  }
  const ThreePointBatch b = three_point_mc_many(triples, *x.params, l_max, o);
  const ThreePointResult& r = b.results[0];
  x.result = stochastic(r.estimate);
  x.result["expectation"] = stochastic(r.expectation);
  x.result["exact"] = deterministic(r.exact, 1e-9);
  x.result["ratio"] = stochastic(r.ratio, r.ratio_error);
  x.result["s_exponent"] = r.reduced.s_exponent;
  if (!ref.empty()) {
    const MeanError c = b.calibrated_ratio(0, 1);
    x.result["calibrated_ratio"] = stochastic(c.mean, c.std_error);
  }
  x.diagnostics["cutoff"] = l_max;
  x.diagnostics["drift"] = drift;
  x.diagnostics["n_samples"] = o.n_samples;
  x.diagnostics["seed"] = o.seed;
}

void run_two_point_limit(Context& x) {
  using namespace correlators;
  x.params.emplace(x.config.real("gamma"), x.config.real("mu"));
  const int l_max = to_int(x.config.integer("cutoff"), "cutoff");
  const MonteCarloOptions o = mc_options(x);
  std::vector<double> eps = x.config.reals("epsilons");
  std::sort(eps.begin(), eps.end());
  if (std::adjacent_find(eps.begin(), eps.end()) != eps.end()) throw ConfigError("epsilons must be distinct");
  const TwoPointLimitResult r = two_point_limit_mc(x.config.real("alpha"), *x.params, eps, l_max, o);
  x.result = stochastic(r.extrapolated_ratio * r.target, r.extrapolated_error * std::abs(r.target));
  x.result["target"] = deterministic(r.target, 1e-10);
  x.result["extrapolated_ratio"] = stochastic(r.extrapolated_ratio, r.extrapolated_error);
  x.result["reference_alpha"] = r.reference_alpha;
  std::vector<double> est, est_err;
  for (const auto& e : r.estimates) {
    est.push_back(e.mean);
    est_err.push_back(e.std_error);
  }
  Table t;
  t.add_column("epsilon", r.epsilons);
  t.add_column("ratio", r.ratios);
  t.add_column("ratio_error", r.ratio_errors);
  t.add_column("estimate", est);
  t.add_column("estimate_error", est_err);
  t.add_column("exact", r.exact);
  x.curve = std::move(t);
  x.title = "calibrated MC / exact";
  x.diagnostics["cutoff"] = l_max;
  x.diagnostics["n_samples"] = o.n_samples;
  x.diagnostics["seed"] = o.seed;
}

void run_bootstrap(Context& x) {
  using namespace correlators;
  x.params.emplace(x.config.real("gamma"), x.config.real("mu"));
  const auto a = fixed_list<4>(x.config.reals("alphas"), "alphas");
  const int nodes = to_int(x.config.integer("nodes"), "nodes");
  const BootstrapResult r = four_point_bootstrap(x.config.complex("z"), a, *x.params, x.config.real("p_max"), nodes,
                                                 to_int(x.config.integer("level"), "level"), x.threads);
  x.result = deterministic(cjson(r.integral), r.truncation_estimate + r.tail_estimate);
  x.result["peak"] = r.peak;
  x.result["tail_ratio"] = r.tail_ratio;
  x.result["tail_estimate"] = r.tail_estimate;
  x.result["truncation_estimate"] = r.truncation_estimate;
  x.result["skipped"] = r.skipped;
  std::vector<double> p, re, im, tr;
  for (const auto& n : r.curve) {
    p.push_back(n.p);
    re.push_back(n.skipped ? NAN : n.integrand.real());
    im.push_back(n.skipped ? NAN : n.integrand.imag());
    tr.push_back(n.block_truncation);
  }
  Table t;
  t.add_column("p", p);
  t.add_column("re", re);
  t.add_column("im", im);
  t.add_column("block_truncation", tr);
  x.curve = std::move(t);
  x.title = "spectral integrand";
  x.diagnostics["nodes"] = nodes;
}

void run_toy(Context& x) {
  const double g = x.config.real("gamma");
  x.params.emplace(g, 1.0);
  spectrum::ToyOptions o;
  if (const auto v = x.config.optional_real("c_min")) o.c_min = *v;
  if (const auto v = x.config.optional_real("c_max")) o.c_max = *v;
  o.tol = x.config.real("tol");
  o.step_factor = x.config.real("step_factor");
  const double p = x.config.real("p");
  const spectrum::ToyScatteringSolution s = spectrum::toy_solve(p, g, o);
  const Complex closed = spectrum::toy_reflection_closed_form(p, g);
  x.result = deterministic(cjson(s.R_mod), std::max(o.tol, s.fit_residual));
  x.result["modulus"] = std::abs(s.R_mod);
  x.result["closed_form"] = cjson(closed);
  x.result["closed_form_difference"] = std::abs(s.R_mod - closed);
  x.result["amplitude_in"] = cjson(s.amplitude_in);
  x.result["amplitude_out"] = cjson(s.amplitude_out);
  x.result["fitted_frequency"] = s.fitted_frequency;
  x.diagnostics["wronskian_drift"] = s.wronskian_drift;
  x.diagnostics["fit_residual"] = s.fit_residual;
  x.diagnostics["turning_point"] = s.turning_point;
  x.diagnostics["steps"] = s.steps;
  std::vector<double> c(s.grid.rbegin(), s.grid.rend()), re, im;
  for (auto it = s.psi.rbegin(); it != s.psi.rend(); ++it) {
    re.push_back(it->real());
    im.push_back(it->imag());
  }
  Table t;
  t.add_column("c", c);
  t.add_column("psi_re", re);
  t.add_column("psi_im", im);
  x.curve = std::move(t);
  x.title = "toy scattering solution";
}

}  // namespace

RunOutput execute(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Context x{config, threads_for(config), json::object(), json::object(), std::nullopt, std::nullopt, {}};
  const std::string& c = config.command;
  if (c == "upsilon") {
    run_upsilon(x);
  } else if (c == "dozz") {
    run_dozz(x);
  } else if (c == "reflection") {
    run_reflection(x);
  } else if (c == "gram") {
    run_gram(x);
  } else if (c == "block") {
    run_block(x);
  } else if (c == "sample-gmc") {
    run_sample_gmc(x);
  } else if (c == "moments") {
    run_moments(x);
  } else if (c == "three-point") {
    run_three_point(x);
  } else if (c == "two-point-limit") {
    run_two_point_limit(x);
  } else if (c == "bootstrap4") {
    run_bootstrap(x);
  } else if (c == "toy-scatter") {
    run_toy(x);
  } else {
    throw ConfigError("unknown command '" + c + "'");
  }
  x.diagnostics["threads"] = x.threads;
  x.diagnostics["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunOutput out;
  out.record = {{"schema_version", kSchemaVersion},
                {"command", c},
                {"config", config.to_json()},
                {"config_hash", config.hash()},
                {"params", x.params ? params_json(*x.params) : json(nullptr)},
                {"result", std::move(x.result)},
                {"diagnostics", std::move(x.diagnostics)}};
  if (x.curve) {
    make_increasing(*x.curve);
    out.curve = std::move(x.curve);
    out.curve_title = x.title;
  }
  return out;
}

json comparable(json record) {
  if (record.contains("diagnostics")) {
    record["diagnostics"].erase("runtime_seconds");
    record["diagnostics"].erase("threads");
  }
  return record;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto fail = [&](int code, const char* kind, const std::string& message) {
    err << "lcft " << config.command << ": " << kind << ": " << message << '\n';
    return code;
  };
  try {
    const RunOutput r = execute(config);
    const std::string text = r.record.dump(2) + "\n";
    out << text;
    if (!config.output.empty()) write_text_file(config.output, text);
    if (r.curve) {
      if (!config.csv.empty()) write_text_file(config.csv, to_csv(*r.curve));
      if (!config.svg.empty()) write_text_file(config.svg, to_svg(*r.curve, r.curve_title));
    } else if (!config.csv.empty() || !config.svg.empty()) {
      err << "lcft " << config.command << ": no curve to write\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    return fail(kExitValidation, "invalid configuration", e.what());
  } catch (const DomainError& e) {
    return fail(kExitValidation, "invalid input", e.what());
  } catch (const PreconditionError& e) {
    return fail(kExitPrecondition, "precondition violated", e.what());
  } catch (const ConvergenceError& e) {
    return fail(kExitConvergence, "no convergence", e.what());
  } catch (const Error& e) {
    return fail(kExitValidation, "error", e.what());
  }
}

}  // namespace lcft::cli
