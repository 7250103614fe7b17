#include "lrergo/experiment.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lrergo/pauli_string.hpp"
#include "lrergo/structure_factor.hpp"
#include "lrergo/sweep.hpp"

namespace lrergo {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw config_error(msg); }

Torus parse_lattice(const ConfigFile& cf) {
  Torus t;
  for (long long e : cf.require("lattice", "extent").as_int_array()) {
    if (e < 1 || e > 1 << 20) bad("lattice extent entries must be in [1, 2^20]");
    t.extent.push_back(static_cast<int>(e));
  }
  if (t.extent.empty()) bad("lattice extent must have at least one axis");
  std::string b = cf.get_string("lattice", "boundary", "periodic");
  if (b == "periodic")
    t.boundary = Boundary::periodic;
  else if (b == "open")
    t.boundary = Boundary::open;
  else
    bad("lattice boundary must be 'periodic' or 'open', got '" + b + "'");
  return t;
}

LocalOperator parse_observable(const std::string& name, const std::string& text, int site_dim,
                               const Region& box) {
  LocalOperator op;
  try {
    op = PauliString::parse(text).to_operator();
  } catch (const std::exception& e) {
    bad("observable '" + name + "': " + e.what());
  }
  if (op.site_dim != site_dim)
    bad("observable '" + name + "' has site dimension " + std::to_string(op.site_dim) +
        ", the model uses " + std::to_string(site_dim));
  if (!box.contains(op.support)) bad("observable '" + name + "' has support outside the box");
  return op;
}

RaySpec parse_ray(const ConfigFile& cf, const Torus& t) {
  RaySpec ray;
  std::vector<long long> q(t.dim(), 0);
  q[0] = 1;
  if (const ConfigValue* v = cf.find("ray", "q")) q = v->as_int_array();
  try {
    ray.q = RationalDirection::of(q);
  } catch (const std::exception& e) {
    bad(std::string("ray direction: ") + e.what());
  }
  ray.v = cf.get_number("ray", "v", 0.0);
  const ConfigValue* k = cf.find("ray", "k");
  const ConfigValue* f = cf.find("ray", "f");
  if (k) ray.k = k->as_number_array();
  if (f) ray.f = f->as_number();
  try {
    ray.validate(t.dim());
  } catch (const std::exception& e) {
    bad(std::string("ray: ") + e.what());
  }
  return ray;
}

}  // namespace

ExperimentConfig parse_experiment(const ConfigFile& cf) {
  ExperimentConfig ex;
  ex.raw = cf;
  ex.volume = parse_lattice(cf);
  Region box = ex.volume.all_sites();

  ex.lambda = cf.get_number("model", "lambda", 0.6931471805599453);
  if (!(ex.lambda > 0)) bad("model lambda must be positive");
  long long sd = cf.get_int("model", "site_dim", 2);
  if (sd < 2 || sd > 6) bad("model site_dim must be in [2, 6]");
  ex.site_dim = static_cast<int>(sd);

  std::string preset = cf.require("model", "preset").as_string();
  PresetKind kind = preset_from_name(preset);
  ex.preset = {kind, cf.get_number("model", "J", 1.0), cf.get_number("model", "hx", 0.0),
               cf.get_number("model", "hz", 0.0)};

  if (kind == PresetKind::custom) {
    ex.phi.lambda = ex.lambda;
    ex.phi.name = "custom";
    ex.phi.translation_covariant = false;
    const ConfigValue& terms = cf.require("model", "terms");
    if (terms.as_array().empty()) bad("custom model needs at least one term");
    for (const auto& tv : terms.as_array()) {
      LocalOperator term = parse_observable("custom term", tv.as_string(), ex.site_dim, box);
      if (hermiticity_defect(term.mat) > 1e-12) bad("custom term is not self-adjoint: " + tv.as_string());
      ex.phi.add_term(term);
    }
  } else {
    if (ex.site_dim != 2) bad("presets are spin-1/2 models; use preset = \"custom\" instead");
    ex.phi = build_preset(ex.preset, ex.volume, ex.lambda);
  }

  ex.state_kind = cf.get_string("state", "kind", "gibbs");
  ex.beta = cf.get_number("state", "beta", 1.0);
  if (ex.state_kind == "product") {
    const ConfigValue& vecs = cf.require("state", "vectors");
    for (const auto& vv : vecs.as_array()) {
      std::vector<double> parts = vv.as_number_array();
      if (parts.size() != 2 * static_cast<std::size_t>(ex.site_dim))
        bad("product state vectors need 2 * site_dim interleaved re/im entries");
      Vector vec(ex.site_dim);
      for (int i = 0; i < ex.site_dim; ++i) vec[i] = cplx(parts[2 * i], parts[2 * i + 1]);
      ex.product_vectors.push_back(vec);
    }
  } else if (ex.state_kind != "gibbs" && ex.state_kind != "tracial") {
    bad("state kind must be 'gibbs', 'tracial' or 'product', got '" + ex.state_kind + "'");
  }

  if (auto it = cf.sections.find("observables"); it != cf.sections.end())
    for (const auto& [name, value] : it->second)
      ex.observables[name] = parse_observable(name, value.as_string(), ex.site_dim, box);

  std::string scheme = cf.get_string("quadrature", "scheme", "breakpoint_exact");
  ex.quad.scheme = scheme_from_name(scheme);
  ex.quad.dt = cf.get_number("quadrature", "dt", 0.25);
  if (!(ex.quad.dt > 0)) bad("quadrature dt must be positive");
  long long order = cf.get_int("quadrature", "order", 12);
  if (order < 1 || order > 128) bad("quadrature order must be in [1, 128]");
  ex.quad.per_piece_order = static_cast<int>(order);

  ex.ray = parse_ray(cf, ex.volume);
  ex.command = cf.get_string("command", "name", "");
  return ex;
}

const LocalOperator& observable(const ExperimentConfig& ex, const std::string& name) {
  auto it = ex.observables.find(name);
  if (it == ex.observables.end()) bad("unknown observable '" + name + "'");
  return it->second;
}

EvolutionEngine make_engine(const ExperimentConfig& ex) {
  return build_engine(hamiltonian(ex.phi, ex.volume), ex.volume);
}

State make_state(const ExperimentConfig& ex, const EvolutionEngine& eng) {
  if (ex.state_kind == "gibbs") return gibbs_state(eng, ex.beta);
  if (ex.state_kind == "tracial") return tracial_state(eng);
  return product_state(ex.volume, ex.site_dim, ex.product_vectors);
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// ---- artifact plumbing ----

struct Artifacts {
  std::string dir;
  std::vector<std::string> written;

  std::string put(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot write output file: " + path);
    out << content;
    written.push_back(path);
    return path;
  }
};

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json cplx_json(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

bool want_json(const RunOptions& opts, bool json_default) {
  if (opts.format == "json") return true;
  if (opts.format == "csv") return false;
  return json_default;
}

std::vector<double> command_times(const ConfigFile& cf) {
  if (const ConfigValue* times = cf.find("command", "times")) return times->as_number_array();
  if (cf.has("command", "t_max")) {
    double t_max = cf.require("command", "t_max").as_number();
    long long count = cf.get_int("command", "t_count", 21);
    if (count < 2) bad("t_count must be at least 2");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i)
      out[i] = t_max * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
  }
  bad("command needs either 'times' or 't_max' (+ optional 't_count')");
}

std::vector<std::pair<std::string, std::string>> command_pairs(const ConfigFile& cf) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& pv : cf.require("command", "pairs").as_array()) {
    auto names = pv.as_string_array();
    if (names.size() != 2) bad("each entry of 'pairs' must be [\"A\", \"B\"]");
    out.emplace_back(names[0], names[1]);
  }
  if (out.empty()) bad("'pairs' must not be empty");
  return out;
}

std::string certificate_csv(const LRCertificate& c) {
  std::ostringstream os;
  os << "a,b,distance,t,empirical,rhs,satisfied,margin,boundary_affected\n";
  for (const auto& r : c.rows)
    os << r.a_id << ',' << r.b_id << ',' << r.distance << ',' << fmt_num(r.t) << ','
       << fmt_num(r.empirical) << ',' << fmt_num(r.rhs) << ',' << (r.satisfied ? 1 : 0) << ','
       << fmt_num(r.margin) << ',' << (r.boundary_affected ? 1 : 0) << '\n';
  return os.str();
}

// ---- command handlers ----

int cmd_lr_certify(const ExperimentConfig& ex, const EvolutionEngine& eng,
                   const RunOptions& opts, Artifacts& art) {
  std::vector<std::pair<LabeledOp, LabeledOp>> pairs;
  for (const auto& [na, nb] : command_pairs(ex.raw))
    pairs.push_back({{na, observable(ex, na)}, {nb, observable(ex, nb)}});
  LRCertificate cert = lr_certificate(eng, ex.phi, pairs, command_times(ex.raw), opts.exec);

  if (want_json(opts, true)) {
    std::ostringstream js;
    write_certificate_json(js, cert);
    art.put("certificate.json", js.str());
  } else {
    art.put("certificate.csv", certificate_csv(cert));
  }
  std::ostringstream table;
  write_certificate_table(table, cert);
  art.put("certificate.txt", table.str());
  return cert.all_satisfied ? 0 : 4;
}

int cmd_localize(const ExperimentConfig& ex, const EvolutionEngine& eng, const RunOptions& opts,
                 Artifacts& art) {
  const LocalOperator& a = observable(ex, ex.raw.require("command", "a").as_string());
  double t = ex.raw.get_number("command", "t", 0.0);
  long long r_max = ex.raw.require("command", "r_max").as_int();
  if (r_max < 0 || r_max > 1 << 20) bad("r_max out of range");
  double pref = ex.raw.get_number("command", "prefactor", 4.0);
  auto rows = localization_curve(eng, ex.phi, a, t, static_cast<int>(r_max), pref, opts.exec);

  if (want_json(opts, false)) {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"r", r.r},
                   {"region_size", r.region_size},
                   {"empirical", r.empirical},
                   {"theoretical", r.theoretical}});
    art.put("localization.json", dump_json(j));
  } else {
    std::ostringstream os;
    write_localization_csv(os, rows);
    art.put("localization.csv", os.str());
  }
  return 0;
}

int cmd_sweep(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
              const RunOptions& opts, Artifacts& art) {
  const LocalOperator& a = observable(ex, ex.raw.require("command", "a").as_string());
  const LocalOperator& b = observable(ex, ex.raw.require("command", "b").as_string());
  SweepMode mode = sweep_mode_from_name(ex.raw.get_string("command", "mode", "plain"));
  auto velocities = ex.raw.require("command", "velocities").as_number_array();
  auto horizons = ex.raw.require("command", "horizons").as_number_array();
  long long power = ex.raw.get_int("command", "power", 2);
  if (power < 1 || power > 16) bad("moment power must be in [1, 16]");

  auto cells = convergence_sweep(s, eng, a, b, ex.ray, velocities, horizons, mode,
                                 static_cast<int>(power), ex.quad, opts.exec);
  if (want_json(opts, false)) {
    json j = json::array();
    for (const auto& c : cells)
      j.push_back({{"mode", sweep_mode_name(c.mode)},
                   {"v", c.v},
                   {"T", c.T},
                   {"value", cplx_json(c.value)},
                   {"reference", cplx_json(c.reference)},
                   {"abs_deviation", c.abs_deviation},
                   {"quad_error", c.quad_error}});
    art.put("sweep.json", dump_json(j));
  } else {
    std::ostringstream os;
    write_sweep_csv(os, cells);
    art.put("sweep.csv", os.str());
  }
  return 0;
}

int cmd_oscillatory(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
                    const RunOptions& opts, Artifacts& art) {
  const LocalOperator& a = observable(ex, ex.raw.require("command", "a").as_string());
  const LocalOperator& b = observable(ex, ex.raw.require("command", "b").as_string());
  double T = ex.raw.require("command", "T").as_number();
  OscillatoryResult r = oscillatory_ray_average(s, eng, a, b, ex.ray, T, ex.quad, opts.exec);

  json j{{"T", T},
         {"theta", ex.ray.phase_rate()},
         {"connected", cplx_json(r.connected.value)},
         {"unsubtracted", cplx_json(r.unsubtracted)},
         {"quad_error", r.connected.quad_error}};
  if (want_json(opts, true)) {
    art.put("oscillatory.json", dump_json(j));
  } else {
    std::ostringstream os;
    os << "T,theta,connected_re,connected_im,unsubtracted_re,unsubtracted_im,quad_error\n"
       << fmt_num(T) << ',' << fmt_num(ex.ray.phase_rate()) << ','
       << fmt_num(r.connected.value.real()) << ',' << fmt_num(r.connected.value.imag()) << ','
       << fmt_num(r.unsubtracted.real()) << ',' << fmt_num(r.unsubtracted.imag()) << ','
       << fmt_num(r.connected.quad_error) << '\n';
    art.put("oscillatory.csv", os.str());
  }
  return 0;
}

int cmd_moments(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
                const RunOptions& opts, Artifacts& art) {
  const LocalOperator& a = observable(ex, ex.raw.require("command", "a").as_string());
  double T = ex.raw.require("command", "T").as_number();
  std::vector<long long> powers{1, 2};
  if (const ConfigValue* p = ex.raw.find("command", "powers")) powers = p->as_int_array();

  std::vector<ScalarWithError> vals;
  for (long long n : powers) {
    if (n < 1 || n > 16) bad("moment powers must be in [1, 16]");
    vals.push_back(moment(s, eng, a, ex.ray, T, static_cast<int>(n), ex.quad, opts.exec));
  }
  if (want_json(opts, false)) {
    json j = json::array();
    for (std::size_t i = 0; i < powers.size(); ++i)
      j.push_back({{"power", powers[i]},
                   {"value", cplx_json(vals[i].value)},
                   {"quad_error", vals[i].quad_error}});
    art.put("moments.json", dump_json(j));
  } else {
    std::ostringstream os;
    os << "power,value_re,value_im,quad_error\n";
    for (std::size_t i = 0; i < powers.size(); ++i)
      os << powers[i] << ',' << fmt_num(vals[i].value.real()) << ','
         << fmt_num(vals[i].value.imag()) << ',' << fmt_num(vals[i].quad_error) << '\n';
    art.put("moments.csv", os.str());
  }
  return 0;
}

int cmd_mean_square(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
                    const RunOptions& opts, Artifacts& art) {
  const LocalOperator& a = observable(ex, ex.raw.require("command", "a").as_string());
  const LocalOperator& b = observable(ex, ex.raw.require("command", "b").as_string());
  double T = ex.raw.require("command", "T").as_number();
  double Tp = ex.raw.get_number("command", "T_prime", T);
  ScalarWithError r = mean_square(s, eng, a, b, ex.ray, T, Tp, ex.quad, opts.exec);

  if (want_json(opts, true)) {
    art.put("mean_square.json", dump_json(json{{"T", T},
                                               {"T_prime", Tp},
                                               {"value", cplx_json(r.value)},
                                               {"quad_error", r.quad_error}}));
  } else {
    std::ostringstream os;
    os << "T,T_prime,value_re,value_im,quad_error\n"
       << fmt_num(T) << ',' << fmt_num(Tp) << ',' << fmt_num(r.value.real()) << ','
       << fmt_num(r.value.imag()) << ',' << fmt_num(r.quad_error) << '\n';
    art.put("mean_square.csv", os.str());
  }
  return 0;
}

int cmd_multi_point(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
                    const RunOptions& opts, Artifacts& art) {
  std::vector<LocalOperator> as, bs;
  for (const auto& n : ex.raw.require("command", "a_factors").as_string_array())
    as.push_back(observable(ex, n));
  for (const auto& n : ex.raw.require("command", "b_factors").as_string_array())
    bs.push_back(observable(ex, n));
  auto horizons = ex.raw.require("command", "horizons").as_number_array();
  cplx v;
  try {
    v = multi_ray_average(s, eng, as, bs, ex.ray, horizons, ex.quad, opts.exec);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }

  if (want_json(opts, true)) {
    art.put("multi_point.json",
            dump_json(json{{"value", cplx_json(v)}, {"n_b_factors", bs.size()}}));
  } else {
    std::ostringstream os;
    os << "value_re,value_im\n" << fmt_num(v.real()) << ',' << fmt_num(v.imag()) << '\n';
    art.put("multi_point.csv", os.str());
  }
  return 0;
}

int cmd_spacelike(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
                  const RunOptions& opts, Artifacts& art) {
  const LocalOperator& a = observable(ex, ex.raw.require("command", "a").as_string());
  const LocalOperator& b = observable(ex, ex.raw.require("command", "b").as_string());
  Site step;
  for (long long c : ex.raw.require("command", "step").as_int_array())
    step.push_back(static_cast<int>(c));
  double v = ex.raw.require("command", "v").as_number();
  long long m_max = ex.raw.require("command", "m_max").as_int();
  if (m_max < 1 || m_max > 100000) bad("m_max out of range");
  std::optional<std::pair<std::vector<double>, double>> kf;
  if (ex.ray.modulated()) kf = std::make_pair(*ex.ray.k, *ex.ray.f);

  std::vector<SpacelikeRow> rows;
  try {
    rows = spacelike_probe(s, eng, a, b, step, v, static_cast<int>(m_max), kf, opts.exec);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  if (want_json(opts, false)) {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"m", r.m_count},
                   {"mean", cplx_json(r.mean)},
                   {"connected", cplx_json(r.mean_connected)},
                   {"phased", cplx_json(r.phased)},
                   {"phased_connected", cplx_json(r.phased_connected)}});
    art.put("spacelike.json", dump_json(j));
  } else {
    std::ostringstream os;
    os << "m,mean_re,mean_im,connected_re,connected_im,phased_re,phased_im,"
          "phased_connected_re,phased_connected_im\n";
    for (const auto& r : rows)
      os << r.m_count << ',' << fmt_num(r.mean.real()) << ',' << fmt_num(r.mean.imag()) << ','
         << fmt_num(r.mean_connected.real()) << ',' << fmt_num(r.mean_connected.imag()) << ','
         << fmt_num(r.phased.real()) << ',' << fmt_num(r.phased.imag()) << ','
         << fmt_num(r.phased_connected.real()) << ',' << fmt_num(r.phased_connected.imag())
         << '\n';
    art.put("spacelike.csv", os.str());
  }
  return 0;
}

int cmd_kms_check(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
                  const RunOptions& opts, Artifacts& art) {
  if (ex.state_kind != "gibbs") bad("kms-check needs a gibbs state");
  auto pairs = command_pairs(ex.raw);
  std::vector<double> residuals(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    residuals[i] = kms_residual(s, eng, observable(ex, pairs[i].first),
                                observable(ex, pairs[i].second), ex.beta);

  if (want_json(opts, false)) {
    json j = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i)
      j.push_back(
          {{"a", pairs[i].first}, {"b", pairs[i].second}, {"residual", residuals[i]}});
    art.put("kms.json", dump_json(j));
  } else {
    std::ostringstream os;
    os << "a,b,residual\n";
    for (std::size_t i = 0; i < pairs.size(); ++i)
      os << pairs[i].first << ',' << pairs[i].second << ',' << fmt_num(residuals[i]) << '\n';
    art.put("kms.csv", os.str());
  }
  return 0;
}

int cmd_hydro(const ExperimentConfig& ex, const EvolutionEngine& eng, const State& s,
              const RunOptions& opts, Artifacts& art) {
  const LocalOperator& a = observable(ex, ex.raw.require("command", "a").as_string());
  const LocalOperator& b =
      observable(ex, ex.raw.get_string("command", "b", ex.raw.require("command", "a").as_string()));
  auto kappa = ex.raw.require("command", "kappa").as_number_array();
  double T = ex.raw.require("command", "T").as_number();
  double t_min = ex.raw.get_number("command", "t_min", 1.0);

  EulerScaleResult euler;
  try {
    euler = euler_scale_average(s, eng, a, b, kappa, T, t_min, opts.exec);
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  json j{{"value", cplx_json(euler.value)}, {"T", euler.T},     {"t_min", euler.t_min},
         {"kappa", euler.kappa},            {"est_error", euler.est_error}};
  art.put("hydro.json", dump_json(j));

  // Optional S(k, t) samples on the cartesian grid k_values x t_values.
  if (ex.raw.has("command", "k_values")) {
    const auto& kvs = ex.raw.require("command", "k_values").as_array();
    auto ts = ex.raw.require("command", "t_values").as_number_array();
    std::ostringstream os;
    os << "k,t,re,im\n";
    for (const auto& kv : kvs) {
      std::vector<double> k = kv.as_number_array();
      for (double t : ts) {
        cplx v = structure_factor(s, eng, a, b, k, t, opts.exec);
        os << '"';
        for (std::size_t d = 0; d < k.size(); ++d) os << (d ? " " : "") << fmt_num(k[d]);
        os << "\"," << fmt_num(t) << ',' << fmt_num(v.real()) << ',' << fmt_num(v.imag()) << '\n';
      }
    }
    art.put("structure_factor.csv", os.str());
  }
  return 0;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& ex, const RunOptions& opts) {
  if (opts.format != "default" && opts.format != "csv" && opts.format != "json")
    bad("format must be 'csv' or 'json'");

  auto clock0 = std::chrono::steady_clock::now();
  Artifacts art{opts.out_dir, {}};
  int code = 0;

  // State-free commands skip the state build (certificates are about norms).
  EvolutionEngine eng = make_engine(ex);
  if (ex.command == "lr-certify") {
    code = cmd_lr_certify(ex, eng, opts, art);
  } else if (ex.command == "localize") {
    code = cmd_localize(ex, eng, opts, art);
  } else {
    State s = make_state(ex, eng);
    if (ex.command == "ergodic-sweep")
      code = cmd_sweep(ex, eng, s, opts, art);
    else if (ex.command == "oscillatory")
      code = cmd_oscillatory(ex, eng, s, opts, art);
    else if (ex.command == "moments")
      code = cmd_moments(ex, eng, s, opts, art);
    else if (ex.command == "mean-square")
      code = cmd_mean_square(ex, eng, s, opts, art);
    else if (ex.command == "multi-point")
      code = cmd_multi_point(ex, eng, s, opts, art);
    else if (ex.command == "spacelike-probe")
      code = cmd_spacelike(ex, eng, s, opts, art);
    else if (ex.command == "kms-check")
      code = cmd_kms_check(ex, eng, s, opts, art);
    else if (ex.command == "hydro")
      code = cmd_hydro(ex, eng, s, opts, art);
    else
      bad("unknown command '" + ex.command + "'");
  }

  double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - clock0).count();

  std::ostringstream serialized;
  {
    std::ifstream in(ex.raw.path, std::ios::binary);
    if (in) serialized << in.rdbuf();
  }
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a_hash(serialized.str())));

  json manifest{{"tool_version", kToolVersion},
                {"command", ex.command},
                {"config_path", ex.raw.path},
                {"config_hash", std::string("fnv1a:") + hash},
                {"workers", worker_count()},
                {"exec", opts.exec == Exec::serial ? "serial" : "openmp"},
                {"wall_ms", wall_ms},
                {"exit_code", code},
                {"outputs", art.written}};
  art.put("manifest.json", dump_json(manifest));

  RunResult res;
  res.exit_code = code;
  res.outputs = art.written;
  return res;
}

}  // namespace lrergo
