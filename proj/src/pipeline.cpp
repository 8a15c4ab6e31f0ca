// SPDX-License-Identifier: Apache-2.0
#include "pvqe/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "pvqe/error.hpp"
#include "pvqe/integrals.hpp"
#include "pvqe/oracle.hpp"
#include "pvqe/pools.hpp"

namespace pvqe {

namespace fs = std::filesystem;

std::string to_string(Method method) {
  switch (method) {
    case Method::hf: return "hf";
    case Method::exact: return "exact";
    case Method::adapt_vqe: return "adapt_vqe";
    case Method::qeb_adapt_vqe: return "qeb_adapt_vqe";
    case Method::uccsd_vqe: return "uccsd_vqe";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "hf") return Method::hf;
  if (name == "exact") return Method::exact;
  if (name == "adapt_vqe") return Method::adapt_vqe;
  if (name == "qeb_adapt_vqe") return Method::qeb_adapt_vqe;
  if (name == "uccsd_vqe") return Method::uccsd_vqe;
  throw ConfigError("unknown method '" + name + "'");
}

namespace {

bool is_adaptive(Method m) {
  return m == Method::adapt_vqe || m == Method::qeb_adapt_vqe;
}

bool has_ansatz(Method m) { return is_adaptive(m) || m == Method::uccsd_vqe; }

template <class T>
T field(const Json& obj, const char* key, const T& fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("config key '") + key +
                      "' has the wrong type");
  }
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> keys,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items())
    if (!known.contains(k))
      throw ConfigError("unknown config key '" + where + k + "'");
}

fs::path resolve(const std::string& p, const fs::path& base) {
  const fs::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

std::string csv_number(const Json& v) {
  if (!v.is_number()) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

RunConfig config_from_json(const Json& doc, const fs::path& base_dir) {
  reject_unknown(doc,
                 {"schema", "id", "fcidump", "metadata", "method", "pt",
                  "pt_pool", "epsilon", "m_per_iter", "max_adapt_iterations",
                  "pool", "penalty", "eps_r", "prescreen_eta", "optimizer",
                  "seed", "output_dir", "compute_exact", "report_timings"},
                 "");
  if (field<int>(doc, "schema", kConfigSchema) != kConfigSchema)
    throw ConfigError("unsupported config schema");
  RunConfig c;
  c.id = field<std::string>(doc, "id", "");
  const auto fcidump = field<std::string>(doc, "fcidump", "");
  if (fcidump.empty()) throw ConfigError("config requires 'fcidump'");
  c.fcidump = resolve(fcidump, base_dir);
  if (const auto m = field<std::string>(doc, "metadata", ""); !m.empty())
    c.metadata = resolve(m, base_dir);
  c.method = method_from_string(field<std::string>(doc, "method", "adapt_vqe"));
  if (const auto pt = field<std::string>(doc, "pt", "none"); pt != "none")
    c.pt = pt_method_from_string(pt);
  c.pt_pool = field<std::string>(doc, "pt_pool", c.pt_pool);
  c.epsilon = field<double>(doc, "epsilon", c.epsilon);
  c.m_per_iter = field<int>(doc, "m_per_iter", c.m_per_iter);
  c.max_adapt_iterations =
      field<int>(doc, "max_adapt_iterations", c.max_adapt_iterations);
  if (const auto it = doc.find("pool"); it != doc.end() && !it->is_null()) {
    reject_unknown(*it,
                   {"spin_adapted", "i_variant", "qeb", "generalized",
                    "allow_reuse"},
                   "pool.");
    c.pool.spin_adapted = field<bool>(*it, "spin_adapted", true);
    c.pool.i_variant = field<bool>(*it, "i_variant", false);
    c.pool.qeb = field<bool>(*it, "qeb", false);
    c.pool.generalized = field<bool>(*it, "generalized", false);
    c.pool.allow_reuse = field<bool>(*it, "allow_reuse", true);
  }
  if (const auto it = doc.find("penalty"); it != doc.end() && !it->is_null()) {
    reject_unknown(*it, {"alpha", "spin"}, "penalty.");
    c.penalty = PenaltyConfig{field<double>(*it, "alpha", kDefaultPenaltyAlpha),
                              field<double>(*it, "spin", 0.0)};
  }
  c.eps_r = field<double>(doc, "eps_r", c.eps_r);
  c.prescreen_eta = field<double>(doc, "prescreen_eta", c.prescreen_eta);
  if (const auto it = doc.find("optimizer");
      it != doc.end() && !it->is_null()) {
    reject_unknown(*it, {"gtol", "max_iter"}, "optimizer.");
    c.optimizer.gtol = field<double>(*it, "gtol", c.optimizer.gtol);
    c.optimizer.max_iter = field<int>(*it, "max_iter", c.optimizer.max_iter);
  }
  if (const auto it = doc.find("seed"); it != doc.end() && !it->is_null())
    c.seed = field<std::int64_t>(doc, "seed", 0);
  if (const auto o = field<std::string>(doc, "output_dir", ""); !o.empty())
    c.output_dir = resolve(o, base_dir);
  c.compute_exact = field<bool>(doc, "compute_exact", true);
  c.report_timings = field<bool>(doc, "report_timings", false);
  if (c.id.empty()) c.id = c.fcidump.stem().string();
  validate_config(c);
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["schema"] = kConfigSchema;
  j["id"] = c.id;
  j["fcidump"] = c.fcidump.string();
  j["metadata"] = c.metadata ? Json(c.metadata->string()) : Json(nullptr);
  j["method"] = to_string(c.method);
  j["pt"] = c.pt ? Json(to_string(*c.pt)) : Json(nullptr);
  j["pt_pool"] = c.pt_pool;
  j["epsilon"] = c.epsilon;
  j["m_per_iter"] = c.m_per_iter;
  j["max_adapt_iterations"] = c.max_adapt_iterations;
  j["pool"] = {{"spin_adapted", c.pool.spin_adapted},
               {"i_variant", c.pool.i_variant},
               {"qeb", c.pool.qeb},
               {"generalized", c.pool.generalized},
               {"allow_reuse", c.pool.allow_reuse}};
  j["penalty"] = c.penalty ? Json{{"alpha", c.penalty->alpha},
                                  {"spin", c.penalty->spin}}
                           : Json(nullptr);
  j["eps_r"] = c.eps_r;
  j["prescreen_eta"] = c.prescreen_eta;
  j["optimizer"] = {{"gtol", c.optimizer.gtol},
                    {"max_iter", c.optimizer.max_iter}};
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["output_dir"] = c.output_dir.string();
  j["compute_exact"] = c.compute_exact;
  j["report_timings"] = c.report_timings;
  return j;
}

void validate_config(const RunConfig& c) {
  if (c.fcidump.empty()) throw ConfigError("config requires 'fcidump'");
  if (is_adaptive(c.method) && !(c.epsilon > 0.0))
    throw ConfigError("epsilon must be positive for adaptive methods");
  if (c.m_per_iter < 1) throw ConfigError("m_per_iter must be at least 1");
  if (c.max_adapt_iterations < 0)
    throw ConfigError("max_adapt_iterations must be non-negative");
  if (c.pt && (*c.pt == PtMethod::stpt || *c.pt == PtMethod::stpt_d) &&
      !has_ansatz(c.method))
    throw ConfigError("stpt requires a unitary-ansatz method, got '" +
                      to_string(c.method) + "'");
  if (!(c.eps_r > 0.0)) throw ConfigError("eps_r must be positive");
  if (c.prescreen_eta < 0.0)
    throw ConfigError("prescreen_eta must be non-negative");
  if (!(c.optimizer.gtol > 0.0))
    throw ConfigError("optimizer.gtol must be positive");
  if (c.optimizer.max_iter < 0)
    throw ConfigError("optimizer.max_iter must be non-negative");
  if (c.pt_pool != "same" && c.pt_pool != "fermionic" && c.pt_pool != "qeb")
    throw ConfigError("pt_pool must be one of same, fermionic, qeb");
  const bool qeb = c.method == Method::qeb_adapt_vqe || c.pool.qeb;
  if (!qeb && !c.pool.spin_adapted)
    throw ConfigError("non-spin-adapted fermionic pools are not supported");
  if (qeb && c.pool.i_variant)
    throw ConfigError("i_variant applies to fermionic pools only");
  if (qeb && c.method == Method::uccsd_vqe)
    throw ConfigError("uccsd_vqe uses the fermionic pool");
  if (c.penalty) {
    if (c.penalty->alpha < 0.0)
      throw ConfigError("penalty.alpha must be non-negative");
    const double two_s = 2.0 * c.penalty->spin;
    if (c.penalty->spin < 0.0 || two_s != std::round(two_s))
      throw ConfigError("penalty.spin must be a non-negative half-integer");
  }
}

void apply_override(Json& doc, const std::string& key,
                    const std::string& value) {
  if (key.empty()) throw ConfigError("empty override key");
  Json parsed;
  try {
    parsed = Json::parse(value);
  } catch (const Json::parse_error&) {
    parsed = value;
  }
  Json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ConfigError("malformed override key '" + key + "'");
    if (dot == std::string::npos) {
      (*node)[part] = parsed;
      return;
    }
    Json& child = (*node)[part];
    if (child.is_null()) child = Json::object();
    if (!child.is_object())
      throw ConfigError("override '" + key + "' descends into a scalar");
    node = &child;
    start = dot + 1;
  }
}

RunConfig load_config(
    const fs::path& path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " +
                      e.what());
  }
  for (const auto& [k, v] : overrides) apply_override(doc, k, v);
  if (doc.is_object() && !doc.contains("id"))
    doc["id"] = path.stem().string();
  return config_from_json(doc, path.parent_path());
}

void write_atomically(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

using Clock = std::chrono::steady_clock;

/// Everything the stages share.
struct Workspace {
  IntegralSet ints;
  int n_qubits = 0;
  std::vector<int> occupied;
  PauliSum hamiltonian;
  PauliSum s2;
  State hf;
};

Workspace prepare_workspace(const RunConfig& c) {
  Workspace w;
  w.ints = read_fcidump(c.fcidump);
  if (c.metadata) load_orbital_metadata(w.ints, *c.metadata);
  w.n_qubits = 2 * w.ints.n_spatial;
  if (w.n_qubits > kMaxStateQubits)
    throw DimensionError("system needs " + std::to_string(w.n_qubits) +
                         " qubits, above the cap of " +
                         std::to_string(kMaxStateQubits));
  w.occupied = hartree_fock_occupation(w.ints.n_spatial, w.ints.n_alpha(),
                                       w.ints.n_beta());
  w.hamiltonian = jordan_wigner(build_hamiltonian(w.ints));
  if (c.penalty)
    w.hamiltonian = simplify(
        w.hamiltonian +
        build_s2_penalty(w.ints.n_spatial, c.penalty->alpha, c.penalty->spin));
  w.s2 = jordan_wigner(spin_squared_operator(w.ints.n_spatial), w.n_qubits);
  w.hf = hartree_fock_state(w.n_qubits, w.occupied);
  return w;
}

Pool fermionic_pool(const RunConfig& c, const Workspace& w) {
  FermionicPoolOptions opt;
  opt.include_i_variant = c.pool.i_variant;
  opt.generalized = c.pool.generalized;
  Pool p = build_fermionic_pool(w.ints.n_spatial, w.ints.n_alpha(),
                                w.ints.n_beta(), opt);
  if (w.ints.k_labels)
    p = momentum_filter(p, *w.ints.k_labels, w.ints.lattice_modulus);
  return p;
}

Pool qeb_pool(const RunConfig& c, const Workspace& w) {
  QebPoolOptions opt;
  opt.generalized_doubles = c.pool.generalized;
  return build_qeb_pool(w.n_qubits, w.occupied, opt);
}

Pool method_pool(const RunConfig& c, const Workspace& w) {
  const bool qeb = c.method == Method::qeb_adapt_vqe || c.pool.qeb;
  return qeb ? qeb_pool(c, w) : fermionic_pool(c, w);
}

Pool subspace_pool(const RunConfig& c, const Workspace& w) {
  if (c.pt_pool == "fermionic") return fermionic_pool(c, w);
  if (c.pt_pool == "qeb") return qeb_pool(c, w);
  return method_pool(c, w);
}

AdaptSettings adapt_settings(const RunConfig& c) {
  AdaptSettings s;
  s.epsilon = c.epsilon;
  s.m_per_iter = c.m_per_iter;
  s.optimizer = c.optimizer;
  s.max_iterations = c.max_adapt_iterations;
  s.allow_reuse = c.pool.allow_reuse;
  return s;
}

PTResult run_pt(PtMethod method, const PauliSum& h, const State& reference,
                double e0, const Ansatz& ansatz, const State& hf,
                const Pool& pool, const RunConfig& c) {
  switch (method) {
    case PtMethod::mrpt:
    case PtMethod::mrpt_d: {
      const PerturbativeSubspace sub =
          build_mrpt_subspace(h, reference, pool, c.prescreen_eta);
      return method == PtMethod::mrpt
                 ? mrpt_correction(h, reference, e0, sub, c.eps_r)
                 : mrpt_diagonal(h, reference, e0, sub, c.eps_r);
    }
    case PtMethod::stpt: return stpt_correction(h, ansatz, hf, e0);
    case PtMethod::stpt_d: return stpt_diagonal(h, ansatz, hf, e0);
  }
  throw ContractError("unknown perturbation method");
}

Json pt_to_json(const PTResult& r) {
  return {{"method", to_string(r.method)},
          {"e_reference", r.e_reference},
          {"delta_e", r.delta_e},
          {"e_total", r.e_total},
          {"retained_rank", r.retained_rank},
          {"discarded_rank", r.discarded_rank},
          {"residual_norm", r.residual_norm},
          {"skipped_denominators", r.skipped_denominators},
          {"residual_warning", r.residual_warning}};
}

std::string trace_csv(const std::vector<AdaptIteration>& trace) {
  std::ostringstream out;
  out << "iteration,n_parameters,energy_hartree,grad_norm,selected_labels\n";
  char buf[64];
  for (const auto& it : trace) {
    out << it.iteration << ',' << it.n_parameters << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", it.energy,
                  it.gradient_norm);
    out << buf;
    std::string labels;
    for (std::size_t k = 0; k < it.selected.size(); ++k)
      labels += (k ? ";" : "") + it.selected[k];
    out << csv_quote(labels) << '\n';
  }
  return out.str();
}

}  // namespace

RunReport run_pipeline(const RunConfig& config) {
  validate_config(config);
  RunReport report;
  Json& doc = report.document;
  doc["schema"] = kReportSchema;
  doc["id"] = config.id;
  doc["config"] = config_to_json(config);
  doc["status"] = "ok";
  doc["error"] = nullptr;
  doc["n_qubits"] = nullptr;
  doc["n_electrons"] = nullptr;
  doc["e_hf"] = nullptr;
  doc["e_vqe"] = nullptr;
  doc["e_pt_total"] = nullptr;
  doc["e_exact"] = nullptr;
  doc["deviation_kcal_mol"] = {
      {"hf", nullptr}, {"vqe", nullptr}, {"pt", nullptr}};
  doc["n_parameters"] = nullptr;
  doc["adapt_iterations"] = nullptr;
  doc["vqe_status"] = nullptr;
  doc["optimizer_warning"] = nullptr;
  doc["s2_expectation"] = nullptr;
  doc["selected_operators"] = nullptr;
  doc["parameters"] = nullptr;
  doc["pool_size"] = nullptr;
  doc["pt"] = nullptr;
  doc["timings_s"] = nullptr;

  Json timings = Json::object();
  std::vector<AdaptIteration> trace;
  std::string stage;
  const auto timed = [&](const std::string& name, auto&& fn) {
    stage = name;
    const auto t0 = Clock::now();
    fn();
    timings[name] =
        std::chrono::duration<double>(Clock::now() - t0).count();
  };

  try {
    Workspace w;
    timed("parse", [&] { w = prepare_workspace(config); });
    doc["n_qubits"] = w.n_qubits;
    doc["n_electrons"] = w.ints.n_electrons;

    const double e_hf = energy(w.hamiltonian, w.hf);
    doc["e_hf"] = e_hf;

    State reference = w.hf;
    double e_reference = e_hf;
    Ansatz ansatz;
    std::optional<SpectrumResult> exact;

    timed("method", [&] {
      switch (config.method) {
        case Method::hf: break;
        case Method::exact:
          exact = exact_ground_state(
              w.hamiltonian, Sector{w.ints.n_electrons, w.ints.ms2});
          reference = exact->ground_state;
          e_reference = exact->eigenvalues.front();
          break;
        case Method::adapt_vqe:
        case Method::qeb_adapt_vqe:
        case Method::uccsd_vqe: {
          const Pool pool = method_pool(config, w);
          doc["pool_size"] = pool.size();
          const VqeResult r =
              config.method == Method::uccsd_vqe
                  ? uccsd_vqe(w.hamiltonian, pool, w.hf, config.optimizer)
                  : adapt_vqe(w.hamiltonian, pool, w.hf,
                              adapt_settings(config));
          reference = r.state;
          e_reference = r.energy;
          ansatz = r.ansatz;
          trace = r.trace;
          doc["e_vqe"] = r.energy;
          doc["n_parameters"] = r.n_parameters;
          doc["adapt_iterations"] = r.iterations;
          doc["vqe_status"] = to_string(r.status);
          doc["optimizer_warning"] = r.optimizer_warning;
          doc["selected_operators"] = r.ansatz.labels();
          doc["parameters"] = std::vector<double>(
              r.ansatz.parameters.data(),
              r.ansatz.parameters.data() + r.ansatz.parameters.size());
          break;
        }
      }
      doc["s2_expectation"] = expectation(w.s2, reference).real();
    });

    if (config.pt) {
      timed("pt", [&] {
        const Pool pool = subspace_pool(config, w);
        const PTResult r = run_pt(*config.pt, w.hamiltonian, reference,
                                  e_reference, ansatz, w.hf, pool, config);
        doc["pt"] = pt_to_json(r);
        doc["e_pt_total"] = r.e_total;
      });
    }

    if (config.compute_exact || config.method == Method::exact) {
      timed("exact", [&] {
        if (!exact)
          exact = exact_ground_state(
              w.hamiltonian, Sector{w.ints.n_electrons, w.ints.ms2});
        const double e_exact = exact->eigenvalues.front();
        doc["e_exact"] = e_exact;
        Json& dev = doc["deviation_kcal_mol"];
        const auto deviation = [&](const Json& e) -> Json {
          if (!e.is_number()) return nullptr;
          return std::abs(e.get<double>() - e_exact) * kHartreeToKcalPerMol;
        };
        dev["hf"] = deviation(doc["e_hf"]);
        dev["vqe"] = deviation(doc["e_vqe"]);
        dev["pt"] = deviation(doc["e_pt_total"]);
      });
    }
  } catch (const std::exception& e) {
    report.ok = false;
    report.failed_stage = stage;
    report.message = e.what();
    doc["status"] = "error";
    doc["error"] = {{"stage", stage}, {"message", e.what()}};
  }
  if (config.report_timings) doc["timings_s"] = timings;

  if (!config.output_dir.empty()) {
    write_atomically(config.output_dir / "report.json", doc.dump(2) + "\n");
    write_atomically(config.output_dir / "trace.csv", trace_csv(trace));
  }
  return report;
}

std::string summary_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "id,e_hf,e_vqe,e_pt_total,e_exact,dev_hf_kcal_mol,dev_vqe_kcal_mol,"
         "dev_pt_kcal_mol,n_parameters,status,error\n";
  for (const auto& row : rows) {
    const Json& d = row.report.document;
    const auto get = [&](const char* k) {
      return d.contains(k) ? d[k] : Json(nullptr);
    };
    const Json dev = d.contains("deviation_kcal_mol")
                         ? d["deviation_kcal_mol"]
                         : Json::object();
    const auto dget = [&](const char* k) {
      return dev.contains(k) ? dev[k] : Json(nullptr);
    };
    const Json np = get("n_parameters");
    out << csv_quote(row.id) << ',' << csv_number(get("e_hf")) << ','
        << csv_number(get("e_vqe")) << ',' << csv_number(get("e_pt_total"))
        << ',' << csv_number(get("e_exact")) << ',' << csv_number(dget("hf"))
        << ',' << csv_number(dget("vqe")) << ',' << csv_number(dget("pt"))
        << ',' << (np.is_number() ? std::to_string(np.get<int>()) : "")
        << ',' << (row.report.ok ? "ok" : "error") << ','
        << csv_quote(row.report.ok ? ""
                                   : row.report.failed_stage + ": " +
                                         row.report.message)
        << '\n';
  }
  return out.str();
}

std::vector<SweepRow> sweep(const std::vector<RunConfig>& configs,
                            const fs::path& summary_dir) {
  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (const RunConfig& c : configs) {
    SweepRow row{c.id, {}};
    try {
      row.report = run_pipeline(c);
    } catch (const std::exception& e) {
      row.report.ok = false;
      row.report.failed_stage = "config";
      row.report.message = e.what();
    }
    rows.push_back(std::move(row));
  }
  if (!summary_dir.empty())
    write_atomically(summary_dir / "summary.csv", summary_csv(rows));
  return rows;
}

std::vector<CurvePoint> deviation_curve(const RunConfig& config) {
  validate_config(config);
  if (!is_adaptive(config.method))
    throw ConfigError("deviation curves need an adaptive method");
  const Workspace w = prepare_workspace(config);
  const Pool pool = method_pool(config, w);
  const Pool pt_pool = subspace_pool(config, w);
  const double e_exact =
      exact_ground_state(w.hamiltonian, Sector{w.ints.n_electrons, w.ints.ms2})
          .eigenvalues.front();

  std::vector<CurvePoint> curve;
  const auto record = [&](const Ansatz& ansatz) {
    const State ref = prepare_state(ansatz, w.hf);
    const double e0 = energy(w.hamiltonian, ref);
    const auto dev = [&](double e) {
      return std::abs(e - e_exact) * kHartreeToKcalPerMol;
    };
    const auto pt_dev = [&](PtMethod m) {
      try {
        return dev(run_pt(m, w.hamiltonian, ref, e0, ansatz, w.hf, pt_pool,
                          config)
                       .e_total);
      } catch (const NumericalError&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    curve.push_back({static_cast<int>(ansatz.size()), dev(e0),
                     pt_dev(PtMethod::mrpt), pt_dev(PtMethod::mrpt_d),
                     pt_dev(PtMethod::stpt), pt_dev(PtMethod::stpt_d)});
  };

  record(Ansatz{});
  AdaptSettings settings = adapt_settings(config);
  settings.on_iteration = [&](const AdaptIteration&, const Ansatz& a) {
    record(a);
  };
  adapt_vqe(w.hamiltonian, pool, w.hf, settings);
  return curve;
}

std::string gnuplot_data(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << "# n_parameters adapt mrpt mrpt_d stpt stpt_d (kcal/mol)\n";
  char buf[160];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%d %.10g %.10g %.10g %.10g %.10g\n",
                  p.n_parameters, p.adapt, p.mrpt, p.mrpt_d, p.stpt, p.stpt_d);
    out << buf;
  }
  return out.str();
}

}  // namespace pvqe
