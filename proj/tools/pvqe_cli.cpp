// SPDX-License-Identifier: Apache-2.0
// Command-line front end: run, sweep, exact, validate, plot.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pvqe/error.hpp"
#include "pvqe/integrals.hpp"
#include "pvqe/oracle.hpp"
#include "pvqe/pipeline.hpp"

namespace fs = std::filesystem;
using Overrides = std::vector<std::pair<std::string, std::string>>;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitCompute = 2;

// Turns leftover "--key value" / "--key=value" arguments into overrides.
Overrides collect_overrides(const std::vector<std::string>& extras) {
  Overrides out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3)
      throw pvqe::ConfigError("unexpected argument '" + arg + "'");
    const std::string body = arg.substr(2);
    if (const auto eq = body.find('='); eq != std::string::npos) {
      out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (i + 1 >= extras.size())
      throw pvqe::ConfigError("override '" + arg + "' needs a value");
    out.emplace_back(body, extras[++i]);
  }
  return out;
}

int cmd_run(const fs::path& config_path, const Overrides& overrides) {
  const pvqe::RunConfig cfg = pvqe::load_config(config_path, overrides);
  const pvqe::RunReport report = pvqe::run_pipeline(cfg);
  std::cout << report.document.dump(2) << '\n';
  if (!report.ok) {
    std::cerr << "error in stage '" << report.failed_stage
              << "': " << report.message << '\n';
    return kExitCompute;
  }
  return kExitOk;
}

int cmd_sweep(const fs::path& dir, fs::path out_dir,
              const Overrides& overrides) {
  if (!fs::is_directory(dir))
    throw pvqe::ConfigError("sweep needs a directory of configs: " +
                            dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (out_dir.empty()) out_dir = dir / "sweep_out";

  // Configs are validated up front; a broken one becomes a failed row.
  std::vector<pvqe::SweepRow> rows;
  for (const auto& f : files) {
    try {
      pvqe::RunConfig cfg = pvqe::load_config(f, overrides);
      if (cfg.output_dir.empty()) cfg.output_dir = out_dir / cfg.id;
      auto one = pvqe::sweep({cfg});
      rows.push_back(std::move(one.front()));
    } catch (const pvqe::ConfigError& e) {
      pvqe::SweepRow row{f.stem().string(), {}};
      row.report.ok = false;
      row.report.failed_stage = "config";
      row.report.message = e.what();
      rows.push_back(std::move(row));
    }
  }
  const std::string csv = pvqe::summary_csv(rows);
  pvqe::write_atomically(out_dir / "summary.csv", csv);
  std::cout << csv;
  const bool all_ok = std::all_of(rows.begin(), rows.end(),
                                  [](const auto& r) { return r.report.ok; });
  return all_ok ? kExitOk : kExitCompute;
}

int cmd_exact(const fs::path& fcidump, double alpha, double spin) {
  const pvqe::IntegralSet ints = pvqe::read_fcidump(fcidump);
  pvqe::PauliSum h = pvqe::jordan_wigner(pvqe::build_hamiltonian(ints));
  if (alpha > 0.0)
    h = pvqe::simplify(h + pvqe::build_s2_penalty(ints.n_spatial, alpha, spin));
  const auto occ =
      pvqe::hartree_fock_occupation(ints.n_spatial, ints.n_alpha(), ints.n_beta());
  const double e_hf =
      pvqe::energy(h, pvqe::hartree_fock_state(h.n_qubits(), occ));
  const pvqe::SpectrumResult r =
      pvqe::exact_ground_state(h, pvqe::Sector{ints.n_electrons, ints.ms2});
  const double e = r.eigenvalues.front();
  pvqe::Json out{{"fcidump", fcidump.string()},
                 {"n_qubits", h.n_qubits()},
                 {"n_electrons", ints.n_electrons},
                 {"e_hf", e_hf},
                 {"e_exact", e},
                 {"correlation_kcal_mol",
                  (e - e_hf) * pvqe::kHartreeToKcalPerMol},
                 {"residual", r.residual}};
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_plot(const fs::path& config_path, const fs::path& out,
             const Overrides& overrides) {
  const pvqe::RunConfig cfg = pvqe::load_config(config_path, overrides);
  const std::string data = pvqe::gnuplot_data(pvqe::deviation_curve(cfg));
  if (out.empty())
    std::cout << data;
  else
    pvqe::write_atomically(out, data);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbative VQE toolkit"};
  app.require_subcommand(1);

  std::string config_path, sweep_dir, sweep_out, fcidump, plot_out;
  double alpha = 0.0, spin = 0.0;

  auto* run = app.add_subcommand("run", "Run one configuration")
                  ->allow_extras();
  run->add_option("config", config_path, "Run configuration JSON")
      ->required();

  auto* sweep = app.add_subcommand("sweep", "Run every *.json in a directory")
                    ->allow_extras();
  sweep->add_option("dir", sweep_dir, "Directory of configurations")
      ->required();
  sweep->add_option("--out", sweep_out, "Directory for summary.csv");

  auto* exact = app.add_subcommand("exact", "Exact ground state of an FCIDUMP");
  exact->add_option("fcidump", fcidump)->required();
  exact->add_option("--penalty-alpha", alpha, "S^2 penalty strength");
  exact->add_option("--penalty-spin", spin, "Target total spin");

  auto* validate =
      app.add_subcommand("validate", "Check a configuration")->allow_extras();
  validate->add_option("config", config_path)->required();

  auto* plot = app.add_subcommand(
                     "plot", "Deviation vs parameter count as gnuplot data")
                   ->allow_extras();
  plot->add_option("config", config_path)->required();
  plot->add_option("--out", plot_out, "Output .dat file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, collect_overrides(run->remaining()));
    if (*sweep)
      return cmd_sweep(sweep_dir, sweep_out,
                       collect_overrides(sweep->remaining()));
    if (*exact) return cmd_exact(fcidump, alpha, spin);
    if (*validate) {
      const auto cfg = pvqe::load_config(
          config_path, collect_overrides(validate->remaining()));
      std::cout << pvqe::config_to_json(cfg).dump(2) << '\n';
      return kExitOk;
    }
    if (*plot)
      return cmd_plot(config_path, plot_out,
                      collect_overrides(plot->remaining()));
  } catch (const pvqe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitOk;
}
