// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pvqe/pt.hpp"
#include "pvqe/vqe.hpp"

namespace pvqe {

using Json = nlohmann::ordered_json;

inline constexpr int kConfigSchema = 1;
inline constexpr int kReportSchema = 1;

enum class Method { hf, exact, adapt_vqe, qeb_adapt_vqe, uccsd_vqe };
std::string to_string(Method method);
Method method_from_string(const std::string& name);

struct PoolConfig {
  bool spin_adapted = true;
  bool i_variant = false;
  bool qeb = false;
  bool generalized = false;
  bool allow_reuse = true;
};

struct PenaltyConfig {
  double alpha = 0.5;
  double spin = 0.0;
};

struct RunConfig {
  std::string id;
  std::filesystem::path fcidump;
  std::optional<std::filesystem::path> metadata;
  Method method = Method::adapt_vqe;
  std::optional<PtMethod> pt;
  /// Pool used to build the MRPT subspace: "same", "fermionic" or "qeb".
  std::string pt_pool = "same";
  double epsilon = 0.1;
  int m_per_iter = 1;
  int max_adapt_iterations = 500;
  PoolConfig pool;
  std::optional<PenaltyConfig> penalty;
  double eps_r = kDefaultSvdThreshold;
  double prescreen_eta = 0.0;
  OptimizerSettings optimizer;
  std::optional<std::int64_t> seed;  // reserved
  std::filesystem::path output_dir;
  bool compute_exact = true;
  bool report_timings = false;
};

/// Parses and validates a configuration document. Relative paths resolve
/// against `base_dir`. Throws ConfigError.
RunConfig config_from_json(const Json& doc,
                           const std::filesystem::path& base_dir = {});
Json config_to_json(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, std::string>>&
                          overrides = {});
void validate_config(const RunConfig& config);

/// Sets `key` (dotted for nested objects) to `value`, parsed as JSON when
/// possible and kept as a string otherwise.
void apply_override(Json& doc, const std::string& key, const std::string& value);

struct RunReport {
  Json document;
  bool ok = true;
  std::string failed_stage;
  std::string message;
};

/// Runs all stages and writes report.json and trace.csv into
/// config.output_dir when it is non-empty. Stage failures are captured in
/// the report rather than thrown.
RunReport run_pipeline(const RunConfig& config);

struct SweepRow {
  std::string id;
  RunReport report;
};

/// Runs every configuration in order and writes summary.csv into
/// `summary_dir` when it is non-empty.
std::vector<SweepRow> sweep(const std::vector<RunConfig>& configs,
                            const std::filesystem::path& summary_dir = {});
std::string summary_csv(const std::vector<SweepRow>& rows);

/// Deviation from the exact energy (kcal/mol) after each ADAPT iteration,
/// bare and with every perturbative correction applied to that reference.
struct CurvePoint {
  int n_parameters = 0;
  double adapt = 0.0;
  double mrpt = 0.0;
  double mrpt_d = 0.0;
  double stpt = 0.0;
  double stpt_d = 0.0;
};

std::vector<CurvePoint> deviation_curve(const RunConfig& config);
std::string gnuplot_data(const std::vector<CurvePoint>& curve);

/// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path,
                      const std::string& text);

}  // namespace pvqe
