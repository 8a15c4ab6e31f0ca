// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dense_reference.hpp"
#include "pvqe/error.hpp"
#include "pvqe/pipeline.hpp"

using namespace pvqe;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pvqe_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig base(const std::string& fixture, Method m) {
  RunConfig c;
  c.id = fixture;
  c.fcidump = dense::fixture_path(fixture);
  c.method = m;
  return c;
}

}  // namespace

TEST(Pipeline, HartreeFockWithExactEnergy) {
  const RunReport r = run_pipeline(base("h2_sto3g", Method::hf));
  ASSERT_TRUE(r.ok) << r.message;
  const auto& d = r.document;
  const auto info = dense::fixture("h2_sto3g");
  EXPECT_NEAR(d["e_hf"].get<double>(), info.e_hf, 1e-8);
  EXPECT_NEAR(d["e_exact"].get<double>(), info.e_fci, 1e-8);
  EXPECT_TRUE(d["e_vqe"].is_null());
  EXPECT_TRUE(d["n_parameters"].is_null());
  EXPECT_NEAR(d["deviation_kcal_mol"]["hf"].get<double>(),
              (info.e_hf - info.e_fci) * 627.509474, 1e-6);
  EXPECT_TRUE(d["pt"].is_null());
}

TEST(Pipeline, LithiumHydrideAdaptWithMrpt) {
  RunConfig c = base("lih_sto3g_fc", Method::adapt_vqe);
  c.pt = PtMethod::mrpt;
  const RunReport r = run_pipeline(c);
  ASSERT_TRUE(r.ok) << r.message;
  const auto& d = r.document;
  EXPECT_LE(d["n_parameters"].get<int>(), 5);
  EXPECT_LE(std::abs(d["deviation_kcal_mol"]["pt"].get<double>()), 0.1);
  EXPECT_NEAR(d["pt"]["e_total"].get<double>(),
              d["pt"]["e_reference"].get<double>() + d["pt"]["delta_e"].get<double>(), 1e-12);
  EXPECT_EQ(d["e_pt_total"], d["pt"]["e_total"]);
}

TEST(Pipeline, StptNeedsVariationalMethod) {
  Json doc = {{"fcidump", dense::fixture_path("h2_sto3g").string()},
              {"method", "exact"},
              {"pt", "stpt"}};
  EXPECT_THROW(config_from_json(doc), ConfigError);
  doc["method"] = "adapt_vqe";
  EXPECT_NO_THROW(config_from_json(doc));
}

TEST(Pipeline, ConfigErrors) {
  const std::string f = dense::fixture_path("h2_sto3g").string();
  EXPECT_THROW(config_from_json({{"fcidump", f}, {"bogus", 1}}), ConfigError);
  EXPECT_THROW(config_from_json({{"fcidump", f}, {"pool", {{"bogus", true}}}}), ConfigError);
  EXPECT_THROW(config_from_json({{"fcidump", f}, {"epsilon", "big"}}), ConfigError);
  EXPECT_THROW(config_from_json({{"fcidump", f}, {"epsilon", 0.0}}), ConfigError);
  EXPECT_THROW(config_from_json({{"fcidump", f}, {"method", "dmrg"}}), ConfigError);
  EXPECT_THROW(config_from_json({{"fcidump", f}, {"pt_pool", "other"}}), ConfigError);
  EXPECT_THROW(config_from_json({{"fcidump", f}, {"penalty", {{"spin", 0.3}}}}), ConfigError);
  EXPECT_THROW(config_from_json(Json::object()), ConfigError);
}

TEST(Pipeline, OverridesAndRoundTrip) {
  const fs::path dir = scratch("overrides");
  const Json doc = {{"fcidump", dense::fixture_path("h2_sto3g").string()},
                    {"method", "adapt_vqe"}};
  std::ofstream(dir / "run_a.json") << doc.dump();
  const RunConfig c = load_config(dir / "run_a.json",
                                  {{"epsilon", "0.001"}, {"pool.i_variant", "true"}, {"pt", "mrpt_d"}});
  EXPECT_EQ(c.id, "run_a");
  EXPECT_EQ(c.epsilon, 0.001);
  EXPECT_TRUE(c.pool.i_variant);
  EXPECT_EQ(c.pt, PtMethod::mrpt_d);
  const RunConfig again = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(again), config_to_json(c));

  Json j = Json::object();
  apply_override(j, "optimizer.gtol", "1e-6");
  apply_override(j, "id", "plain text");
  EXPECT_EQ(j["optimizer"]["gtol"].get<double>(), 1e-6);
  EXPECT_EQ(j["id"].get<std::string>(), "plain text");
}

TEST(Pipeline, ReportKeysStableOnFailure) {
  const RunReport good = run_pipeline(base("h2_sto3g", Method::adapt_vqe));
  RunConfig bad = base("h2_sto3g", Method::adapt_vqe);
  bad.fcidump = "/nonexistent/file.fcidump";
  const RunReport r = run_pipeline(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failed_stage, "parse");
  EXPECT_EQ(r.document["status"], "error");
  EXPECT_EQ(r.document["error"]["stage"], "parse");
  std::vector<std::string> a, b;
  for (const auto& [k, v] : good.document.items()) a.push_back(k);
  for (const auto& [k, v] : r.document.items()) b.push_back(k);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(r.document["e_vqe"].is_null());
}

TEST(Pipeline, WritesReportAndTrace) {
  const fs::path dir = scratch("outputs");
  RunConfig c = base("h4_chain", Method::adapt_vqe);
  c.output_dir = dir / "h4";
  const RunReport r = run_pipeline(c);
  ASSERT_TRUE(r.ok) << r.message;
  const Json disk = Json::parse(slurp(c.output_dir / "report.json"));
  EXPECT_EQ(disk, r.document);
  const std::string trace = slurp(c.output_dir / "trace.csv");
  EXPECT_EQ(trace.substr(0, trace.find('\n')),
            "iteration,n_parameters,energy_hartree,grad_norm,selected_labels");
  const auto lines = std::count(trace.begin(), trace.end(), '\n');
  EXPECT_EQ(lines, 1 + r.document["adapt_iterations"].get<int>());
  for (const auto& e : fs::directory_iterator(c.output_dir))
    EXPECT_EQ(e.path().extension() == ".tmp", false) << e.path();
}

TEST(Pipeline, WriteAtomicallyReplaces) {
  const fs::path dir = scratch("atomic");
  write_atomically(dir / "x.txt", "one");
  write_atomically(dir / "x.txt", "two");
  EXPECT_EQ(slurp(dir / "x.txt"), "two");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
}

TEST(Pipeline, DeterministicReports) {
  RunConfig c = base("h4_chain", Method::adapt_vqe);
  c.pt = PtMethod::stpt_d;
  EXPECT_EQ(run_pipeline(c).document.dump(), run_pipeline(c).document.dump());
}

TEST(Sweep, EmptyAndRepeatedConfigs) {
  const fs::path dir = scratch("sweep");
  EXPECT_TRUE(sweep({}, dir).empty());
  EXPECT_EQ(slurp(dir / "summary.csv").substr(0, 3), "id,");

  RunConfig c = base("h2_sto3g", Method::adapt_vqe);
  RunConfig broken = c;
  broken.id = "broken";
  broken.fcidump = "/nonexistent.fcidump";
  const auto rows = sweep({c, c, broken}, dir);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].report.document.dump(), rows[1].report.document.dump());
  EXPECT_FALSE(rows[2].report.ok);
  const std::string csv = slurp(dir / "summary.csv");
  std::istringstream in(csv);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[1], lines[2]);
  EXPECT_NE(lines[3].find("error"), std::string::npos);
}

TEST(DeviationCurve, StartsAtHartreeFockAndFormats) {
  RunConfig c = base("h2_sto3g", Method::adapt_vqe);
  c.epsilon = 1e-3;
  const auto curve = deviation_curve(c);
  ASSERT_GE(curve.size(), 2u);
  EXPECT_EQ(curve.front().n_parameters, 0);
  const auto info = dense::fixture("h2_sto3g");
  EXPECT_NEAR(curve.front().adapt, (info.e_hf - info.e_fci) * 627.509474, 1e-6);
  EXPECT_LT(std::abs(curve.back().adapt), 1e-3);
  const std::string dat = gnuplot_data(curve);
  EXPECT_EQ(dat[0], '#');
  EXPECT_EQ(std::count(dat.begin(), dat.end(), '\n'), static_cast<long>(curve.size()) + 1);
}

TEST(Pipeline, PenaltyReportsSpin) {
  RunConfig c = base("h4_stretched", Method::qeb_adapt_vqe);
  c.penalty = PenaltyConfig{};
  c.epsilon = 1e-3;
  const RunReport r = run_pipeline(c);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_LT(r.document["s2_expectation"].get<double>(), 1e-4);
}

TEST(Pipeline, MetadataSidecarFiltersPool) {
  const fs::path dir = scratch("meta");
  const Json meta = {{"k_labels", {{0}, {1}, {0}, {1}}}, {"lattice_modulus", {2}}};
  std::ofstream(dir / "h4.json") << meta.dump();
  RunConfig c = base("h4_chain", Method::adapt_vqe);
  const auto unfiltered = run_pipeline(c).document["pool_size"].get<int>();
  c.metadata = dir / "h4.json";
  const RunReport r = run_pipeline(c);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_LT(r.document["pool_size"].get<int>(), unfiltered);
}
