// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and must not be loosened.
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dense_reference.hpp"
#include "pvqe/integrals.hpp"
#include "pvqe/oracle.hpp"
#include "pvqe/pipeline.hpp"
#include "pvqe/pt.hpp"
#include "pvqe/vqe.hpp"

using namespace pvqe;

namespace {

constexpr double kOracleTol = 1e-10;
constexpr double kAdaptH2Tol = 1e-6;
constexpr double kAdaptH4Tol = 1e-5;
constexpr double kFdStep = 1e-5;
constexpr double kFdTol = 1e-6;
constexpr double kOrthogonalityTol = 1e-8;
constexpr double kStationarityTol = 1e-8;
constexpr double kImprovedFraction = 0.95;
// Below this bare error (kcal/mol) a reference is treated as converged and
// left out of the error-reduction statistics.
constexpr double kConvergedKcal = 1e-3;
constexpr double kUccsdTol = 1e-7;
constexpr double kSpinTol = 1e-4;

struct System {
  IntegralSet ints;
  PauliSum h;
  State hf;
  Pool pool;
  int n_qubits = 0;
};

System from_integrals(IntegralSet ints) {
  System s;
  s.ints = std::move(ints);
  s.h = jordan_wigner(build_hamiltonian(s.ints));
  s.n_qubits = s.h.n_qubits();
  s.hf = hartree_fock_state(
      s.n_qubits,
      hartree_fock_occupation(s.ints.n_spatial, s.ints.n_alpha(), s.ints.n_beta()));
  s.pool = build_fermionic_pool(s.ints.n_spatial, s.ints.n_alpha(), s.ints.n_beta());
  return s;
}

System fixture(const std::string& name) {
  return from_integrals(read_fcidump(dense::fixture_path(name)));
}

double exact_energy(const System& s) {
  return exact_ground_state(s.h, Sector{s.ints.n_electrons, s.ints.ms2}).eigenvalues[0];
}

std::vector<dense::Matrix> generators(const Pool& pool, int n) {
  std::vector<dense::Matrix> out;
  for (const auto& op : pool.operators) out.push_back(dense::generator_matrix(op, n));
  return out;
}

std::uint64_t hf_index(const State& s) {
  Eigen::Index i = 0;
  s.amplitudes().cwiseAbs().maxCoeff(&i);
  return static_cast<std::uint64_t>(i);
}

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// All four corrections against the explicit-matrix oracle.
double oracle_error(const System& s, const Ansatz& a) {
  const State ref = prepare_state(a, s.hf);
  const double e0 = energy(s.h, ref);
  const dense::Matrix h = dense::to_matrix(s.h);
  const auto sub = build_mrpt_subspace(s.h, ref, s.pool);
  const auto mr = dense::mrpt_reference(h, ref.amplitudes(), e0, generators(s.pool, s.n_qubits));
  const auto st = dense::stpt_reference(h, dense::ansatz_unitary(a, s.n_qubits), hf_index(s.hf),
                                        s.n_qubits);
  double worst = 0.0;
  worst = std::max(worst, std::abs(mrpt_correction(s.h, ref, e0, sub).delta_e - mr.delta_full));
  worst = std::max(worst, std::abs(mrpt_diagonal(s.h, ref, e0, sub).delta_e - mr.delta_diagonal));
  worst = std::max(worst, std::abs(stpt_correction(s.h, a, s.hf, e0).delta_e - st.delta_full));
  worst = std::max(worst, std::abs(stpt_diagonal(s.h, a, s.hf, e0).delta_e - st.delta_diagonal));
  return worst;
}

void oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> th(-0.3, 0.3);
  double worst = 0.0;
  int cases = 0;
  for (int trial = 0; trial < 21; ++trial) {
    const int n_spatial = 2 + trial % 3;
    const System s = from_integrals(dense::random_integrals(n_spatial, 2 * ((n_spatial + 1) / 2), rng));
    Ansatz a;
    for (int k = 0; k < 3; ++k)
      a.append(s.pool.operators[rng() % s.pool.size()], th(rng));
    worst = std::max(worst, oracle_error(s, a));
    ++cases;
  }
  for (const char* name : {"h2_sto3g", "h4_chain"}) {
    const System s = fixture(name);
    AdaptSettings st;
    st.epsilon = 0.05;
    worst = std::max(worst, oracle_error(s, adapt_vqe(s.h, s.pool, s.hf, st).ansatz));
    ++cases;
  }
  report("oracle_equivalence", worst <= kOracleTol,
         fmt("%g cases, max |dE - oracle| = %.3e Ha", cases, worst));
}

void adapt_convergence() {
  const System h2 = fixture("h2_sto3g");
  AdaptSettings a;
  a.epsilon = 1e-3;
  const VqeResult r2 = adapt_vqe(h2.h, h2.pool, h2.hf, a);
  const double err2 = std::abs(r2.energy - exact_energy(h2));

  const System h4 = fixture("h4_chain");
  AdaptSettings b;
  b.epsilon = 1e-4;
  const VqeResult r4 = adapt_vqe(h4.h, h4.pool, h4.hf, b);
  const double err4 = std::abs(r4.energy - exact_energy(h4));

  const bool pass = err2 <= kAdaptH2Tol && r2.iterations <= 3 && err4 <= kAdaptH4Tol;
  report("adapt_convergence", pass,
         fmt("H2 error %.3e Ha in ", err2, 0) + std::to_string(r2.iterations) +
             fmt(" iterations, H4 error %.3e Ha", err4));
}

void gradient_check() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(-0.5, 0.5);
  double worst = 0.0;
  for (const char* name : {"h2_sto3g", "h4_chain", "h4_stretched"}) {
    const System s = fixture(name);
    Ansatz a;
    for (int k = 0; k < 3; ++k) a.append(s.pool.operators[rng() % s.pool.size()], th(rng));
    const State psi = prepare_state(a, s.hf);
    const Eigen::VectorXd g = compute_pool_gradients(s.h, psi, s.pool);
    for (std::size_t mu = 0; mu < s.pool.size(); ++mu) {
      Ansatz b = a;
      b.append(s.pool.operators[mu], kFdStep);
      const double plus = ansatz_energy(s.h, b, s.hf);
      b.parameters(static_cast<Eigen::Index>(b.size() - 1)) = -kFdStep;
      const double minus = ansatz_energy(s.h, b, s.hf);
      worst = std::max(worst, std::abs(g(mu) - (plus - minus) / (2 * kFdStep)));
    }
  }
  report("gradient_finite_difference", worst <= kFdTol,
         fmt("max |g - g_fd| = %.3e", worst));
}

void orthogonality() {
  double worst = 0.0;
  for (const char* name : {"h2_sto3g", "h4_chain", "h4_stretched", "lih_sto3g_fc"}) {
    const System s = fixture(name);
    AdaptSettings st;
    st.epsilon = 0.05;
    const State ref = adapt_vqe(s.h, s.pool, s.hf, st).state;
    const auto sub = build_mrpt_subspace(s.h, ref, s.pool);
    for (const auto& b : sub.basis_states) worst = std::max(worst, std::abs(inner(ref, b)));
  }
  report("subspace_orthogonality", worst < kOrthogonalityTol,
         fmt("max |<psi0|psi_mu>| = %.3e", worst));
}

void stationarity() {
  double worst_g = 0.0, worst_c = 0.0;
  for (const char* name : {"h2_sto3g", "h4_chain", "h4_stretched"}) {
    const System s = fixture(name);
    const State ex =
        exact_ground_state(s.h, Sector{s.ints.n_electrons, s.ints.ms2}).ground_state;
    worst_g = std::max(worst_g, compute_pool_gradients(s.h, ex, s.pool).cwiseAbs().maxCoeff());
    worst_c = std::max(worst_c,
                       build_mrpt_subspace(s.h, ex, s.pool).coupling.cwiseAbs().maxCoeff());
  }
  report("exact_state_stationarity", worst_g < kStationarityTol && worst_c < kStationarityTol,
         fmt("max |g| = %.3e, max |<psi_mu|H|psi0>| = %.3e", worst_g, worst_c));
}

void error_reduction() {
  int improved = 0, total = 0;
  double sum_full = 0.0, sum_diag = 0.0;
  int n_pairs = 0;
  for (const char* name : {"h2_stretched", "h4_chain", "h4_stretched", "h4_alternating", "lih_sto3g_fc"}) {
    RunConfig c;
    c.id = name;
    c.fcidump = dense::fixture_path(name);
    c.epsilon = 1e-3;
    for (const CurvePoint& p : deviation_curve(c)) {
      const double bare = std::abs(p.adapt);
      if (bare < kConvergedKcal) continue;
      for (double v : {p.mrpt, p.mrpt_d, p.stpt, p.stpt_d}) {
        ++total;
        if (std::abs(v) < bare) ++improved;
      }
      sum_full += std::abs(p.mrpt) + std::abs(p.stpt);
      sum_diag += std::abs(p.mrpt_d) + std::abs(p.stpt_d);
      ++n_pairs;
    }
  }
  const double fraction = total ? static_cast<double>(improved) / total : 0.0;
  const double mean_full = sum_full / (2.0 * n_pairs), mean_diag = sum_diag / (2.0 * n_pairs);
  report("error_reduction", total > 0 && fraction >= kImprovedFraction && mean_diag >= mean_full,
         fmt("%.1f%% of corrected energies improve", 100 * fraction) +
             fmt(", mean error full %.4f vs diagonal %.4f kcal/mol", mean_full, mean_diag));
}

void uccsd_h2() {
  double worst = 0.0;
  for (const char* name : {"h2_sto3g", "h2_stretched"}) {
    const System s = fixture(name);
    OptimizerSettings st;
    st.gtol = 1e-6;
    worst = std::max(worst, std::abs(uccsd_vqe(s.h, s.pool, s.hf, st).energy - exact_energy(s)));
  }
  report("uccsd_h2", worst <= kUccsdTol, fmt("max error %.3e Ha", worst));
}

void qeb_spin_penalty() {
  double worst = 0.0;
  std::string detail;
  for (const char* name : {"h4_chain", "h4_stretched"}) {
    RunConfig c;
    c.id = name;
    c.fcidump = dense::fixture_path(name);
    c.method = Method::qeb_adapt_vqe;
    c.penalty = PenaltyConfig{0.5, 0.0};
    c.epsilon = 1e-3;
    c.compute_exact = false;
    const RunReport r = run_pipeline(c);
    if (!r.ok) {
      report("qeb_spin_penalty", false, std::string(name) + ": " + r.message);
      return;
    }
    worst = std::max(worst, std::abs(r.document["s2_expectation"].get<double>()));
  }
  report("qeb_spin_penalty", worst < kSpinTol, fmt("max <S^2> = %.3e", worst));
}

void determinism() {
  RunConfig c;
  c.id = "h4_chain";
  c.fcidump = dense::fixture_path("h4_chain");
  c.pt = PtMethod::mrpt;
  setenv("PVQE_NUM_THREADS", "1", 1);
  const std::string a = run_pipeline(c).document.dump();
  setenv("PVQE_NUM_THREADS", "3", 1);
  const std::string b = run_pipeline(c).document.dump();
  unsetenv("PVQE_NUM_THREADS");
  const std::string d = run_pipeline(c).document.dump();
  report("bitwise_determinism", a == b && a == d,
         a == b && a == d ? "three runs identical" : "reports differ");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks = {
      oracle_equivalence, adapt_convergence, gradient_check, orthogonality, stationarity,
      error_reduction, uccsd_h2, qeb_spin_penalty, determinism};
  for (const auto& check : checks) {
    try {
      check();
    } catch (const std::exception& e) {
      report("exception", false, e.what());
    }
  }
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
