// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "pvqe/optimizer.hpp"
#include "pvqe/pauli.hpp"
#include "pvqe/pools.hpp"
#include "pvqe/statevector.hpp"

namespace pvqe {

enum class AnsatzKind { product, summed };

/// Ordered generators with one parameter each.
///
/// Product kind prepares e^{θ_N τ_N} ⋯ e^{θ_1 τ_1}|ref⟩ (element 0 acts
/// first); summed kind prepares e^{Σ θ_μ τ_μ}|ref⟩.
struct Ansatz {
  AnsatzKind kind = AnsatzKind::product;
  std::vector<PoolOperator> operators;
  Eigen::VectorXd parameters;

  std::size_t size() const { return operators.size(); }
  bool empty() const { return operators.empty(); }
  void append(PoolOperator op, double theta = 0.0);
  /// Σ θ_μ τ_μ.
  PauliSum summed_generator() const;
  std::vector<std::string> labels() const;
};

State prepare_state(const Ansatz& ansatz, const State& reference,
                    double tol = kDefaultExpTolerance);

/// g_μ = 2 Re⟨ψ|H τ_μ|ψ⟩ = ∂E/∂θ at θ = 0 for an appended e^{θτ_μ}.
Eigen::VectorXd compute_pool_gradients(const PauliSum& h, const State& state,
                                       const Pool& pool);

double ansatz_energy(const PauliSum& h, const Ansatz& ansatz,
                     const State& reference);

/// Product ansätze: exact reverse-sweep gradient. Summed ansätze: central
/// differences with step `fd_step`.
Eigen::VectorXd ansatz_gradient(const PauliSum& h, const Ansatz& ansatz,
                                const State& reference, double fd_step = 1e-6,
                                double* energy_out = nullptr);

struct OptimizerSettings {
  double gtol = 1e-4;
  int max_iter = 1000;
  double fd_step = 1e-6;
};

struct OptimizationResult {
  Eigen::VectorXd parameters;
  double energy = 0.0;
  /// ‖∇E‖∞ at the returned point.
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Line search could not make progress; best point returned.
  bool line_search_warning = false;
};

OptimizationResult optimize_parameters(const PauliSum& h, const Ansatz& ansatz,
                                       const State& reference,
                                       const OptimizerSettings& settings = {});

enum class VqeStatus { converged, pool_exhausted, stalled, max_iterations };
std::string to_string(VqeStatus status);

struct AdaptIteration {
  int iteration;
  int n_parameters;
  double energy;
  double gradient_norm;
  std::vector<std::string> selected;
};

struct AdaptSettings {
  double epsilon = 0.1;
  int m_per_iter = 1;
  OptimizerSettings optimizer;
  int max_iterations = 500;
  /// Whether an operator already in the ansatz may be selected again.
  bool allow_reuse = true;
  /// Called after every optimized iteration with the current ansatz.
  std::function<void(const AdaptIteration&, const Ansatz&)> on_iteration;
};

struct VqeResult {
  double energy = 0.0;
  Ansatz ansatz;
  State state;
  int iterations = 0;
  std::vector<double> gradient_norm_history;
  std::vector<double> energy_history;
  std::vector<AdaptIteration> trace;
  int n_parameters = 0;
  VqeStatus status = VqeStatus::converged;
  bool optimizer_warning = false;
};

VqeResult adapt_vqe(const PauliSum& h, const Pool& pool, const State& reference,
                    const AdaptSettings& settings);

/// One optimization of the summed-kind ansatz over the whole pool, starting
/// from θ = 0.
VqeResult uccsd_vqe(const PauliSum& h, const Pool& pool, const State& reference,
                    const OptimizerSettings& settings = {});

}  // namespace pvqe
