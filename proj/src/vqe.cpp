// SPDX-License-Identifier: Apache-2.0
#include "pvqe/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"
#include "pvqe/error.hpp"

namespace pvqe {

void Ansatz::append(PoolOperator op, double theta) {
  operators.push_back(std::move(op));
  parameters.conservativeResize(static_cast<Eigen::Index>(operators.size()));
  parameters(parameters.size() - 1) = theta;
}

PauliSum Ansatz::summed_generator() const {
  if (operators.empty()) return PauliSum();
  PauliSum g(operators.front().generator.n_qubits());
  for (std::size_t k = 0; k < operators.size(); ++k)
    g += operators[k].generator * Complex(parameters(k));
  return simplify(g);
}

std::vector<std::string> Ansatz::labels() const {
  std::vector<std::string> out;
  for (const auto& op : operators) out.push_back(op.label);
  return out;
}

State prepare_state(const Ansatz& ansatz, const State& reference, double tol) {
  if (static_cast<std::size_t>(ansatz.parameters.size()) != ansatz.size())
    throw ContractError("ansatz has mismatched parameter count");
  if (ansatz.empty()) return reference;
  if (ansatz.kind == AnsatzKind::summed)
    return apply_exp(ansatz.summed_generator(), 1.0, reference, tol);
  State s = reference;
  for (std::size_t k = 0; k < ansatz.size(); ++k)
    s = apply_exp(ansatz.operators[k].generator, ansatz.parameters(k), s, tol);
  return s;
}

Eigen::VectorXd compute_pool_gradients(const PauliSum& h, const State& state,
                                       const Pool& pool) {
  const State h_state = apply_pauli_sum(h, state);
  Eigen::VectorXd g(static_cast<Eigen::Index>(pool.size()));
  detail::parallel_for(pool.size(), [&](std::size_t mu) {
    const State t = apply_pauli_sum(pool.operators[mu].generator, state);
    g(mu) = 2.0 * inner(h_state, t).real();
  });
  return g;
}

double ansatz_energy(const PauliSum& h, const Ansatz& ansatz,
                     const State& reference) {
  const double e = energy(h, prepare_state(ansatz, reference));
  if (!std::isfinite(e)) throw NumericalError("energy is not finite");
  return e;
}

Eigen::VectorXd ansatz_gradient(const PauliSum& h, const Ansatz& ansatz,
                                const State& reference, double fd_step,
                                double* energy_out) {
  const auto n = static_cast<Eigen::Index>(ansatz.size());
  Eigen::VectorXd grad(n);
  if (ansatz.kind == AnsatzKind::summed) {
    if (energy_out) *energy_out = ansatz_energy(h, ansatz, reference);
    detail::parallel_for(ansatz.size(), [&](std::size_t k) {
      Ansatz shifted = ansatz;
      shifted.parameters(k) += fd_step;
      const double plus = ansatz_energy(h, shifted, reference);
      shifted.parameters(k) = ansatz.parameters(k) - fd_step;
      const double minus = ansatz_energy(h, shifted, reference);
      grad(k) = (plus - minus) / (2.0 * fd_step);
    });
    return grad;
  }
  State phi = prepare_state(ansatz, reference);
  State sigma = apply_pauli_sum(h, phi);
  if (energy_out) {
    *energy_out = inner(phi, sigma).real();
    if (!std::isfinite(*energy_out))
      throw NumericalError("energy is not finite");
  }
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    const PauliSum& tau = ansatz.operators[k].generator;
    grad(k) = 2.0 * inner(sigma, apply_pauli_sum(tau, phi)).real();
    if (k == 0) break;
    const double theta = ansatz.parameters(k);
    phi = apply_exp(tau, -theta, phi);
    sigma = apply_exp(tau, -theta, sigma);
  }
  return grad;
}

OptimizationResult optimize_parameters(const PauliSum& h, const Ansatz& ansatz,
                                       const State& reference,
                                       const OptimizerSettings& settings) {
  OptimizationResult out;
  if (ansatz.empty()) {
    out.energy = energy(h, reference);
    out.converged = true;
    return out;
  }
  Ansatz work = ansatz;
  const Objective objective = [&](const Eigen::VectorXd& x,
                                  Eigen::VectorXd& grad) {
    work.parameters = x;
    double e = 0.0;
    grad = ansatz_gradient(h, work, reference, settings.fd_step, &e);
    return e;
  };
  BfgsSettings bfgs;
  bfgs.gtol = settings.gtol;
  bfgs.max_iter = settings.max_iter;
  const BfgsResult r = minimize_bfgs(objective, ansatz.parameters, bfgs);
  out.parameters = r.x;
  out.energy = r.value;
  out.gradient_norm = r.gradient.lpNorm<Eigen::Infinity>();
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.line_search_warning = r.line_search_failed;
  return out;
}

std::string to_string(VqeStatus status) {
  switch (status) {
    case VqeStatus::converged: return "converged";
    case VqeStatus::pool_exhausted: return "pool_exhausted";
    case VqeStatus::stalled: return "stalled";
    case VqeStatus::max_iterations: return "max_iterations";
  }
  return "unknown";
}

VqeResult adapt_vqe(const PauliSum& h, const Pool& pool, const State& reference,
                    const AdaptSettings& settings) {
  if (!(settings.epsilon > 0.0))
    throw ContractError("ADAPT threshold epsilon must be positive");
  if (settings.m_per_iter < 1)
    throw ContractError("ADAPT needs at least one operator per iteration");

  VqeResult res;
  res.state = reference;
  res.energy = energy(h, reference);
  res.energy_history.push_back(res.energy);
  std::vector<bool> used(pool.size(), false);
  std::vector<std::size_t> previous_selection;

  for (;;) {
    const Eigen::VectorXd g = compute_pool_gradients(h, res.state, pool);
    const double gnorm = g.norm();
    res.gradient_norm_history.push_back(gnorm);
    if (gnorm < settings.epsilon) {
      res.status = VqeStatus::converged;
      break;
    }
    if (res.iterations >= settings.max_iterations) {
      res.status = VqeStatus::max_iterations;
      break;
    }

    std::vector<std::size_t> order;
    for (std::size_t mu = 0; mu < pool.size(); ++mu)
      if (settings.allow_reuse || !used[mu]) order.push_back(mu);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return std::abs(g(a)) > std::abs(g(b));
                     });
    if (order.empty()) {
      res.status = VqeStatus::pool_exhausted;
      break;
    }
    order.resize(std::min<std::size_t>(order.size(), settings.m_per_iter));

    const std::size_t first_new = res.ansatz.size();
    std::vector<std::string> selected;
    for (std::size_t mu : order) {
      res.ansatz.append(pool.operators[mu], 0.0);
      used[mu] = true;
      selected.push_back(pool.operators[mu].label);
    }

    const OptimizationResult opt =
        optimize_parameters(h, res.ansatz, reference, settings.optimizer);
    res.ansatz.parameters = opt.parameters;
    res.optimizer_warning = res.optimizer_warning || opt.line_search_warning;
    res.state = prepare_state(res.ansatz, reference);
    res.energy = energy(h, res.state);
    ++res.iterations;
    res.energy_history.push_back(res.energy);

    AdaptIteration it{res.iterations, static_cast<int>(res.ansatz.size()),
                      res.energy, gnorm, selected};
    res.trace.push_back(it);
    if (settings.on_iteration) settings.on_iteration(it, res.ansatz);

    bool idle = true;
    for (std::size_t k = first_new; k < res.ansatz.size(); ++k)
      if (std::abs(res.ansatz.parameters(k)) >= 1e-12) idle = false;
    if (idle && order == previous_selection) {
      res.status = VqeStatus::stalled;
      break;
    }
    previous_selection = order;
  }
  res.n_parameters = static_cast<int>(res.ansatz.size());
  return res;
}

VqeResult uccsd_vqe(const PauliSum& h, const Pool& pool, const State& reference,
                    const OptimizerSettings& settings) {
  VqeResult res;
  res.ansatz.kind = AnsatzKind::summed;
  for (const auto& op : pool.operators) res.ansatz.append(op, 0.0);
  res.energy_history.push_back(energy(h, reference));
  const OptimizationResult opt =
      optimize_parameters(h, res.ansatz, reference, settings);
  res.ansatz.parameters = opt.parameters.size() ? opt.parameters
                                                : res.ansatz.parameters;
  res.state = prepare_state(res.ansatz, reference);
  res.energy = energy(h, res.state);
  res.energy_history.push_back(res.energy);
  res.gradient_norm_history.push_back(opt.gradient_norm);
  res.iterations = opt.iterations;
  res.n_parameters = static_cast<int>(res.ansatz.size());
  res.optimizer_warning = opt.line_search_warning;
  res.status = opt.converged ? VqeStatus::converged : VqeStatus::max_iterations;
  return res;
}

}  // namespace pvqe
