// SPDX-License-Identifier: Apache-2.0
#include "pvqe/pt.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "pvqe/error.hpp"

namespace pvqe {

std::string to_string(PtMethod method) {
  switch (method) {
    case PtMethod::mrpt: return "mrpt";
    case PtMethod::mrpt_d: return "mrpt_d";
    case PtMethod::stpt: return "stpt";
    case PtMethod::stpt_d: return "stpt_d";
  }
  return "unknown";
}

PtMethod pt_method_from_string(const std::string& name) {
  if (name == "mrpt") return PtMethod::mrpt;
  if (name == "mrpt_d") return PtMethod::mrpt_d;
  if (name == "stpt") return PtMethod::stpt;
  if (name == "stpt_d") return PtMethod::stpt_d;
  throw ConfigError("unknown perturbation method '" + name + "'");
}

namespace {

void check_reference_energy(const PauliSum& h, const State& reference,
                            double e0) {
  const double e_ref = energy(h, reference);
  if (std::abs(e_ref - e0) > 1e-10 * std::max(1.0, std::abs(e0)))
    throw ContractError("E0 does not match the reference expectation value");
}

/// Columns of `states` stacked into a dim × N matrix.
Eigen::MatrixXcd stack(const std::vector<State>& states) {
  if (states.empty()) return {};
  Eigen::MatrixXcd m(states.front().dimension(),
                     static_cast<Eigen::Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k)
    m.col(static_cast<Eigen::Index>(k)) = states[k].amplitudes();
  return m;
}

struct LinearSolve {
  Eigen::VectorXcd solution;
  double residual;
};

/// Solves (e0·I − hm) d = rhs for Hermitian hm.
LinearSolve solve_shifted(const Eigen::MatrixXcd& hm, double e0,
                          const Eigen::VectorXcd& rhs) {
  const Eigen::Index n = hm.rows();
  const Eigen::MatrixXcd a =
      e0 * Eigen::MatrixXcd::Identity(n, n) - 0.5 * (hm + hm.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of the projected system failed");
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double smallest = lam.cwiseAbs().minCoeff();
  if (smallest < 1e-12) {
    std::ostringstream msg;
    msg << "projected perturbative system is singular: smallest |eigenvalue| "
        << smallest << ", largest " << lam.cwiseAbs().maxCoeff();
    throw NumericalError(msg.str());
  }
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd d = v * (v.adjoint() * rhs).cwiseQuotient(
                               lam.cast<Complex>());
  return {d, (a * d - rhs).norm()};
}

/// Rotates each cluster of (nearly) equal singular values so the projected
/// Hamiltonian is diagonal inside it.
void canonicalize_degenerate(Eigen::MatrixXcd& x, const Eigen::VectorXd& s,
                             const Eigen::MatrixXcd& hmat) {
  const Eigen::Index r = s.size();
  for (Eigen::Index start = 0; start < r;) {
    Eigen::Index end = start + 1;
    while (end < r &&
           s(end - 1) - s(end) <= kSingularValueClusterGap * s(end - 1))
      ++end;
    const Eigen::Index width = end - start;
    if (width > 1) {
      const Eigen::MatrixXcd block = x.middleCols(start, width);
      Eigen::MatrixXcd hb = block.adjoint() * hmat * block;
      hb = 0.5 * (hb + hb.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hb);
      x.middleCols(start, width) = block * es.eigenvectors();
    }
    start = end;
  }
}

}  // namespace

PerturbativeSubspace build_mrpt_subspace(const PauliSum& h,
                                         const State& reference,
                                         const Pool& pool,
                                         double prescreen_eta) {
  if (std::abs(reference.norm() - 1.0) > 1e-10)
    throw ContractError("MRPT reference state is not normalized");
  const State h_ref = apply_pauli_sum(h, reference);

  std::vector<State> excited(pool.size());
  std::vector<Complex> coupling(pool.size());
  detail::parallel_for(pool.size(), [&](std::size_t mu) {
    excited[mu] = apply_pauli_sum(pool.operators[mu].generator, reference);
    coupling[mu] = inner(excited[mu], h_ref);
  });

  PerturbativeSubspace sub;
  std::vector<Complex> kept_coupling;
  for (std::size_t mu = 0; mu < pool.size(); ++mu) {
    if (std::abs(coupling[mu]) < prescreen_eta) continue;
    sub.basis_states.push_back(std::move(excited[mu]));
    sub.source_labels.push_back(pool.operators[mu].label);
    kept_coupling.push_back(coupling[mu]);
  }
  if (sub.basis_states.empty())
    throw NumericalError("empty perturbative subspace");

  const Eigen::MatrixXcd psi = stack(sub.basis_states);
  Eigen::MatrixXcd h_psi(psi.rows(), psi.cols());
  detail::parallel_for(sub.size(), [&](std::size_t k) {
    h_psi.col(static_cast<Eigen::Index>(k)) =
        apply_pauli_sum(h, sub.basis_states[k]).amplitudes();
  });
  sub.overlap = psi.adjoint() * psi;
  sub.hmat = psi.adjoint() * h_psi;
  sub.coupling = Eigen::Map<const Eigen::VectorXcd>(
      kept_coupling.data(), static_cast<Eigen::Index>(kept_coupling.size()));
  return sub;
}

OrthonormalBasis svd_orthogonalize(const PerturbativeSubspace& subspace,
                                   double eps_r) {
  return svd_orthogonalize(subspace.overlap, eps_r);
}

PTResult mrpt_correction(const PauliSum& h, const State& reference, double e0,
                         const PerturbativeSubspace& subspace, double eps_r) {
  check_reference_energy(h, reference, e0);
  const OrthonormalBasis basis = svd_orthogonalize(subspace, eps_r);
  PTResult r;
  r.method = PtMethod::mrpt;
  r.e_reference = e0;
  r.retained_rank = static_cast<int>(basis.singular_values.size());
  r.discarded_rank = basis.discarded;
  if (r.retained_rank > 0) {
    const Eigen::MatrixXcd& x = basis.combination;
    const Eigen::MatrixXcd ht = x.adjoint() * subspace.hmat * x;
    const Eigen::VectorXcd bt = x.adjoint() * subspace.coupling;
    const LinearSolve sol = solve_shifted(ht, e0, bt);
    r.delta_e = bt.dot(sol.solution).real();
    r.residual_norm = sol.residual;
    r.residual_warning = sol.residual > 1e-6;
  }
  r.e_total = r.e_reference + r.delta_e;
  return r;
}

PTResult mrpt_diagonal(const PauliSum& h, const State& reference, double e0,
                       const PerturbativeSubspace& subspace, double eps_r) {
  check_reference_energy(h, reference, e0);
  OrthonormalBasis basis = svd_orthogonalize(subspace, eps_r);
  canonicalize_degenerate(basis.combination, basis.singular_values,
                          subspace.hmat);
  PTResult r;
  r.method = PtMethod::mrpt_d;
  r.e_reference = e0;
  r.retained_rank = static_cast<int>(basis.singular_values.size());
  r.discarded_rank = basis.discarded;
  const Eigen::MatrixXcd& x = basis.combination;
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    const Eigen::VectorXcd col = x.col(k);
    const double e_k = col.dot(subspace.hmat * col).real();
    const double denom = e0 - e_k;
    if (std::abs(denom) < kDegenerateDenominator) {
      ++r.skipped_denominators;
      continue;
    }
    r.delta_e += std::norm(col.dot(subspace.coupling)) / denom;
  }
  r.e_total = r.e_reference + r.delta_e;
  return r;
}

std::vector<std::uint64_t> singles_doubles_determinants(std::uint64_t reference,
                                                        int n_qubits) {
  std::vector<int> occ, virt;
  for (int q = 0; q < n_qubits; ++q)
    ((reference >> q) & 1U ? occ : virt).push_back(q);
  std::set<std::uint64_t> dets;
  const auto bit = [](int q) { return std::uint64_t{1} << q; };
  for (int i : occ)
    for (int a : virt)
      if ((i & 1) == (a & 1)) dets.insert(reference ^ bit(i) ^ bit(a));
  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y)
      for (std::size_t u = 0; u < virt.size(); ++u)
        for (std::size_t w = u + 1; w < virt.size(); ++w) {
          const int i = occ[x], j = occ[y], a = virt[u], b = virt[w];
          if ((i & 1) + (j & 1) != (a & 1) + (b & 1)) continue;
          dets.insert(reference ^ bit(i) ^ bit(j) ^ bit(a) ^ bit(b));
        }
  return {dets.begin(), dets.end()};
}

EffectiveHamiltonianBlock build_stpt_block(const PauliSum& h,
                                           const Ansatz& ansatz,
                                           const State& reference_hf) {
  const int n = reference_hf.n_qubits();
  Eigen::Index hf_index = -1;
  for (Eigen::Index b = 0; b < reference_hf.dimension(); ++b)
    if (std::abs(reference_hf.amplitudes()(b)) > 0.0) {
      if (hf_index >= 0)
        throw ContractError("STPT reference must be a single determinant");
      hf_index = b;
    }
  if (hf_index < 0 ||
      std::abs(std::abs(reference_hf.amplitudes()(hf_index)) - 1.0) > 1e-12)
    throw ContractError("STPT reference must be a normalized determinant");

  EffectiveHamiltonianBlock blk;
  blk.determinants =
      singles_doubles_determinants(static_cast<std::uint64_t>(hf_index), n);
  const std::size_t m = blk.determinants.size();

  const State u_ref = prepare_state(ansatz, reference_hf);
  const State h_u_ref = apply_pauli_sum(h, u_ref);
  blk.e0 = inner(u_ref, h_u_ref).real();

  Eigen::MatrixXcd u_dets(reference_hf.dimension(),
                          static_cast<Eigen::Index>(m));
  Eigen::MatrixXcd h_u_dets(reference_hf.dimension(),
                            static_cast<Eigen::Index>(m));
  detail::parallel_for(m, [&](std::size_t k) {
    const State u = prepare_state(ansatz, State::basis(n, blk.determinants[k]));
    u_dets.col(static_cast<Eigen::Index>(k)) = u.amplitudes();
    h_u_dets.col(static_cast<Eigen::Index>(k)) =
        apply_pauli_sum(h, u).amplitudes();
  });
  blk.hbar = u_dets.adjoint() * h_u_dets;
  blk.coupling = u_dets.adjoint() * h_u_ref.amplitudes();
  return blk;
}

namespace {

EffectiveHamiltonianBlock checked_block(const PauliSum& h,
                                              const Ansatz& ansatz,
                                              const State& reference_hf,
                                              double e0) {
  EffectiveHamiltonianBlock blk = build_stpt_block(h, ansatz, reference_hf);
  if (std::abs(blk.e0 - e0) > 1e-10 * std::max(1.0, std::abs(e0)))
    throw ContractError("E0 does not match the similarity-transformed "
                        "reference energy");
  return blk;
}

}  // namespace

PTResult stpt_correction(const PauliSum& h, const Ansatz& ansatz,
                         const State& reference_hf, double e0) {
  const EffectiveHamiltonianBlock blk =
      checked_block(h, ansatz, reference_hf, e0);
  PTResult r;
  r.method = PtMethod::stpt;
  r.e_reference = e0;
  r.retained_rank = static_cast<int>(blk.determinants.size());
  if (!blk.determinants.empty()) {
    const LinearSolve sol = solve_shifted(blk.hbar, e0, blk.coupling);
    r.delta_e = blk.coupling.dot(sol.solution).real();
    r.residual_norm = sol.residual;
    r.residual_warning = sol.residual > 1e-6;
  }
  r.e_total = r.e_reference + r.delta_e;
  return r;
}

PTResult stpt_diagonal(const PauliSum& h, const Ansatz& ansatz,
                       const State& reference_hf, double e0) {
  const EffectiveHamiltonianBlock blk =
      checked_block(h, ansatz, reference_hf, e0);
  PTResult r;
  r.method = PtMethod::stpt_d;
  r.e_reference = e0;
  r.retained_rank = static_cast<int>(blk.determinants.size());
  for (Eigen::Index k = 0; k < blk.hbar.rows(); ++k) {
    const double denom = e0 - blk.hbar(k, k).real();
    if (std::abs(denom) < kDegenerateDenominator) {
      ++r.skipped_denominators;
      continue;
    }
    r.delta_e += std::norm(blk.coupling(k)) / denom;
  }
  r.e_total = r.e_reference + r.delta_e;
  return r;
}

}  // namespace pvqe
