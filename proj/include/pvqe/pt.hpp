// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "pvqe/pauli.hpp"
#include "pvqe/pools.hpp"
#include "pvqe/statevector.hpp"
#include "pvqe/vqe.hpp"

namespace pvqe {

inline constexpr double kDefaultSvdThreshold = 1e-10;
inline constexpr double kDegenerateDenominator = 1e-8;
inline constexpr double kSingularValueClusterGap = 1e-6;

enum class PtMethod { mrpt, mrpt_d, stpt, stpt_d };
std::string to_string(PtMethod method);
PtMethod pt_method_from_string(const std::string& name);

/// Non-orthogonal first-order interacting space {|Ψ_μ⟩}.
struct PerturbativeSubspace {
  std::vector<State> basis_states;
  Eigen::MatrixXcd overlap;   // ⟨Ψ_μ|Ψ_ν⟩
  Eigen::MatrixXcd hmat;      // ⟨Ψ_μ|H|Ψ_ν⟩
  Eigen::VectorXcd coupling;  // ⟨Ψ_μ|H|Ψ₀⟩
  std::vector<std::string> source_labels;

  std::size_t size() const { return basis_states.size(); }
};

struct PTResult {
  PtMethod method = PtMethod::mrpt;
  double e_reference = 0.0;
  double delta_e = 0.0;
  double e_total = 0.0;
  int retained_rank = 0;
  int discarded_rank = 0;
  double residual_norm = 0.0;
  int skipped_denominators = 0;
  bool residual_warning = false;
};

/// |Ψ_μ⟩ = τ_μ|Ψ₀⟩ for every pool operator whose coupling magnitude is at
/// least `prescreen_eta`.
PerturbativeSubspace build_mrpt_subspace(const PauliSum& h,
                                         const State& reference,
                                         const Pool& pool,
                                         double prescreen_eta = 0.0);

/// Columns X of the orthonormalizing map |Ψ̃_k⟩ = Σ_ν X_{νk}|Ψ_ν⟩.
struct OrthonormalBasis {
  Eigen::MatrixXcd combination;
  Eigen::VectorXd singular_values;  // retained, descending
  int discarded = 0;
};

/// SVD S = Q s V† of a Hermitian positive-semidefinite overlap; keeps the
/// columns with s ≥ eps_r and scales them by s^{-1/2} so X†SX = I.
template <class Derived>
OrthonormalBasis svd_orthogonalize(const Eigen::MatrixBase<Derived>& overlap,
                                   double eps_r = kDefaultSvdThreshold);

OrthonormalBasis svd_orthogonalize(const PerturbativeSubspace& subspace,
                                   double eps_r = kDefaultSvdThreshold);

/// Solves Σ_ν (E₀S − H)_{μν} d_ν = ⟨Ψ_μ|H|Ψ₀⟩ in the SVD-retained basis and
/// returns δE = Σ_μ d_μ⟨Ψ₀|H|Ψ_μ⟩.
PTResult mrpt_correction(const PauliSum& h, const State& reference, double e0,
                         const PerturbativeSubspace& subspace,
                         double eps_r = kDefaultSvdThreshold);

/// δE = Σ_k |⟨Ψ₀|H|Ψ̃_k⟩|² / (E₀ − Ẽ_k) over the orthonormalized states.
///
/// Within a cluster of degenerate singular values (relative gap below
/// 1e-6) the orthonormal basis is not unique; it is fixed by diagonalizing
/// the projected Hamiltonian inside the cluster.
PTResult mrpt_diagonal(const PauliSum& h, const State& reference, double e0,
                       const PerturbativeSubspace& subspace,
                       double eps_r = kDefaultSvdThreshold);

/// Sz- and particle-conserving single and double excitations of a basis
/// determinant, ascending.
std::vector<std::uint64_t> singles_doubles_determinants(std::uint64_t reference,
                                                        int n_qubits);

/// Effective-Hamiltonian block H̄_{λκ} = ⟨Uψ_λ|H|Uψ_κ⟩ over the singles and
/// doubles of the Hartree-Fock determinant.
struct EffectiveHamiltonianBlock {
  std::vector<std::uint64_t> determinants;
  Eigen::MatrixXcd hbar;      // ⟨ψ_λ|H̄|ψ_κ⟩
  Eigen::VectorXcd coupling;  // ⟨ψ_λ|H̄|ψ₀⟩
  double e0 = 0.0;            // ⟨ψ₀|H̄|ψ₀⟩
};

EffectiveHamiltonianBlock build_stpt_block(const PauliSum& h,
                                           const Ansatz& ansatz,
                                           const State& reference_hf);

PTResult stpt_correction(const PauliSum& h, const Ansatz& ansatz,
                         const State& reference_hf, double e0);

PTResult stpt_diagonal(const PauliSum& h, const Ansatz& ansatz,
                       const State& reference_hf, double e0);

}  // namespace pvqe

#include "pvqe/pt_svd.inl"
