// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pvqe/fermion.hpp"
#include "pvqe/pauli.hpp"

namespace pvqe {

struct PoolOperator {
  std::string label;
  /// Anti-Hermitian qubit operator τ.
  PauliSum generator;
  std::optional<FermionOperator> fermionic_form;
  /// Spatial orbitals created / annihilated by the excitation part T.
  std::vector<int> created;
  std::vector<int> annihilated;
  /// Σk(created) − Σk(annihilated), set by momentum_filter.
  std::optional<std::vector<int>> momentum_delta;
};

enum class PoolKind { fermionic_spin_adapted, fermionic_with_i_variant, qeb };

std::string to_string(PoolKind kind);

struct Pool {
  PoolKind kind = PoolKind::fermionic_spin_adapted;
  std::vector<PoolOperator> operators;

  std::size_t size() const { return operators.size(); }
  bool empty() const { return operators.empty(); }
};

struct FermionicPoolOptions {
  /// Adds τ' = i(T + T†) after every τ = T − T†.
  bool include_i_variant = false;
  /// Also allow occupied→occupied and virtual→virtual excitations.
  bool generalized = false;
};

/// Spin-adapted singles Σ_σ(a†_{aσ}a_{iσ} − h.c.) and total-singlet doubles
/// E_ai E_bj − h.c. (E_pq = Σ_σ a†_{pσ}a_{qσ}) over spatial quadruples.
///
/// For i < j and a < b both couplings E_ai E_bj and E_aj E_bi are included;
/// when either pair coincides they are the same operator and it appears once
/// (scaled by ½ when both coincide so the excitation has unit weight).
Pool build_fermionic_pool(int n_spatial, int n_alpha, int n_beta,
                          const FermionicPoolOptions& options = {});

struct QebPoolOptions {
  /// Doubles over all qubit quadruples instead of occupied → virtual.
  bool generalized_doubles = false;
};

/// Qubit-excitation operators built from Q† = (X − iY)/2, Q = (X + iY)/2
/// with no Jordan-Wigner strings. Only Sz-conserving excitations are built:
/// singles over every same-spin qubit pair, doubles occupied → virtual.
Pool build_qeb_pool(int n_qubits, std::span<const int> occupied,
                    const QebPoolOptions& options = {});

/// Keeps operators whose momentum transfer vanishes modulo the reciprocal
/// lattice, and records momentum_delta on the survivors.
Pool momentum_filter(const Pool& pool,
                     const std::vector<std::vector<int>>& k_labels,
                     std::span<const int> lattice_modulus);

/// `label; n_pauli_terms; momentum_delta` per line.
std::string dump_pool(const Pool& pool);

}  // namespace pvqe
