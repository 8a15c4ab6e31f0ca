// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pvqe/fermion.hpp"
#include "pvqe/pauli.hpp"

namespace pvqe {

inline constexpr double kHartreeToKcalPerMol = 627.509474;
inline constexpr double kDefaultPenaltyAlpha = 0.5;
inline constexpr double kIntegralDropThreshold = 1e-12;

/// Spatial-orbital integrals of a real-orbital electronic Hamiltonian.
struct IntegralSet {
  int n_spatial = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  Eigen::MatrixXd h1;
  /// Chemists' notation (pq|rs), stored as eri(p·n + q, r·n + s).
  Eigen::MatrixXd eri;
  /// Optional crystal-momentum label (integer vector) per spatial orbital.
  std::optional<std::vector<std::vector<int>>> k_labels;
  std::vector<int> lattice_modulus;
  std::optional<Eigen::VectorXd> orbital_energies;

  /// Zero integrals for `n` spatial orbitals.
  static IntegralSet zeros(int n, int n_electrons, int ms2 = 0);

  double eri_at(int p, int q, int r, int s) const {
    return eri(p * n_spatial + q, r * n_spatial + s);
  }
  /// Writes v into all eight permutation-equivalent slots of (pq|rs).
  void set_eri(int p, int q, int r, int s, double v);

  int n_alpha() const { return (n_electrons + ms2) / 2; }
  int n_beta() const { return (n_electrons - ms2) / 2; }

  /// Throws ContractError unless h1/eri are symmetric within tol and the
  /// electron counts are consistent.
  void validate(double tol = 1e-10) const;
};

/// Parses FCIDUMP text (namelist header, then `value i j k l` records).
IntegralSet parse_fcidump(std::istream& in);
IntegralSet read_fcidump(const std::filesystem::path& path);
/// Writes one record per symmetry-unique nonzero integral, 18 significant
/// digits.
void write_fcidump(std::ostream& out, const IntegralSet& ints);

/// Reads the optional JSON sidecar {"k_labels": [[..]..],
/// "lattice_modulus": [..]} into `ints`.
void load_orbital_metadata(IntegralSet& ints,
                           const std::filesystem::path& path);

FermionHamiltonian build_hamiltonian(const IntegralSet& ints);

/// (α/2)[S² − S(S+1)]² in the qubit representation over 2·n_spatial qubits.
PauliSum build_s2_penalty(int n_spatial, double alpha = kDefaultPenaltyAlpha,
                          double spin = 0.0);

/// Qubits occupied by the aufbau determinant: lowest n_alpha alpha and
/// n_beta beta spin orbitals.
std::vector<int> hartree_fock_occupation(int n_spatial, int n_alpha,
                                         int n_beta);

}  // namespace pvqe
