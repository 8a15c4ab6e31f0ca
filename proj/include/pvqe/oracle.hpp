// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <optional>
#include <vector>

#include "pvqe/pauli.hpp"
#include "pvqe/statevector.hpp"

namespace pvqe {

/// Particle-number / spin-projection sector (interleaved spin orbitals:
/// even qubits alpha, odd qubits beta).
struct Sector {
  int n_electrons;
  int ms2;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  State ground_state;
  std::optional<Sector> sector;
  double residual = 0.0;
};

/// Dense diagonalization up to this many qubits, Lanczos beyond.
inline constexpr int kDenseOracleMaxQubits = 12;

/// Sorted basis indices belonging to `sector`.
std::vector<std::uint64_t> sector_basis(int n_qubits, const Sector& sector);

/// Matrix of `h` restricted to the given basis indices. Entries coupling to
/// states outside the basis are dropped.
Eigen::SparseMatrix<Complex> projected_matrix(
    const PauliSum& h, const std::vector<std::uint64_t>& basis);

/// Lowest eigenpair(s) of `h`, optionally within a symmetry sector.
SpectrumResult exact_ground_state(const PauliSum& h,
                                  std::optional<Sector> sector = std::nullopt,
                                  int n_eigenvalues = 1);

}  // namespace pvqe
