// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

#include "pvqe/pauli.hpp"

namespace pvqe {

inline constexpr int kMaxStateQubits = 24;
inline constexpr double kDefaultExpTolerance = 1e-12;

/// Dense amplitude vector over the 2^n computational basis. Qubit 0 is the
/// least-significant bit of the basis index.
class State {
 public:
  State() = default;
  explicit State(int n_qubits);
  State(int n_qubits, Eigen::VectorXcd amplitudes);

  static State basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }
  Complex operator[](std::uint64_t i) const { return amplitudes_(i); }

  double norm() const { return amplitudes_.norm(); }
  State& normalize();

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amplitudes_;
};

/// Basis state with ones exactly on `occupied`.
State hartree_fock_state(int n_qubits, std::span<const int> occupied);

/// Σ_k c_k P_k |s⟩, unnormalized.
State apply_pauli_sum(const PauliSum& p, const State& s);

/// ⟨s|P|s⟩. Throws NumericalError when P is Hermitian but the imaginary
/// part reaches 1e-8.
Complex expectation(const PauliSum& p, const State& s);
/// Real part of expectation(); for Hermitian operators.
double energy(const PauliSum& h, const State& s);

/// exp(θA)|s⟩ for anti-Hermitian A, by a Taylor series on the action.
///
/// The interval is split into m segments with ‖θA‖₁/m ≤ 1; each segment sums
/// terms until the appended term's norm drops below tol. Norm drift below
/// 1e-10 is renormalized away, larger drift throws ConvergenceError.
State apply_exp(const PauliSum& generator, double theta, const State& s,
                double tol = kDefaultExpTolerance);

Complex inner(const State& a, const State& b);

}  // namespace pvqe
