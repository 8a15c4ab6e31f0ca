// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "pvqe/pauli.hpp"

namespace pvqe {

/// Spin orbitals are interleaved: spatial orbital p maps to mode 2p (alpha)
/// and 2p + 1 (beta).
constexpr int alpha_mode(int spatial) { return 2 * spatial; }
constexpr int beta_mode(int spatial) { return 2 * spatial + 1; }

struct LadderOp {
  int mode;
  bool dagger;

  friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

/// Ordered product of ladder operators, applied right to left.
using LadderProduct = std::vector<LadderOp>;

/// Linear combination of ladder-operator products. Products are stored
/// literally (no normal ordering); equal products merge.
class FermionOperator {
 public:
  using TermMap = std::map<LadderProduct, Complex>;

  FermionOperator() = default;

  static FermionOperator identity(Complex coeff = 1.0);
  static FermionOperator creation(int mode);
  static FermionOperator annihilation(int mode);
  /// coeff · a†_p a_q
  static FermionOperator hopping(int p, int q, Complex coeff = 1.0);
  static FermionOperator number(int mode) { return hopping(mode, mode); }

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add_term(LadderProduct product, Complex coeff);

  FermionOperator adjoint() const;
  /// Largest mode index referenced, or -1.
  int max_mode() const;
  bool conserves_particle_number() const;

  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator-=(const FermionOperator& o);
  FermionOperator& operator*=(Complex s);
  friend FermionOperator operator+(FermionOperator a,
                                   const FermionOperator& b) {
    return a += b;
  }
  friend FermionOperator operator-(FermionOperator a,
                                   const FermionOperator& b) {
    return a -= b;
  }
  friend FermionOperator operator*(FermionOperator a, Complex s) {
    return a *= s;
  }
  friend FermionOperator operator*(Complex s, FermionOperator a) {
    return a *= s;
  }
  friend FermionOperator operator*(const FermionOperator& a,
                                   const FermionOperator& b);

 private:
  TermMap terms_;
};

std::string to_string(const LadderProduct& product);

/// Second-quantized electronic Hamiltonian in spin-orbital form.
struct FermionHamiltonian {
  int n_spin_orbitals = 0;
  FermionOperator terms;
  double constant = 0.0;
};

// Spin operators over 2·n_spatial interleaved spin orbitals.
FermionOperator number_operator(int n_spin_orbitals);
FermionOperator spin_z_operator(int n_spatial);
FermionOperator spin_raising_operator(int n_spatial);
FermionOperator spin_lowering_operator(int n_spatial);
/// S² = S₋S₊ + S_z + S_z².
FermionOperator spin_squared_operator(int n_spatial);

/// Jordan-Wigner: a†_j = ½(X_j − iY_j) Z_{j-1}…Z_0.
PauliSum jordan_wigner(const FermionOperator& op, int n_qubits,
                       double threshold = kDefaultSimplifyThreshold);
PauliSum jordan_wigner(const FermionHamiltonian& h,
                       double threshold = kDefaultSimplifyThreshold);
PauliSum jordan_wigner(const LadderOp& op, int n_qubits);

}  // namespace pvqe
