// SPDX-License-Identifier: Apache-2.0
#include "pvqe/fermion.hpp"

#include <algorithm>

#include "pvqe/error.hpp"

namespace pvqe {

FermionOperator FermionOperator::identity(Complex coeff) {
  FermionOperator op;
  op.add_term({}, coeff);
  return op;
}

FermionOperator FermionOperator::creation(int mode) {
  FermionOperator op;
  op.add_term({{mode, true}}, 1.0);
  return op;
}

FermionOperator FermionOperator::annihilation(int mode) {
  FermionOperator op;
  op.add_term({{mode, false}}, 1.0);
  return op;
}

FermionOperator FermionOperator::hopping(int p, int q, Complex coeff) {
  FermionOperator op;
  op.add_term({{p, true}, {q, false}}, coeff);
  return op;
}

void FermionOperator::add_term(LadderProduct product, Complex coeff) {
  for (const auto& l : product)
    if (l.mode < 0) throw BoundsError("negative fermionic mode index");
  terms_[std::move(product)] += coeff;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& [prod, c] : terms_) {
    LadderProduct adj(prod.rbegin(), prod.rend());
    for (auto& l : adj) l.dagger = !l.dagger;
    out.terms_[std::move(adj)] += std::conj(c);
  }
  return out;
}

int FermionOperator::max_mode() const {
  int m = -1;
  for (const auto& [prod, c] : terms_)
    for (const auto& l : prod) m = std::max(m, l.mode);
  return m;
}

bool FermionOperator::conserves_particle_number() const {
  for (const auto& [prod, c] : terms_) {
    const auto n_create = std::count_if(
        prod.begin(), prod.end(), [](const LadderOp& l) { return l.dagger; });
    if (2 * n_create != static_cast<long>(prod.size())) return false;
  }
  return true;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  for (const auto& [prod, c] : o.terms_) terms_[prod] += c;
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& o) {
  for (const auto& [prod, c] : o.terms_) terms_[prod] -= c;
  return *this;
}

FermionOperator& FermionOperator::operator*=(Complex s) {
  for (auto& [prod, c] : terms_) c *= s;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) {
      LadderProduct p = pa;
      p.insert(p.end(), pb.begin(), pb.end());
      out.terms_[std::move(p)] += ca * cb;
    }
  return out;
}

std::string to_string(const LadderProduct& product) {
  if (product.empty()) return "1";
  std::string out;
  for (const auto& l : product) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.mode);
    if (l.dagger) out += '^';
  }
  return out;
}

FermionOperator number_operator(int n_spin_orbitals) {
  FermionOperator n;
  for (int p = 0; p < n_spin_orbitals; ++p) n += FermionOperator::number(p);
  return n;
}

FermionOperator spin_z_operator(int n_spatial) {
  FermionOperator sz;
  for (int p = 0; p < n_spatial; ++p) {
    sz += FermionOperator::hopping(alpha_mode(p), alpha_mode(p), 0.5);
    sz += FermionOperator::hopping(beta_mode(p), beta_mode(p), -0.5);
  }
  return sz;
}

FermionOperator spin_raising_operator(int n_spatial) {
  FermionOperator sp;
  for (int p = 0; p < n_spatial; ++p)
    sp += FermionOperator::hopping(alpha_mode(p), beta_mode(p));
  return sp;
}

FermionOperator spin_lowering_operator(int n_spatial) {
  FermionOperator sm;
  for (int p = 0; p < n_spatial; ++p)
    sm += FermionOperator::hopping(beta_mode(p), alpha_mode(p));
  return sm;
}

FermionOperator spin_squared_operator(int n_spatial) {
  const FermionOperator sz = spin_z_operator(n_spatial);
  return spin_lowering_operator(n_spatial) * spin_raising_operator(n_spatial) +
         sz + sz * sz;
}

PauliSum jordan_wigner(const LadderOp& op, int n_qubits) {
  if (op.mode < 0 || op.mode >= n_qubits)
    throw BoundsError("fermionic mode " + std::to_string(op.mode) +
                      " >= qubit count " + std::to_string(n_qubits));
  const std::uint64_t bit = std::uint64_t{1} << op.mode;
  const std::uint64_t string = bit - 1;  // Z on all lower qubits
  PauliSum out(n_qubits);
  out.add_term(PauliString{bit, string}, 0.5);                    // X_j Z_<j
  out.add_term(PauliString{bit, string | bit},                    // Y_j Z_<j
               op.dagger ? Complex(0, -0.5) : Complex(0, 0.5));
  return out;
}

PauliSum jordan_wigner(const FermionOperator& op, int n_qubits,
                       double threshold) {
  PauliSum out(n_qubits);
  for (const auto& [prod, c] : op.terms()) {
    PauliSum term = PauliSum::identity(n_qubits, c);
    for (const auto& l : prod) term = term * jordan_wigner(l, n_qubits);
    out += term;
  }
  return simplify(out, threshold);
}

PauliSum jordan_wigner(const FermionHamiltonian& h, double threshold) {
  PauliSum out = jordan_wigner(h.terms, h.n_spin_orbitals, 0.0);
  out += PauliSum::identity(h.n_spin_orbitals, h.constant);
  return simplify(out, threshold);
}

}  // namespace pvqe
