// SPDX-License-Identifier: Apache-2.0
#include "pvqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "pvqe/error.hpp"

namespace pvqe {

namespace {

void check_qubit_count(int n) {
  if (n < 0 || n > kMaxStateQubits)
    throw DimensionError("statevector of " + std::to_string(n) +
                         " qubits exceeds the " +
                         std::to_string(kMaxStateQubits) + "-qubit cap");
}

void check_same(int a, int b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": " + std::to_string(a) +
                         " vs " + std::to_string(b) + " qubits");
}

struct ZTerm {
  std::uint64_t z;
  Complex coeff;  // includes the i^{|x&z|} phase of the string
};

struct FlipGroup {
  std::uint64_t x;
  std::vector<ZTerm> terms;
};

// Terms sharing an X-mask map |b⟩ to the same |b ^ x⟩; the map keeps x-masks
// sorted so grouping order is deterministic.
std::vector<FlipGroup> group_by_flip(const PauliSum& p) {
  constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<FlipGroup> groups;
  for (const auto& [s, c] : p.terms()) {
    if (groups.empty() || groups.back().x != s.x) groups.push_back({s.x, {}});
    groups.back().terms.push_back({s.z, kIPowers[s.y_count() % 4] * c});
  }
  // PauliString ordering is (x, z) lexicographic, so equal x are adjacent.
  return groups;
}

void accumulate(const std::vector<FlipGroup>& groups, const Eigen::VectorXcd& in,
                Complex scale, Eigen::VectorXcd& out) {
  const auto dim = static_cast<std::uint64_t>(in.size());
  for (const auto& g : groups) {
    if (g.terms.size() == 1) {
      const auto [z, c] = g.terms.front();
      const Complex cs = c * scale;
      for (std::uint64_t b = 0; b < dim; ++b) {
        const Complex v = (std::popcount(z & b) & 1) ? -cs : cs;
        out(b ^ g.x) += v * in(b);
      }
      continue;
    }
    for (std::uint64_t b = 0; b < dim; ++b) {
      Complex acc{};
      for (const auto& t : g.terms)
        acc += (std::popcount(t.z & b) & 1) ? -t.coeff : t.coeff;
      out(b ^ g.x) += scale * acc * in(b);
    }
  }
}

}  // namespace

State::State(int n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  amplitudes_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
}

State::State(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (amplitudes_.size() != (Eigen::Index{1} << n_qubits))
    throw DimensionError("amplitude vector length does not match 2^" +
                         std::to_string(n_qubits));
}

State State::basis(int n_qubits, std::uint64_t index) {
  State s(n_qubits);
  if (index >= static_cast<std::uint64_t>(s.dimension()))
    throw BoundsError("basis index out of range");
  s.amplitudes_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

State& State::normalize() {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  amplitudes_ /= n;
  return *this;
}

State hartree_fock_state(int n_qubits, std::span<const int> occupied) {
  check_qubit_count(n_qubits);
  std::uint64_t index = 0;
  for (int q : occupied) {
    if (q < 0 || q >= n_qubits)
      throw BoundsError("occupied qubit " + std::to_string(q) +
                        " outside [0, " + std::to_string(n_qubits) + ")");
    index |= std::uint64_t{1} << q;
  }
  return State::basis(n_qubits, index);
}

State apply_pauli_sum(const PauliSum& p, const State& s) {
  check_same(p.n_qubits(), s.n_qubits(), "apply_pauli_sum");
  State out(s.n_qubits());
  accumulate(group_by_flip(p), s.amplitudes(), 1.0, out.amplitudes());
  return out;
}

Complex expectation(const PauliSum& p, const State& s) {
  const Complex e = inner(s, apply_pauli_sum(p, s));
  if (p.is_hermitian() && std::abs(e.imag()) >= 1e-8)
    throw NumericalError("expectation of a Hermitian operator has imaginary "
                         "part " + std::to_string(e.imag()));
  return e;
}

double energy(const PauliSum& h, const State& s) {
  const Complex e = expectation(h, s);
  if (std::abs(e.imag()) >= 1e-8)
    throw NumericalError("energy has imaginary part " + std::to_string(e.imag()) +
                         "; operator is not Hermitian");
  return e.real();
}

State apply_exp(const PauliSum& generator, double theta, const State& s,
                double tol) {
  check_same(generator.n_qubits(), s.n_qubits(), "apply_exp");
  if (tol <= 0.0) throw ContractError("apply_exp tolerance must be positive");
  if (!generator.is_anti_hermitian(1e-10))
    throw ContractError("apply_exp generator is not anti-Hermitian");
  if (theta == 0.0 || generator.empty()) return s;

  const double scaled_norm = std::abs(theta) * generator.one_norm();
  const int segments = std::max(1, static_cast<int>(std::ceil(scaled_norm)));
  const double step = theta / segments;
  const auto groups = group_by_flip(generator);
  const double in_norm = s.norm();

  Eigen::VectorXcd v = s.amplitudes();
  Eigen::VectorXcd term(v.size());
  Eigen::VectorXcd next(v.size());
  constexpr int kMaxTerms = 100;
  for (int seg = 0; seg < segments; ++seg) {
    term = v;
    int k = 1;
    for (; k <= kMaxTerms; ++k) {
      next.setZero();
      accumulate(groups, term, step / k, next);
      term.swap(next);
      v += term;
      if (term.norm() < tol) break;
    }
    if (k > kMaxTerms)
      throw ConvergenceError("apply_exp series did not converge");
  }
  const double out_norm = v.norm();
  if (std::abs(out_norm - in_norm) >= 1e-10)
    throw ConvergenceError("apply_exp norm drift " +
                           std::to_string(out_norm - in_norm));
  if (out_norm > 0.0) v *= in_norm / out_norm;
  return State(s.n_qubits(), std::move(v));
}

Complex inner(const State& a, const State& b) {
  check_same(a.n_qubits(), b.n_qubits(), "inner");
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace pvqe
