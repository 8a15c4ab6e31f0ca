// SPDX-License-Identifier: Apache-2.0
#include "pvqe/pools.hpp"

#include <algorithm>
#include <set>

#include "pvqe/error.hpp"

namespace pvqe {

std::string to_string(PoolKind kind) {
  switch (kind) {
    case PoolKind::fermionic_spin_adapted: return "fermionic_spin_adapted";
    case PoolKind::fermionic_with_i_variant: return "fermionic_with_i_variant";
    case PoolKind::qeb: return "qeb";
  }
  return "unknown";
}

namespace {

/// Spin-summed excitation E_pq = Σ_σ a†_{pσ} a_{qσ}.
FermionOperator spin_summed(int p, int q) {
  return FermionOperator::hopping(alpha_mode(p), alpha_mode(q)) +
         FermionOperator::hopping(beta_mode(p), beta_mode(q));
}

std::string single_label(int i, int a) {
  return "S(" + std::to_string(i) + "->" + std::to_string(a) + ")";
}

std::string double_label(int i, int j, int a, int b) {
  return "D(" + std::to_string(i) + " " + std::to_string(j) + "->" +
         std::to_string(a) + " " + std::to_string(b) + ")";
}

void push_excitation(Pool& pool, std::string label, const FermionOperator& t,
                     std::vector<int> created, std::vector<int> annihilated,
                     int n_qubits, bool i_variant) {
  const FermionOperator tau = t - t.adjoint();
  pool.operators.push_back({label, jordan_wigner(tau, n_qubits), tau, created,
                            annihilated, std::nullopt});
  if (i_variant) {
    const FermionOperator tau_i = Complex(0, 1) * (t + t.adjoint());
    pool.operators.push_back({"i" + label, jordan_wigner(tau_i, n_qubits),
                              tau_i, std::move(created),
                              std::move(annihilated), std::nullopt});
  }
}

/// Q†_q (create) or Q_q as a Pauli sum with no parity string.
PauliSum qubit_ladder(int q, bool dagger, int n_qubits) {
  PauliSum out(n_qubits);
  out.add_term(PauliString::single(q, Pauli::X), 0.5);
  out.add_term(PauliString::single(q, Pauli::Y),
               dagger ? Complex(0, -0.5) : Complex(0, 0.5));
  return out;
}

}  // namespace

Pool build_fermionic_pool(int n_spatial, int n_alpha, int n_beta,
                          const FermionicPoolOptions& options) {
  if (n_spatial < 0 || n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial ||
      n_beta > n_spatial)
    throw ContractError("pool occupations inconsistent with orbital count");
  const int nq = 2 * n_spatial;
  const int n_occ = std::max(n_alpha, n_beta);
  const int first_virt = std::min(n_alpha, n_beta);
  const auto is_occ = [&](int p) { return p < n_occ; };
  const auto is_virt = [&](int p) { return p >= first_virt; };

  Pool pool;
  pool.kind = options.include_i_variant ? PoolKind::fermionic_with_i_variant
                                        : PoolKind::fermionic_spin_adapted;
  const bool iv = options.include_i_variant;

  for (int i = 0; i < n_spatial; ++i)
    for (int a = i + 1; a < n_spatial; ++a) {
      if (!options.generalized && !(is_occ(i) && is_virt(a))) continue;
      push_excitation(pool, single_label(i, a), spin_summed(a, i), {a}, {i},
                      nq, iv);
    }

  for (int i = 0; i < n_spatial; ++i)
    for (int j = i; j < n_spatial; ++j)
      for (int a = 0; a < n_spatial; ++a)
        for (int b = a; b < n_spatial; ++b) {
          if (a == i || a == j || b == i || b == j) continue;
          if (options.generalized) {
            if (std::pair{i, j} > std::pair{a, b}) continue;
          } else if (!(is_occ(i) && is_occ(j) && is_virt(a) && is_virt(b))) {
            continue;
          }
          FermionOperator t1 = spin_summed(a, i) * spin_summed(b, j);
          if (i == j && a == b) t1 *= 0.5;
          push_excitation(pool, double_label(i, j, a, b), t1, {a, b}, {i, j},
                          nq, iv);
          if (i < j && a < b)
            push_excitation(pool, double_label(i, j, b, a),
                            spin_summed(a, j) * spin_summed(b, i), {a, b},
                            {i, j}, nq, iv);
        }
  return pool;
}

Pool build_qeb_pool(int n_qubits, std::span<const int> occupied,
                    const QebPoolOptions& options) {
  std::set<int> occ;
  for (int q : occupied) {
    if (q < 0 || q >= n_qubits)
      throw BoundsError("occupied qubit " + std::to_string(q) +
                        " outside [0, " + std::to_string(n_qubits) + ")");
    occ.insert(q);
  }
  const auto up = [&](int q) { return qubit_ladder(q, true, n_qubits); };
  const auto down = [&](int q) { return qubit_ladder(q, false, n_qubits); };
  const auto spin = [](int q) { return q & 1; };

  Pool pool;
  pool.kind = PoolKind::qeb;
  for (int q = 0; q < n_qubits; ++q)
    for (int p = q + 1; p < n_qubits; ++p) {
      if (spin(p) != spin(q)) continue;
      PauliSum g = up(p) * down(q) - up(q) * down(p);
      pool.operators.push_back({"QS(" + std::to_string(q) + "->" +
                                    std::to_string(p) + ")",
                                simplify(g), std::nullopt, {p / 2}, {q / 2},
                                std::nullopt});
    }
  for (int r = 0; r < n_qubits; ++r)
    for (int s = r + 1; s < n_qubits; ++s)
      for (int p = 0; p < n_qubits; ++p)
        for (int q = p + 1; q < n_qubits; ++q) {
          if (p == r || p == s || q == r || q == s) continue;
          if (spin(p) + spin(q) != spin(r) + spin(s)) continue;
          if (options.generalized_doubles) {
            if (std::pair{r, s} > std::pair{p, q}) continue;
          } else if (!(occ.contains(r) && occ.contains(s) &&
                       !occ.contains(p) && !occ.contains(q))) {
            continue;
          }
          PauliSum g = up(p) * up(q) * down(r) * down(s) -
                       up(s) * up(r) * down(q) * down(p);
          pool.operators.push_back(
              {"QD(" + std::to_string(r) + " " + std::to_string(s) + "->" +
                   std::to_string(p) + " " + std::to_string(q) + ")",
               simplify(g), std::nullopt, {p / 2, q / 2}, {r / 2, s / 2},
               std::nullopt});
        }
  return pool;
}

Pool momentum_filter(const Pool& pool,
                     const std::vector<std::vector<int>>& k_labels,
                     std::span<const int> lattice_modulus) {
  const auto label_of = [&](int orbital) -> const std::vector<int>& {
    if (orbital < 0 || orbital >= static_cast<int>(k_labels.size()))
      throw BoundsError("missing k label for orbital " +
                        std::to_string(orbital));
    return k_labels[orbital];
  };
  Pool out;
  out.kind = pool.kind;
  for (const auto& op : pool.operators) {
    std::vector<int> delta;
    const auto add = [&](int orbital, int sign) {
      const auto& k = label_of(orbital);
      if (delta.empty()) delta.assign(k.size(), 0);
      if (k.size() != delta.size())
        throw ContractError("k labels have inconsistent dimension at orbital " +
                            std::to_string(orbital));
      for (std::size_t c = 0; c < k.size(); ++c) delta[c] += sign * k[c];
    };
    for (int p : op.created) add(p, +1);
    for (int r : op.annihilated) add(r, -1);
    if (!lattice_modulus.empty() && delta.size() != lattice_modulus.size())
      throw ContractError("lattice modulus dimension does not match k labels");
    bool conserved = true;
    for (std::size_t c = 0; c < delta.size(); ++c) {
      const int m = lattice_modulus.empty() ? 0 : lattice_modulus[c];
      const int residue = m > 0 ? ((delta[c] % m) + m) % m : delta[c];
      if (residue != 0) conserved = false;
    }
    if (!conserved) continue;
    PoolOperator kept = op;
    kept.momentum_delta = delta;
    out.operators.push_back(std::move(kept));
  }
  return out;
}

std::string dump_pool(const Pool& pool) {
  std::string out;
  for (const auto& op : pool.operators) {
    out += op.label;
    out += "; ";
    out += std::to_string(op.generator.size());
    out += "; ";
    if (op.momentum_delta) {
      out += '[';
      for (std::size_t c = 0; c < op.momentum_delta->size(); ++c) {
        if (c) out += ' ';
        out += std::to_string((*op.momentum_delta)[c]);
      }
      out += ']';
    } else {
      out += "none";
    }
    out += '\n';
  }
  return out;
}

}  // namespace pvqe
