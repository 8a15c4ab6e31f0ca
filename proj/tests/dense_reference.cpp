// SPDX-License-Identifier: Apache-2.0
#include "dense_reference.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "json.hpp"

namespace dense {

namespace {

Eigen::Matrix2cd single_pauli(pvqe::Pauli p) {
  const Complex i(0, 1);
  Eigen::Matrix2cd m;
  switch (p) {
    case pvqe::Pauli::I: m << 1, 0, 0, 1; break;
    case pvqe::Pauli::X: m << 0, 1, 1, 0; break;
    case pvqe::Pauli::Y: m << 0, -i, i, 0; break;
    case pvqe::Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

Matrix pauli_matrix(const pvqe::PauliString& s, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  std::vector<Eigen::Matrix2cd> factors;
  for (int q = 0; q < n_qubits; ++q) factors.push_back(single_pauli(s.at(q)));
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      Complex v = 1.0;
      for (int q = 0; q < n_qubits && v != 0.0; ++q)
        v *= factors[q]((r >> q) & 1, (c >> q) & 1);
      m(r, c) = v;
    }
  return m;
}

Matrix to_matrix(const pvqe::PauliSum& p) {
  const Eigen::Index dim = Eigen::Index{1} << p.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& [s, c] : p.terms()) m += c * pauli_matrix(s, p.n_qubits());
  return m;
}

Sparse ladder_matrix(int mode, bool dagger, int n_modes) {
  const Eigen::Index dim = Eigen::Index{1} << n_modes;
  const std::uint64_t bit = std::uint64_t{1} << mode;
  std::vector<Eigen::Triplet<Complex>> t;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
    const bool occupied = b & bit;
    if (occupied == dagger) continue;
    const double sign = std::popcount(b & (bit - 1)) % 2 ? -1.0 : 1.0;
    t.emplace_back(static_cast<Eigen::Index>(b ^ bit),
                   static_cast<Eigen::Index>(b), sign);
  }
  Sparse m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Sparse fermion_matrix(const pvqe::FermionOperator& op, int n_modes) {
  const Eigen::Index dim = Eigen::Index{1} << n_modes;
  Sparse total(dim, dim);
  Sparse id(dim, dim);
  id.setIdentity();
  for (const auto& [product, c] : op.terms()) {
    Sparse m = id;
    for (const auto& l : product)
      m = (m * ladder_matrix(l.mode, l.dagger, n_modes)).pruned();
    total += c * m;
  }
  return total;
}

Sparse hamiltonian_matrix(const pvqe::IntegralSet& ints) {
  const int n = ints.n_spatial;
  const int modes = 2 * n;
  const Eigen::Index dim = Eigen::Index{1} << modes;
  std::vector<Sparse> cr, an;
  for (int m = 0; m < modes; ++m) {
    cr.push_back(ladder_matrix(m, true, modes));
    an.push_back(ladder_matrix(m, false, modes));
  }
  Sparse h(dim, dim);
  h.setIdentity();
  h *= ints.core_energy;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (ints.h1(p, q) == 0.0) continue;
      for (int s = 0; s < 2; ++s)
        h += ints.h1(p, q) * Sparse(cr[2 * p + s] * an[2 * q + s]);
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = ints.eri_at(p, q, r, s);
          if (v == 0.0) continue;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
              const Sparse term = cr[2 * p + a] * cr[2 * r + b] *
                                  an[2 * s + b] * an[2 * q + a];
              h += (0.5 * v) * term;
            }
        }
  return h;
}

Matrix generator_matrix(const pvqe::PoolOperator& op, int n_qubits) {
  if (op.fermionic_form)
    return Matrix(fermion_matrix(*op.fermionic_form, n_qubits));
  return to_matrix(op.generator);
}

Matrix ansatz_unitary(const pvqe::Ansatz& ansatz, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix u = Matrix::Identity(dim, dim);
  if (ansatz.kind == pvqe::AnsatzKind::summed) {
    Matrix a = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < ansatz.size(); ++k)
      a += ansatz.parameters(k) * generator_matrix(ansatz.operators[k], n_qubits);
    return a.exp();
  }
  for (std::size_t k = 0; k < ansatz.size(); ++k) {
    const Matrix a =
        ansatz.parameters(k) * generator_matrix(ansatz.operators[k], n_qubits);
    u = Matrix(a.exp()) * u;
  }
  return u;
}

namespace {

double accumulate_diagonal(const Matrix& hm, const Vector& b, double e0,
                           int& skipped) {
  double delta = 0.0;
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    const double denom = e0 - hm(k, k).real();
    if (std::abs(denom) < 1e-8) {
      ++skipped;
      continue;
    }
    delta += std::norm(b(k)) / denom;
  }
  return delta;
}

}  // namespace

PtReference mrpt_reference(const Matrix& h, const Vector& psi0, double e0,
                           const std::vector<Matrix>& generators,
                           double eps_r) {
  const auto m = static_cast<Eigen::Index>(generators.size());
  Matrix psi(psi0.size(), m);
  for (Eigen::Index k = 0; k < m; ++k) psi.col(k) = generators[k] * psi0;
  const Matrix s = psi.adjoint() * psi;
  const Matrix hm = psi.adjoint() * h * psi;
  const Vector b = psi.adjoint() * h * psi0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  // Descending order, truncated at eps_r.
  std::vector<Eigen::Index> order;
  for (Eigen::Index k = m - 1; k >= 0; --k)
    if (es.eigenvalues()(k) >= eps_r) order.push_back(k);
  const auto r = static_cast<Eigen::Index>(order.size());
  Matrix x(m, r);
  Eigen::VectorXd lam(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    lam(k) = es.eigenvalues()(order[k]);
    x.col(k) = es.eigenvectors().col(order[k]) / std::sqrt(lam(k));
  }

  PtReference out;
  out.retained = static_cast<int>(r);
  if (r == 0) return out;
  const Matrix ht = x.adjoint() * hm * x;
  const Vector bt = x.adjoint() * b;
  const Matrix a = e0 * Matrix::Identity(r, r) - ht;
  const Vector d = a.fullPivLu().solve(bt);
  out.delta_full = bt.dot(d).real();

  // Same canonical basis inside near-degenerate eigenvalue groups.
  for (Eigen::Index start = 0; start < r;) {
    Eigen::Index end = start + 1;
    while (end < r && lam(end - 1) - lam(end) <= 1e-6 * lam(end - 1)) ++end;
    if (end - start > 1) {
      const Matrix blk = x.middleCols(start, end - start);
      Matrix hb = blk.adjoint() * hm * blk;
      hb = 0.5 * (hb + hb.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Matrix> eb(hb);
      x.middleCols(start, end - start) = blk * eb.eigenvectors();
    }
    start = end;
  }
  const Matrix hc = x.adjoint() * hm * x;
  const Vector bc = x.adjoint() * b;
  out.delta_diagonal = accumulate_diagonal(hc, bc, e0, out.skipped);
  return out;
}

PtReference stpt_reference(const Matrix& h, const Matrix& u,
                           std::uint64_t hf_index, int n_qubits) {
  const Matrix hbar = u.adjoint() * h * u;
  std::uint64_t alpha_mask = 0;
  for (int q = 0; q < n_qubits; q += 2) alpha_mask |= std::uint64_t{1} << q;
  const int na = std::popcount(hf_index & alpha_mask);
  const int nb = std::popcount(hf_index & ~alpha_mask);
  std::vector<Eigen::Index> dets;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n_qubits); ++b) {
    if (std::popcount(b & alpha_mask) != na ||
        std::popcount(b & ~alpha_mask) != nb)
      continue;
    const int level = std::popcount(b ^ hf_index) / 2;
    if (level == 1 || level == 2) dets.push_back(static_cast<Eigen::Index>(b));
  }
  const auto m = static_cast<Eigen::Index>(dets.size());
  const double e0 = hbar(hf_index, hf_index).real();
  Matrix hd(m, m);
  Vector b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b(i) = hbar(dets[i], hf_index);
    for (Eigen::Index j = 0; j < m; ++j) hd(i, j) = hbar(dets[i], dets[j]);
  }
  PtReference out;
  out.retained = static_cast<int>(m);
  if (m == 0) return out;
  const Vector d = (e0 * Matrix::Identity(m, m) - hd).fullPivLu().solve(b);
  out.delta_full = b.dot(d).real();
  out.delta_diagonal = accumulate_diagonal(hd, b, e0, out.skipped);
  return out;
}

double sector_minimum(const Matrix& h, int n_qubits, int n_alpha, int n_beta) {
  std::vector<Eigen::Index> idx;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n_qubits); ++b) {
    int a = 0, c = 0;
    for (int q = 0; q < n_qubits; ++q)
      if ((b >> q) & 1) ++(q % 2 ? c : a);
    if (a == n_alpha && c == n_beta) idx.push_back(static_cast<Eigen::Index>(b));
  }
  const auto m = static_cast<Eigen::Index>(idx.size());
  Matrix sub(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = h(idx[i], idx[j]);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sub, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

pvqe::IntegralSet random_integrals(int n_spatial, int n_electrons,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  pvqe::IntegralSet ints = pvqe::IntegralSet::zeros(n_spatial, n_electrons, n_electrons % 2);
  ints.core_energy = 0.3 * g(rng);
  for (int p = 0; p < n_spatial; ++p) {
    ints.h1(p, p) = -1.5 + 0.6 * p + 0.1 * g(rng);
    for (int q = 0; q < p; ++q) ints.h1(p, q) = ints.h1(q, p) = 0.1 * g(rng);
  }
  // Positive-ish Coulomb diagonal with small random exchange-type entries.
  for (int p = 0; p < n_spatial; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n_spatial; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * n_spatial + q < r * n_spatial + s) continue;
          double v = 0.05 * g(rng);
          if (p == q && r == s) v += 0.5 + 0.05 * std::abs(g(rng));
          ints.set_eri(p, q, r, s, v);
        }
  return ints;
}

pvqe::PauliSum random_hermitian(int n_qubits, int n_terms,
                                std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> mask(
      0, (std::uint64_t{1} << n_qubits) - 1);
  std::normal_distribution<double> g(0.0, 1.0);
  pvqe::PauliSum p(n_qubits);
  for (int k = 0; k < n_terms; ++k)
    p.add_term(pvqe::PauliString{mask(rng), mask(rng)}, g(rng));
  return p;
}

pvqe::Pool random_real_pool(int n_qubits, int n_ops, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> mask(
      0, (std::uint64_t{1} << n_qubits) - 1);
  std::normal_distribution<double> g(0.0, 1.0);
  pvqe::Pool pool;
  pool.kind = pvqe::PoolKind::qeb;
  while (static_cast<int>(pool.operators.size()) < n_ops) {
    const pvqe::PauliString s{mask(rng), mask(rng)};
    if (s.y_count() % 2 == 0) continue;
    pvqe::PoolOperator op;
    op.label = "R" + std::to_string(pool.operators.size());
    op.generator = pvqe::PauliSum(n_qubits);
    op.generator.add_term(s, Complex(0.0, g(rng)));
    pool.operators.push_back(std::move(op));
  }
  return pool;
}

std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(PVQE_FIXTURE_DIR) / (name + ".fcidump");
}

std::vector<FixtureInfo> manifest() {
  std::ifstream in(std::filesystem::path(PVQE_FIXTURE_DIR) / "manifest.json");
  if (!in) throw std::runtime_error("fixture manifest missing");
  const auto doc = nlohmann::json::parse(in);
  std::vector<FixtureInfo> out;
  for (const auto& [name, f] : doc.at("fixtures").items())
    out.push_back({name, f.at("n_spatial").get<int>(),
                   f.at("n_electrons").get<int>(), f.at("e_hf").get<double>(),
                   f.at("e_fci").get<double>()});
  return out;
}

FixtureInfo fixture(const std::string& name) {
  for (const auto& f : manifest())
    if (f.name == name) return f;
  throw std::runtime_error("unknown fixture " + name);
}

}  // namespace dense
