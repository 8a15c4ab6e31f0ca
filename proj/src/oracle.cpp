// SPDX-License-Identifier: Apache-2.0
#include "pvqe/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "pvqe/error.hpp"

namespace pvqe {

std::vector<std::uint64_t> sector_basis(int n_qubits, const Sector& sector) {
  if (n_qubits > kMaxStateQubits)
    throw DimensionError("sector basis beyond the qubit cap");
  std::uint64_t alpha_mask = 0;
  for (int q = 0; q < n_qubits; q += 2) alpha_mask |= std::uint64_t{1} << q;
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const int na = std::popcount(b & alpha_mask);
    const int nb = std::popcount(b & ~alpha_mask);
    if (na + nb == sector.n_electrons && na - nb == sector.ms2)
      out.push_back(b);
  }
  return out;
}

Eigen::SparseMatrix<Complex> projected_matrix(
    const PauliSum& h, const std::vector<std::uint64_t>& basis) {
  constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const std::uint64_t b = basis[col];
    for (const auto& [s, c] : h.terms()) {
      const std::uint64_t target = b ^ s.x;
      const auto it = std::lower_bound(basis.begin(), basis.end(), target);
      if (it == basis.end() || *it != target) continue;
      Complex v = kIPowers[s.y_count() % 4] * c;
      if (std::popcount(s.z & b) & 1) v = -v;
      triplets.emplace_back(static_cast<Eigen::Index>(it - basis.begin()), col,
                            v);
    }
  }
  Eigen::SparseMatrix<Complex> m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

namespace {

struct Eigenpairs {
  Eigen::VectorXd values;
  Eigen::VectorXcd ground;
};

Eigenpairs dense_lowest(const Eigen::SparseMatrix<Complex>& m) {
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("dense eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors().col(0)};
}

/// Restarted Lanczos with full reorthogonalization.
Eigenpairs lanczos_lowest(const Eigen::SparseMatrix<Complex>& m,
                          int n_values) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index krylov = std::min<Eigen::Index>(dim, 160);
  constexpr int kMaxRestarts = 50;
  constexpr double kResidualTol = 1e-10;

  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXcd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start(i) = unif(rng);
  start.normalize();

  Eigenpairs out;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    Eigen::MatrixXcd v(dim, krylov);
    Eigen::VectorXd alpha(krylov), beta(krylov);
    v.col(0) = start;
    Eigen::Index steps = 0;
    for (Eigen::Index j = 0; j < krylov; ++j) {
      Eigen::VectorXcd w = m * v.col(j);
      alpha(j) = v.col(j).dot(w).real();
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass)
        w -= v.leftCols(j + 1) * (v.leftCols(j + 1).adjoint() * w);
      steps = j + 1;
      if (j + 1 == krylov) break;
      beta(j) = w.norm();
      if (beta(j) < 1e-14) break;
      v.col(j + 1) = w / beta(j);
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
    for (Eigen::Index j = 0; j < steps; ++j) {
      t(j, j) = alpha(j);
      if (j + 1 < steps) t(j, j + 1) = t(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    start = v.leftCols(steps) * es.eigenvectors().col(0).cast<Complex>();
    start.normalize();
    const double e0 = es.eigenvalues()(0);
    const double residual = (m * start - e0 * start).norm();
    out.values = es.eigenvalues().head(std::min<Eigen::Index>(steps, n_values));
    out.ground = start;
    if (residual < kResidualTol || steps == dim) return out;
  }
  throw ConvergenceError("Lanczos did not converge in the requested sector");
}

}  // namespace

SpectrumResult exact_ground_state(const PauliSum& h, std::optional<Sector> sector,
                                  int n_eigenvalues) {
  const int n = h.n_qubits();
  if (n > kMaxStateQubits)
    throw DimensionError("exact diagonalization beyond the qubit cap");
  std::vector<std::uint64_t> basis;
  if (sector) {
    basis = sector_basis(n, *sector);
  } else {
    basis.resize(std::size_t{1} << n);
    for (std::size_t b = 0; b < basis.size(); ++b) basis[b] = b;
  }
  if (basis.empty()) throw ContractError("requested sector is empty");

  const auto m = projected_matrix(h, basis);
  const Eigenpairs pairs =
      n <= kDenseOracleMaxQubits ? dense_lowest(m)
                                 : lanczos_lowest(m, n_eigenvalues);

  SpectrumResult out;
  out.sector = sector;
  const auto k = std::min<Eigen::Index>(n_eigenvalues, pairs.values.size());
  for (Eigen::Index i = 0; i < k; ++i) out.eigenvalues.push_back(pairs.values(i));
  out.ground_state = State(n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.ground_state.amplitudes()(static_cast<Eigen::Index>(basis[i])) =
        pairs.ground(static_cast<Eigen::Index>(i));
  out.ground_state.normalize();
  {
    // Fix the global phase: largest amplitude real and positive.
    Eigen::Index imax = 0;
    out.ground_state.amplitudes().cwiseAbs().maxCoeff(&imax);
    const Complex a = out.ground_state.amplitudes()(imax);
    out.ground_state.amplitudes() *= std::conj(a) / std::abs(a);
  }
  out.residual = (apply_pauli_sum(h, out.ground_state).amplitudes() -
                  out.eigenvalues.front() * out.ground_state.amplitudes())
                     .norm();
  return out;
}

}  // namespace pvqe
