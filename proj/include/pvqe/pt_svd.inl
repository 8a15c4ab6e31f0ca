// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "pvqe/error.hpp"

namespace pvqe {

template <class Derived>
OrthonormalBasis svd_orthogonalize(const Eigen::MatrixBase<Derived>& overlap,
                                   double eps_r) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (overlap.rows() != overlap.cols())
    throw DimensionError("overlap matrix is not square");
  if (eps_r < 0.0) throw ContractError("negative SVD threshold");
  const Matrix s = overlap;
  const double scale = s.cwiseAbs().maxCoeff();
  if (s.size() && (s - s.adjoint()).cwiseAbs().maxCoeff() >
                      1e-10 * std::max(1.0, scale))
    throw ContractError("overlap matrix is not Hermitian");

  OrthonormalBasis out;
  if (s.size() == 0) {
    out.combination.resize(0, 0);
    out.singular_values.resize(0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index kept = 0;
  while (kept < sv.size() && sv(kept) >= eps_r) ++kept;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    // For a Hermitian matrix a negative eigenvalue shows up as u_k = −v_k.
    const double sign =
        std::real(svd.matrixU().col(k).dot(svd.matrixV().col(k)));
    if (sign < 0.0 && sv(k) > 1e-8)
      throw NumericalError("overlap matrix has negative eigenvalue " +
                           std::to_string(-sv(k)));
  }
  out.singular_values = sv.head(kept);
  out.discarded = static_cast<int>(sv.size() - kept);
  out.combination = svd.matrixU().leftCols(kept).template cast<Complex>() *
                    sv.head(kept).cwiseSqrt().cwiseInverse().asDiagonal();
  return out;
}

}  // namespace pvqe
