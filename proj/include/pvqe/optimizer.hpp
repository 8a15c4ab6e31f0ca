// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>

namespace pvqe {

/// Returns f(x) and writes ∇f(x) into `grad`.
using Objective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct BfgsSettings {
  /// Stop once ‖∇f‖∞ < gtol.
  double gtol = 1e-4;
  int max_iter = 1000;
  // Strong-Wolfe constants.
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 40;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd gradient;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  bool line_search_failed = false;
};

/// Quasi-Newton minimization with the BFGS inverse-Hessian update and a
/// strong-Wolfe line search (bracketing + cubic-interpolation zoom).
BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0,
                         const BfgsSettings& settings = {});

}  // namespace pvqe
