// SPDX-License-Identifier: Apache-2.0
#include "pvqe/optimizer.hpp"

#include <cmath>
#include <limits>

#include "pvqe/error.hpp"

namespace pvqe {

namespace {

struct LinePoint {
  double alpha;
  double value;
  double slope;
  Eigen::VectorXd grad;
};

/// Minimizer of the cubic interpolating (a, fa, da), (b, fb, db), clamped to
/// the interior of the bracket; falls back to bisection.
double cubic_step(const LinePoint& a, const LinePoint& b) {
  const double lo = std::min(a.alpha, b.alpha);
  const double hi = std::max(a.alpha, b.alpha);
  const double width = hi - lo;
  const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) /
                                            (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  double t = 0.5 * (a.alpha + b.alpha);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom != 0.0)
      t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
  }
  if (!std::isfinite(t) || t < lo + 0.1 * width || t > hi - 0.1 * width)
    t = 0.5 * (a.alpha + b.alpha);
  return t;
}

class LineSearch {
 public:
  LineSearch(const Objective& f, const Eigen::VectorXd& x,
             const Eigen::VectorXd& dir, const BfgsSettings& s, int& evals)
      : f_(f), x_(x), dir_(dir), s_(s), evals_(evals) {}

  LinePoint at(double alpha) {
    LinePoint p{alpha, 0.0, 0.0, Eigen::VectorXd(x_.size())};
    p.value = f_(x_ + alpha * dir_, p.grad);
    ++evals_;
    if (!std::isfinite(p.value))
      throw NumericalError("objective returned a non-finite value");
    p.slope = p.grad.dot(dir_);
    return p;
  }

  /// Strong-Wolfe point, or nullopt-equivalent (alpha < 0) on failure.
  bool search(const LinePoint& start, LinePoint& out) {
    LinePoint prev = start;
    double alpha = 1.0;
    for (int i = 0; i < s_.max_line_search; ++i) {
      LinePoint cur = at(alpha);
      if (cur.value > start.value + s_.c1 * alpha * start.slope ||
          (i > 0 && cur.value >= prev.value))
        return zoom(start, prev, cur, out);
      if (std::abs(cur.slope) <= -s_.c2 * start.slope) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope >= 0.0) return zoom(start, cur, prev, out);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return false;
  }

 private:
  bool zoom(const LinePoint& start, LinePoint lo, LinePoint hi,
            LinePoint& out) {
    for (int i = 0; i < s_.max_line_search; ++i) {
      if (std::abs(hi.alpha - lo.alpha) <
          std::numeric_limits<double>::epsilon() * std::max(1.0, lo.alpha))
        break;
      LinePoint cur = at(cubic_step(lo, hi));
      if (cur.value > start.value + s_.c1 * cur.alpha * start.slope ||
          cur.value >= lo.value) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.slope) <= -s_.c2 * start.slope) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = std::move(cur);
    }
    // Accept a sufficient-decrease point that misses curvature.
    if (lo.alpha > 0.0 && lo.value < start.value) {
      out = std::move(lo);
      return true;
    }
    return false;
  }

  const Objective& f_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& dir_;
  const BfgsSettings& s_;
  int& evals_;
};

}  // namespace

BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0,
                         const BfgsSettings& settings) {
  const Eigen::Index n = x0.size();
  BfgsResult r;
  r.x = std::move(x0);
  r.gradient.resize(n);
  r.value = f(r.x, r.gradient);
  r.evaluations = 1;
  if (!std::isfinite(r.value))
    throw NumericalError("objective returned a non-finite value");
  if (n == 0 || r.gradient.lpNorm<Eigen::Infinity>() < settings.gtol) {
    r.converged = true;
    return r;
  }

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;
  while (r.iterations < settings.max_iter) {
    Eigen::VectorXd dir = -hinv * r.gradient;
    if (dir.dot(r.gradient) >= 0.0) {
      hinv.setIdentity();
      fresh = true;
      dir = -r.gradient;
    }
    LineSearch ls(f, r.x, dir, settings, r.evaluations);
    const LinePoint start{0.0, r.value, dir.dot(r.gradient), r.gradient};
    LinePoint next;
    if (!ls.search(start, next)) {
      if (!fresh) {
        hinv.setIdentity();
        fresh = true;
        continue;
      }
      r.line_search_failed = true;
      break;
    }
    const Eigen::VectorXd step = next.alpha * dir;
    const Eigen::VectorXd dg = next.grad - r.gradient;
    r.x += step;
    r.value = next.value;
    r.gradient = next.grad;
    ++r.iterations;
    if (r.gradient.lpNorm<Eigen::Infinity>() < settings.gtol) {
      r.converged = true;
      break;
    }
    const double sy = step.dot(dg);
    if (sy > 1e-300) {
      if (fresh) {
        hinv *= sy / dg.squaredNorm();
        fresh = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * dg;
      // H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ
      hinv += (rho * rho * dg.dot(hy) + rho) * step * step.transpose() -
              rho * (hy * step.transpose() + step * hy.transpose());
    }
  }
  return r;
}

}  // namespace pvqe
