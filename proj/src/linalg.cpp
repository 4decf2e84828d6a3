#include "qtfunnel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "qtfunnel/errors.hpp"

namespace qtf {

bool is_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) {
    return false;
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double scale = std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
      if (!(std::abs(m(i, j) - m(j, i)) <= 1e-12 * scale)) {
        return false;
      }
    }
  }
  return true;
}

FactorizationResult cholesky_probe(const Matrix& m, double floor) {
  if (!is_symmetric(m)) {
    throw ContractViolation("cholesky_probe: matrix is not symmetric");
  }
  if (floor < 0.0) {
    throw ContractViolation("cholesky_probe: floor must be nonnegative");
  }
  const Eigen::Index n = m.rows();
  // Plain right-looking factorization; a pivot <= 0 (or NaN) means the
  // shifted matrix is not positive definite.
  Matrix l = Matrix::Zero(n, n);
  double min_pivot = n > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = m(j, j) - floor;
    for (Eigen::Index k = 0; k < j; ++k) {
      pivot -= l(j, k) * l(j, k);
    }
    if (!(pivot > 0.0)) {
      return FactorizationResult{};
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    min_pivot = std::min(min_pivot, pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double sum = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) {
        sum -= l(i, k) * l(j, k);
      }
      l(i, j) = sum / ljj;
    }
  }
  FactorizationResult result;
  result.status = Definiteness::positive_definite;
  result.factor = std::move(l);
  result.min_pivot = min_pivot;
  return result;
}

Vector solve_spd(const FactorizationResult& factor, const Vector& rhs) {
  if (!factor.positive_definite()) {
    throw FactorizationError("solve_spd: matrix is not positive definite");
  }
  if (rhs.size() != factor.factor.rows()) {
    throw ContractViolation("solve_spd: dimension mismatch");
  }
  const auto l = factor.factor.triangularView<Eigen::Lower>();
  Vector y = l.solve(rhs);
  l.transpose().solveInPlace(y);
  return y;
}

Vector solve_spd(const Matrix& m, const Vector& rhs) {
  const FactorizationResult factor = cholesky_probe(m, 0.0);
  Vector y = solve_spd(factor, rhs);
  // One step of iterative refinement.
  const Vector r = rhs - m * y;
  y += solve_spd(factor, r);
  return y;
}

double certified_min_eigenvalue(const FactorizationResult& factor) {
  if (!factor.positive_definite()) {
    return 0.0;
  }
  const Eigen::Index n = factor.factor.rows();
  if (n == 0) {
    return std::numeric_limits<double>::infinity();
  }
  const Matrix inv = factor.factor.triangularView<Eigen::Lower>().solve(
      Matrix::Identity(n, n));
  return 1.0 / inv.squaredNorm();
}

Vector ridge_normal_solve(const Matrix& jac, const Vector& c, double eta) {
  if (!(eta > 0.0)) {
    throw ContractViolation("ridge_normal_solve: eta must be positive");
  }
  if (jac.cols() != c.size()) {
    throw ContractViolation("ridge_normal_solve: dimension mismatch");
  }
  Matrix system = jac * jac.transpose();
  system = (0.5 * (system + system.transpose())).eval();
  system.diagonal().array() += eta;
  const Vector rhs = -(jac * c);
  return solve_spd(system, rhs);
}

int rank_estimate(const Matrix& jac) {
  if (jac.size() == 0) {
    return 0;
  }
  const Eigen::JacobiSVD<Matrix> svd(jac);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  if (!(sigma_max > 0.0)) {
    return 0;
  }
  const double tol =
      1e-10 * static_cast<double>(std::max(jac.rows(), jac.cols())) * sigma_max;
  return static_cast<int>((sigma.array() > tol).count());
}

Vector min_norm_least_squares(const Matrix& jac, const Vector& c) {
  if (jac.cols() != c.size()) {
    throw ContractViolation("min_norm_least_squares: dimension mismatch");
  }
  const Eigen::Index n = jac.rows();
  const Eigen::Index m = jac.cols();
  if (m == 0 || c.isZero(0.0)) {
    return Vector::Zero(n);
  }
  if (rank_estimate(jac) < m) {
    throw RankError("min_norm_least_squares: Jacobian is rank deficient");
  }
  // J = Q R, so JᵀJ = RᵀR and v = −Q R⁻ᵀ c.
  const Eigen::HouseholderQR<Matrix> qr(jac);
  const Matrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  Vector w = r.transpose().triangularView<Eigen::Lower>().solve(c);
  Vector padded = Vector::Zero(n);
  padded.head(m) = -w;
  return qr.householderQ() * padded;
}

}  // namespace qtf
