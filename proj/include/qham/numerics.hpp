#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qham {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Base error type; DomainError = math-domain violation (branch cut, pole,
// non-tangent vector), InputError = malformed user input.
struct QhamError : std::runtime_error {
  explicit QhamError(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainError : QhamError {
  explicit DomainError(const std::string& msg) : QhamError(msg) {}
};
struct InputError : QhamError {
  explicit InputError(const std::string& msg) : QhamError(msg) {}
};

inline double frob(const CMat& m) { return m.norm(); }
inline double frob(const RMat& m) { return m.norm(); }

// ||S + S^T|| / max(1, ||S||), zero for exactly antisymmetric S.
inline double antisymmetry_residual(const RMat& s) {
  double n = s.norm();
  return (s + s.transpose()).norm() / std::max(1.0, n);
}

// Numerical rank: singular values above tol * max(1, sigma_max).
inline int numerical_rank(const RMat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<RMat> svd(m);
  const auto& sv = svd.singularValues();
  double cut = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

inline double condition_number(const RMat& m) {
  Eigen::JacobiSVD<RMat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

// Least-squares slope of log|y| vs log|t|. Pairs with |y| below `floor`
// are treated as exact zeros: if everything is below the floor the data is
// flat-zero and we report +inf (converged "faster than any order").
inline double loglog_slope(const std::vector<double>& t, const std::vector<double>& y,
                           double floor = 1e-13) {
  if (t.size() != y.size() || t.size() < 2) throw InputError("loglog_slope: need >= 2 samples");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(y[i]) > floor) {
      lx.push_back(std::log(std::abs(t[i])));
      ly.push_back(std::log(std::abs(y[i])));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::infinity();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
  mx /= double(lx.size());
  my /= double(lx.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string("non-finite value in ") + what);
}

inline RMat real_part_checked(const CMat& m, double tol, const char* what) {
  double im = m.imag().norm();
  if (im > tol * std::max(1.0, m.norm()))
    throw DomainError(std::string(what) + ": unexpected imaginary part " + std::to_string(im));
  return m.real();
}

}  // namespace qham
