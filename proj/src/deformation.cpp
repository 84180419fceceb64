#include "qham/deformation.hpp"

#include <cmath>

namespace qham {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

GPoint group_fiber_point(const GroupElement& g, double t) {
  if (t == 0.0) throw InputError("group fiber needs t != 0");
  GPoint p;
  p.t = t;
  p.g = g;
  return p;
}

GPoint zero_fiber_point(const LieGroupModel& model, const RVec& x) {
  GPoint p;
  p.t = 0.0;
  p.g = identity_element(model);
  p.x = x;
  return p;
}

GPoint chart_point(const LieGroupModel& model, const RVec& x, double t) {
  if (t == 0.0) return zero_fiber_point(model, x);
  return group_fiber_point(exp_map(model, t * x), t);
}

bool chart_domain_ok(const LieGroupModel& model, const RVec& x, double t, double margin) {
  CMat X = model.matrix(t * x);
  Eigen::ComplexEigenSolver<CMat> es(X, false);
  double mx = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    mx = std::max(mx, std::abs(es.eigenvalues()(i).imag()));
  if (mx >= kPi - margin) return false;  // exp principal-branch bound
  RMat ad = model.ad_matrix(t * x);
  Eigen::ComplexEigenSolver<CMat> esa(ad.cast<Cplx>(), false);
  double ma = 0;
  for (Eigen::Index i = 0; i < esa.eigenvalues().size(); ++i)
    ma = std::max(ma, std::abs(esa.eigenvalues()(i)));
  return ma < 2 * kPi - margin;  // eta pole bound
}

namespace {

// Scalar symbol of the family bivector: (eta(-ts)^2 - eta(ts)^2)/(4t)
// = -(t s^2 / 4) coth(ts/2). The series branch avoids the catastrophic
// cancellation of differencing two near-identity matrix functions at
// small t; poles sit at ts = 2 pi i k, k != 0.
Cplx family_symbol(Cplx s, double t) {
  Cplx u = 0.5 * t * s;
  if (std::abs(u) < 0.25) {
    Cplx u2 = u * u;
    // u coth u = 1 + u^2/3 - u^4/45 + 2u^6/945 - u^8/4725
    Cplx ucoth = 1.0 + u2 * (1.0 / 3.0 + u2 * (-1.0 / 45.0 + u2 * (2.0 / 945.0 - u2 / 4725.0)));
    return -0.5 * s * ucoth;
  }
  double k = std::round(u.imag() / kPi);
  if (k != 0.0 && std::abs(u - Cplx(0, kPi * k)) < 1e-8)
    throw DomainError("family_bivector: eta pole at t*ad_x eigenvalue");
  return -(t * s * s / 4.0) * (std::cosh(u) / std::sinh(u));
}

}  // namespace

RMat family_bivector(const LieGroupModel& model, const RVec& x, double t) {
  RMat ad = model.ad_matrix(x);
  if (t == 0.0) return -0.5 * ad;
  Eigen::ComplexEigenSolver<CMat> es(ad.cast<Cplx>());
  if (es.info() != Eigen::Success) throw DomainError("family_bivector: eigensolver failed");
  CVec ev(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = family_symbol(es.eigenvalues()(i), t);
  CMat r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().inverse();
  return real_part_checked(r, 1e-9, "family_bivector");
}

Multivector family_trivector(const LieGroupModel& model, const RVec& x, double t) {
  Multivector phi = cartan_trivector(model);
  Multivector out = phi.push_linear(model.ad_matrix(x));
  out *= t * t;
  return out;
}

GPoint mult_map(const GPoint& a, const GPoint& b) {
  if (a.t != b.t) throw InputError("mult_map: mismatched fibers");
  if (a.zero_fiber()) {
    if (a.x.size() != b.x.size()) throw InputError("mult_map: dimension mismatch at t = 0");
    GPoint p;
    p.t = 0.0;
    p.g = a.g;
    p.x = a.x + b.x;
    return p;
  }
  return group_fiber_point(group_mul(a.g, b.g), a.t);
}

double mult_chart_residual(const LieGroupModel& model, const RVec& x, const RVec& y, double t) {
  if (t == 0.0) return 0.0;  // exact additive branch
  GroupElement gx = exp_map(model, t * x);
  GroupElement gy = exp_map(model, t * y);
  GroupElement prod = group_mul(gx, gy);
  RVec z = log_map(prod) / t;
  RVec ref = x + y + (t / 2.0) * model.bracket(x, y);
  return (z - ref).norm();
}

RMat fused_family_bivector(const LieGroupModel& model, const RVec& x1, const RVec& x2, double t) {
  int n = model.dim();
  RMat out = RMat::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = family_bivector(model, x1, t);
  out.bottomRightCorner(n, n) = family_bivector(model, x2, t);
  // Fundamental fields of the conjugation action pull back to ad_x per slot;
  // psi_M = 1/2 sum_i (e_i^1)_M ^ (e_i^2)_M gives C_psi = 1/4 (U V^T - V U^T).
  RMat ad1 = model.ad_matrix(x1), ad2 = model.ad_matrix(x2);
  RMat u = RMat::Zero(2 * n, n), v = RMat::Zero(2 * n, n);
  u.topRows(n) = ad1;
  v.bottomRows(n) = ad2;
  RMat cpsi = 0.25 * (u * v.transpose() - v * u.transpose());
  return out - t * cpsi;
}

GPoint fused_family_moment(const LieGroupModel& model, const RVec& x1, const RVec& x2, double t) {
  return mult_map(chart_point(model, x1, t), chart_point(model, x2, t));
}

}  // namespace qham
