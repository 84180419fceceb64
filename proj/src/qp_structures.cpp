#include "qham/qp_structures.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace qham {

SpacePoint point_of(std::vector<GroupElement> g) {
  SpacePoint p;
  p.g = std::move(g);
  return p;
}
SpacePoint point_of_coords(RVec v) {
  SpacePoint p;
  p.v = std::move(v);
  return p;
}

ChartedSpace conjugation_space(const LieGroupModel& model) {
  ChartedSpace s;
  s.dim = model.dim();
  s.chart_name = "conjugation(" + model.name() + ")";
  s.acting = model;
  s.act = [](const std::vector<GroupElement>& g, const SpacePoint& p) {
    return point_of({group_conj(g.at(0), p.g.at(0))});
  };
  s.inf_act = [model](const RVec& x, const SpacePoint& p) {
    // d/dt exp(-tx) g exp(tx), left-trivialized: x - Ad(g^-1) x
    return RVec(x - Ad(group_inv(p.g.at(0)), x));
  };
  s.move = [model](const SpacePoint& p, const RVec& xi, double eps) {
    return point_of({group_mul(p.g.at(0), exp_map(model, eps * xi))});
  };
  s.tangent_map = [](const std::vector<GroupElement>& g, const SpacePoint&) {
    return Ad_matrix(g.at(0));
  };
  return s;
}

QuasiPoissonBundle PG_bundle(const LieGroupModel& model) {
  QuasiPoissonBundle b;
  b.space = conjugation_space(model);
  Multivector phi = cartan_trivector(model);
  int n = model.dim();
  b.P = [](const SpacePoint& p) {
    RMat a = Ad_matrix(group_inv(p.g.at(0)));
    return RMat(0.25 * (a - a.transpose()));
  };
  b.phi = [phi, n](const SpacePoint& p) {
    RMat gen = RMat::Identity(n, n) - Ad_matrix(group_inv(p.g.at(0)));
    return phi.push_linear(gen);
  };
  b.group_valued_moment = true;
  b.mu_group = [](const SpacePoint& p) { return std::vector<GroupElement>{p.g.at(0)}; };
  return b;
}

QuasiPoissonBundle P0_bundle(const LieGroupModel& model) {
  QuasiPoissonBundle b;
  ChartedSpace s;
  int n = model.dim();
  s.dim = n;
  s.chart_name = "linear(" + model.name() + "*)";
  s.acting = model;
  s.act = [model](const std::vector<GroupElement>& g, const SpacePoint& p) {
    return point_of_coords(RVec(Ad(g.at(0), p.v)));
  };
  s.inf_act = [model](const RVec& x, const SpacePoint& p) {
    return RVec(-model.bracket(x, p.v));
  };
  s.move = [](const SpacePoint& p, const RVec& xi, double eps) {
    return point_of_coords(RVec(p.v + eps * xi));
  };
  s.tangent_map = [](const std::vector<GroupElement>& g, const SpacePoint&) {
    return Ad_matrix(g.at(0));
  };
  b.space = s;
  b.P = [model](const SpacePoint& p) { return RMat(-0.5 * model.ad_matrix(p.v)); };
  b.phi = [n](const SpacePoint&) { return Multivector(3, n); };
  b.group_valued_moment = false;
  b.mu_lin = [](const SpacePoint& p) { return p.v; };
  return b;
}

QuasiHamBundle double_bundle(const LieGroupModel& model) {
  QuasiHamBundle b;
  ChartedSpace s;
  int n = model.dim();
  s.dim = 2 * n;
  s.chart_name = "double(" + model.name() + ")";
  s.acting = doubled_model(model);
  s.act = [](const std::vector<GroupElement>& gh, const SpacePoint& p) {
    const GroupElement &g = gh.at(0), &h = gh.at(1);
    GroupElement a = p.g.at(0), bb = p.g.at(1);
    GroupElement a2 = group_mul(group_mul(g, a), group_inv(h));
    GroupElement b2 = group_conj(h, bb);
    return point_of({a2, b2});
  };
  s.inf_act = [n](const RVec& xy, const SpacePoint& p) {
    RVec x = xy.head(n), y = xy.tail(n);
    RVec out(2 * n);
    out.head(n) = -Ad(group_inv(p.g.at(0)), x) + y;
    out.tail(n) = y - Ad(group_inv(p.g.at(1)), y);
    return out;
  };
  s.move = [model, n](const SpacePoint& p, const RVec& xi, double eps) {
    GroupElement a = group_mul(p.g.at(0), exp_map(model, RVec(eps * xi.head(n))));
    GroupElement bb = group_mul(p.g.at(1), exp_map(model, RVec(eps * xi.tail(n))));
    return point_of({a, bb});
  };
  s.tangent_map = [n](const std::vector<GroupElement>& gh, const SpacePoint&) {
    RMat ah = Ad_matrix(gh.at(1));
    RMat t = RMat::Zero(2 * n, 2 * n);
    t.topLeftCorner(n, n) = ah;
    t.bottomRightCorner(n, n) = ah;
    return t;
  };
  b.space = s;

  b.omega = [model, n](const SpacePoint& p, const RVec& t1, const RVec& t2) {
    // omega = 1/2 { <Ad_b a*thL ^ a*thL> + <a*thL ^ (b*thL + b*thR)> }
    RMat adb = Ad_matrix(p.g.at(1));
    RVec xa = t1.head(n), xb = t1.tail(n);
    RVec ya = t2.head(n), yb = t2.tail(n);
    double term1 = (adb * xa).dot(ya) - (adb * ya).dot(xa);
    double term2 = xa.dot(yb + adb * yb) - ya.dot(xb + adb * xb);
    return 0.5 * (term1 + term2);
  };
  b.mu = [](const SpacePoint& p) {
    GroupElement a = p.g.at(0), bb = p.g.at(1);
    return std::vector<GroupElement>{group_conj(a, bb), group_inv(bb)};
  };
  b.mu_jacobian = [n](const SpacePoint& p) {
    // dmu1 = Ad_a(Ad_{b^-1} xi_a + xi_b - xi_a), dmu2 = -Ad_b xi_b
    RMat ada = Ad_matrix(p.g.at(0));
    RMat adb = Ad_matrix(p.g.at(1));
    RMat adbi = Ad_matrix(group_inv(p.g.at(1)));
    RMat j = RMat::Zero(2 * n, 2 * n);
    j.topLeftCorner(n, n) = ada * (adbi - RMat::Identity(n, n));
    j.topRightCorner(n, n) = ada;
    j.bottomRightCorner(n, n) = -adb;
    return j;
  };
  return b;
}

RMat omega_matrix(const QuasiHamBundle& b, const SpacePoint& p) {
  int n = b.space.dim;
  RMat w(n, n);
  std::vector<RVec> basis(n);
  for (int i = 0; i < n; ++i) {
    RVec e = RVec::Zero(n);
    e(i) = 1.0;
    basis[i] = e;
  }
  for (int i = 0; i < n; ++i) {
    w(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      double v = b.omega(p, basis[i], basis[j]);
      w(i, j) = v;
      w(j, i) = -v;
    }
  }
  return w;
}

Eq1Result eq1_operator(const QuasiHamBundle& b, const SpacePoint& p) {
  int dim = b.space.dim;
  int m = b.space.acting.dim();
  RMat f(dim, m);
  for (int i = 0; i < m; ++i) {
    RVec e = RVec::Zero(m);
    e(i) = 1.0;
    f.col(i) = b.space.inf_act(e, p);
  }
  std::vector<GroupElement> mu = b.mu(p);
  RMat adm = RMat::Zero(m, m);
  int off = 0;
  for (const GroupElement& gi : mu) {
    int d = gi.model.dim();
    adm.block(off, off, d, d) = Ad_matrix(gi);
    off += d;
  }
  if (off != m) throw InputError("eq1_operator: moment arity does not match acting group");
  RMat j = b.mu_jacobian(p);
  RMat ccov = (RMat::Identity(m, m) - adm) * j;
  Eq1Result r;
  r.E = RMat::Identity(dim, dim) - 0.25 * f * ccov;
  r.W = omega_matrix(b, p);
  r.cond_W = condition_number(r.W);
  return r;
}

Eq1Candidate eq1_candidate_P(const QuasiHamBundle& b, const SpacePoint& p, double cond_threshold) {
  Eq1Result r = eq1_operator(b, p);
  if (!(r.cond_W < cond_threshold))
    throw DomainError("eq1_candidate_P: omega degenerate at point (resample)");
  Eq1Candidate c;
  c.sharp = r.E * r.W.inverse();
  c.antisym_residual = antisymmetry_residual(c.sharp);
  return c;
}

int distribution_dim(const QuasiPoissonBundle& b, const SpacePoint& p, double svd_tol) {
  int dim = b.space.dim;
  int m = b.space.acting.dim();
  RMat sharp = -2.0 * b.P(p);  // P(alpha,.) for C-convention matrices
  RMat span(dim, dim + m);
  span.leftCols(dim) = sharp;
  for (int i = 0; i < m; ++i) {
    RVec e = RVec::Zero(m);
    e(i) = 1.0;
    span.col(dim + i) = b.space.inf_act(e, p);
  }
  return numerical_rank(span, svd_tol);
}

QpVerifyReport verify_quasi_poisson(const LieGroupModel& model, int n_points, std::uint64_t seed,
                                    double fd_step, double tol, std::optional<double> c_fixed) {
  if (n_points < 1) throw InputError("verify_quasi_poisson: need at least one point");
  QpVerifyReport rep;
  rep.bundle = "PG(" + model.name() + ")";
  rep.n_points = n_points;
  rep.seed = seed;
  rep.tolerance = tol;
  BivectorField pf = [model](const RVec& x) { return family_bivector(model, x, 1.0); };
  double c = 0;
  bool have_c = c_fixed.has_value();
  if (have_c) c = *c_fixed;
  double worst = 0;
  for (int k = 0; k < n_points; ++k) {
    Rng rng(seed, std::uint64_t(k));
    RVec x = random_algebra(model, rng, 0.6);
    if (!chart_domain_ok(model, x, 1.0)) x *= 0.25;
    Multivector sq = schouten_field(pf, pf, x, fd_step);
    Multivector phi = family_trivector(model, x, 1.0);
    double phin2 = phi.dot(phi);
    if (!have_c) {
      if (phin2 < 1e-18) continue;  // abelian or degenerate point: defer
      c = sq.dot(phi) / phin2;
      have_c = true;
    }
    Multivector resid = sq - c * phi;
    worst = std::max(worst, resid.norm());
  }
  rep.c_estimate = have_c ? c : 0.0;
  rep.c_defined = have_c;
  rep.max_residual = worst;
  rep.pass = worst < tol;
  return rep;
}

double measure_qp_constant(const LieGroupModel& model, const RVec& x0, double fd_step) {
  BivectorField pf = [model](const RVec& x) { return family_bivector(model, x, 1.0); };
  Multivector sq = schouten_field(pf, pf, x0, fd_step);
  Multivector phi = family_trivector(model, x0, 1.0);
  double phin2 = phi.dot(phi);
  if (phin2 < 1e-18) throw DomainError("measure_qp_constant: phi vanishes at the chosen point");
  return sq.dot(phi) / phin2;
}

double default_qp_constant() {
  // Rank-1 groups have identically vanishing phi_G (conjugation orbits are
  // 2-dimensional), so the constant is measured on su3, the smallest model
  // where both sides of the identity are nonzero.
  static std::once_flag once;
  static double value = 0;
  std::call_once(once, [] {
    LieGroupModel su3 = LieGroupModel::make("su3");
    RVec x0(8);
    x0 << 0.23, -0.11, 0.31, 0.17, -0.26, 0.08, 0.19, -0.14;
    value = measure_qp_constant(su3, x0, 1e-3);
  });
  return value;
}

namespace {

bool spectra_match(const CMat& a, const CMat& b, double tol) {
  // tolerance-based multiset matching; sorting alone is unstable when
  // eigenvalues share a real part up to roundoff
  Eigen::ComplexEigenSolver<CMat> ea(a, false), eb(b, false);
  std::vector<Cplx> la, lb;
  for (Eigen::Index i = 0; i < ea.eigenvalues().size(); ++i) la.push_back(ea.eigenvalues()(i));
  for (Eigen::Index i = 0; i < eb.eigenvalues().size(); ++i) lb.push_back(eb.eigenvalues()(i));
  if (la.size() != lb.size()) return false;
  std::vector<bool> used(lb.size(), false);
  for (const Cplx& u : la) {
    int best = -1;
    double bestd = tol;
    for (std::size_t j = 0; j < lb.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(u - lb[j]);
      if (d <= bestd) {
        bestd = d;
        best = int(j);
      }
    }
    if (best < 0) return false;
    used[std::size_t(best)] = true;
  }
  return true;
}

}  // namespace

bool conjugacy_family_member(const LieGroupModel& model, const RVec& x, double t,
                             const GroupElement& g, double tol) {
  if (t == 0.0) throw InputError("conjugacy_family_member: use the t = 0 overload");
  GroupElement base = exp_map(model, t * x);
  switch (model.kind()) {
    case GroupKind::Torus:
      return (g.m - base.m).norm() < tol;  // abelian classes are points
    case GroupKind::Product: {
      for (int i = 0; i < model.num_factors(); ++i) {
        auto [aoff, ad] = model.factor_algebra_range(i);
        if (!conjugacy_family_member(model.factor(i), RVec(x.segment(aoff, ad)), t,
                                     factor_element(g, i), tol))
          return false;
      }
      return true;
    }
    default:
      return spectra_match(g.m, base.m, tol);
  }
}

bool conjugacy_family_member_zero(const LieGroupModel& model, const RVec& x, const RVec& y,
                                  double tol) {
  switch (model.kind()) {
    case GroupKind::Torus:
      return (x - y).norm() < tol;
    case GroupKind::Product: {
      for (int i = 0; i < model.num_factors(); ++i) {
        auto [aoff, ad] = model.factor_algebra_range(i);
        if (!conjugacy_family_member_zero(model.factor(i), RVec(x.segment(aoff, ad)),
                                          RVec(y.segment(aoff, ad)), tol))
          return false;
      }
      return true;
    }
    default:
      return spectra_match(model.matrix(x), model.matrix(y), tol);
  }
}

SpacePoint sample_regular_double_point(const QuasiHamBundle& b, const LieGroupModel& model,
                                       Rng& rng, double cond_threshold, int max_tries) {
  for (int k = 0; k < max_tries; ++k) {
    SpacePoint p = point_of(
        {random_group_element(model, rng, 0.9), random_group_element(model, rng, 0.9)});
    RMat w = omega_matrix(b, p);
    if (condition_number(w) < cond_threshold) return p;
  }
  throw DomainError("sample_regular_double_point: no regular point found");
}

}  // namespace qham
