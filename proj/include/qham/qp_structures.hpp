#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qham/deformation.hpp"
#include "qham/lie_group.hpp"
#include "qham/multivector.hpp"

namespace qham {

// A point of a charted space: either a tuple of group elements or a plain
// coordinate vector. Tangent vectors are always left-trivialized coefficient
// vectors of length ChartedSpace::dim.
struct SpacePoint {
  std::vector<GroupElement> g;
  RVec v;
};

SpacePoint point_of(std::vector<GroupElement> g);
SpacePoint point_of_coords(RVec v);

struct ChartedSpace {
  int dim = 0;
  std::string chart_name;
  LieGroupModel acting;  // product model of the acting group
  // action by a tuple of elements, one per acting factor
  std::function<SpacePoint(const std::vector<GroupElement>&, const SpacePoint&)> act;
  // fundamental vector field of x (minus convention: d/dt exp(-tx).m)
  std::function<RVec(const RVec&, const SpacePoint&)> inf_act;
  // retraction p -> p . exp(eps xi) used for finite differences
  std::function<SpacePoint(const SpacePoint&, const RVec&, double)> move;
  // exact tangent map of the action at p (dim x dim)
  std::function<RMat(const std::vector<GroupElement>&, const SpacePoint&)> tangent_map;
};

struct QuasiPoissonBundle {
  ChartedSpace space;
  std::function<RMat(const SpacePoint&)> P;  // convention P = C_jk d_j ^ d_k
  std::function<Multivector(const SpacePoint&)> phi;
  bool group_valued_moment = true;
  std::function<std::vector<GroupElement>(const SpacePoint&)> mu_group;
  std::function<RVec(const SpacePoint&)> mu_lin;
};

struct QuasiHamBundle {
  ChartedSpace space;
  std::function<double(const SpacePoint&, const RVec&, const RVec&)> omega;
  std::function<std::vector<GroupElement>(const SpacePoint&)> mu;
  // exact left-trivialized Jacobian of mu (acting-dim x dim)
  std::function<RMat(const SpacePoint&)> mu_jacobian;
};

ChartedSpace conjugation_space(const LieGroupModel& model);
QuasiPoissonBundle PG_bundle(const LieGroupModel& model);
QuasiPoissonBundle P0_bundle(const LieGroupModel& model);
QuasiHamBundle double_bundle(const LieGroupModel& model);

// Assembled omega^flat matrix W_ab = omega(E_a, E_b) at a point.
RMat omega_matrix(const QuasiHamBundle& b, const SpacePoint& p);

struct Eq1Result {
  RMat E;           // Id - 1/4 e_i (x) mu^*(theta^L_i - theta^R_i)
  RMat W;           // omega^flat
  double cond_W;
};
Eq1Result eq1_operator(const QuasiHamBundle& b, const SpacePoint& p);

struct Eq1Candidate {
  RMat sharp;             // E . W^{-1}
  double antisym_residual;
};
Eq1Candidate eq1_candidate_P(const QuasiHamBundle& b, const SpacePoint& p,
                             double cond_threshold = 1e6);

// Rank of Im(P^sharp) + span of fundamental vector fields at p.
int distribution_dim(const QuasiPoissonBundle& b, const SpacePoint& p, double svd_tol = 1e-8);

struct QpVerifyReport {
  std::string bundle;
  int n_points = 0;
  std::uint64_t seed = 0;
  double c_estimate = 0;
  bool c_defined = false;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
};

// Measures ||FD-Schouten(P,P) - c phi|| over chart samples; c is estimated
// from the first sample unless fixed by the caller.
QpVerifyReport verify_quasi_poisson(const LieGroupModel& model, int n_points, std::uint64_t seed,
                                    double fd_step, double tol,
                                    std::optional<double> c_fixed = std::nullopt);

// The quasi-Poisson normalization constant [P_G,P_G] = c phi_G, measured on
// su2 at one regular chart point and cached. Reported, never assumed.
double measure_qp_constant(const LieGroupModel& model, const RVec& x0, double fd_step);
double default_qp_constant();

// Membership in the conjugacy-class deformation family: for t != 0 tests
// g in C_{exp(tx)} spectrally; the t = 0 overload tests y in the adjoint
// orbit of x.
bool conjugacy_family_member(const LieGroupModel& model, const RVec& x, double t,
                             const GroupElement& g, double tol = 1e-8);
bool conjugacy_family_member_zero(const LieGroupModel& model, const RVec& x, const RVec& y,
                                  double tol = 1e-8);

// Regular-point sampling for the double: rejects points whose omega^flat
// condition number exceeds the threshold.
SpacePoint sample_regular_double_point(const QuasiHamBundle& b, const LieGroupModel& model,
                                       Rng& rng, double cond_threshold = 1e6, int max_tries = 64);

}  // namespace qham
