#pragma once

#include "qham/lie_group.hpp"
#include "qham/multivector.hpp"

namespace qham {

// One point of the deformation space D(G,{1}) = (G x R*) u (g x {0}).
struct GPoint {
  double t = 0.0;
  GroupElement g;  // valid when t != 0
  RVec x;          // valid when t == 0
  bool zero_fiber() const { return t == 0.0; }
};

GPoint group_fiber_point(const GroupElement& g, double t);
GPoint zero_fiber_point(const LieGroupModel& model, const RVec& x);
// Chart map (x,t) -> (exp(tx), t) for t != 0, (x,0) at t = 0.
GPoint chart_point(const LieGroupModel& model, const RVec& x, double t);

// Chart domain: exp(tx) stays inside the principal branch and t*ad_x clear
// of the eta poles.
bool chart_domain_ok(const LieGroupModel& model, const RVec& x, double t,
                     double margin = 1e-6);

// Coefficient matrix (convention P = C_jk d_j ^ d_k) of the pullback of
// t*P_G through the chart; the t = 0 branch is the linear Poisson matrix
// -1/2 ad_x. Closed form: C(x,t) = (eta(-t ad)^2 - eta(t ad)^2) / (4t).
RMat family_bivector(const LieGroupModel& model, const RVec& x, double t);

// Chart pullback of t^2 * phi_G; equals t^2 * Lambda^3(ad_x) phi.
Multivector family_trivector(const LieGroupModel& model, const RVec& x, double t);

// Fiberwise multiplication on D(G,{1}): (ab,t) for t != 0, (a+b,0) at t = 0.
GPoint mult_map(const GPoint& a, const GPoint& b);

// || (1/t) log(exp(tx) exp(ty)) - (x+y) - (t/2)[x,y] ||, an O(t^2) quantity.
double mult_chart_residual(const LieGroupModel& model, const RVec& x, const RVec& y, double t);

// Internal fusion of two copies of the conjugation family on the g+g chart:
// block-diagonal family bivector minus t times the fundamental psi-bivector
// (whose chart pullback is slotwise ad_{x_i}, independent of t).
RMat fused_family_bivector(const LieGroupModel& model, const RVec& x1, const RVec& x2, double t);

// Fused family moment mult(chart(x1,t), chart(x2,t)); additive at t = 0.
GPoint fused_family_moment(const LieGroupModel& model, const RVec& x1, const RVec& x2, double t);

}  // namespace qham
