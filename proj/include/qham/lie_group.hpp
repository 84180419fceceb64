#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qham/numerics.hpp"
#include "qham/rng.hpp"

namespace qham {

enum class GroupKind { Su2, Su3, So3, Torus, Product };

// A compact matrix group model: an orthonormal basis (e_i) of its Lie algebra
// with respect to <X,Y> = -Re tr(XY), the structure constants
// f_ijk = <e_i,[e_j,e_k]>, and the factor layout for product models.
// Immutable after construction; cheap to copy.
class LieGroupModel {
 public:
  // Default-constructed models are empty placeholders; any accessor throws.
  LieGroupModel() = default;

  // "su2" | "su3" | "so3" | "torus:k" | "prod:su2,su2,..."
  static LieGroupModel make(const std::string& spec);
  static LieGroupModel product(const std::vector<LieGroupModel>& factors);

  const std::string& name() const;
  GroupKind kind() const;
  int dim() const;
  int matrix_size() const;
  const CMat& basis(int i) const;

  // <X,Y> = -Re tr(XY) on matrices; the basis is orthonormal for it.
  double inner(const CMat& x, const CMat& y) const;
  RVec coords(const CMat& x) const;
  CMat matrix(const RVec& coeffs) const;
  // Distance of x from span(basis), relative to max(1,|x|).
  double algebra_residual(const CMat& x) const;

  double f(int i, int j, int k) const;
  const std::vector<double>& f_tensor() const;  // dense, idx (i*dim+j)*dim+k

  RVec bracket(const RVec& x, const RVec& y) const;
  RMat ad_matrix(const RVec& x) const;  // (ad_x)_{jk} = sum_i f_{jik} x_i

  int num_factors() const;  // 1 for simple/torus models
  const LieGroupModel& factor(int i) const;
  std::pair<int, int> factor_matrix_block(int i) const;   // (offset, size)
  std::pair<int, int> factor_algebra_range(int i) const;  // (offset, dim)

  // Unitarity/orthogonality + determinant/shape residual per group kind.
  double group_residual(const CMat& g) const;

  bool same_as(const LieGroupModel& other) const;

  struct Data;  // defined in lie_group.cpp

 private:
  explicit LieGroupModel(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  const Data& data() const;
  std::shared_ptr<const Data> d_;
};

struct GroupElement {
  LieGroupModel model;
  CMat m;
};

GroupElement identity_element(const LieGroupModel& model);
GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const GroupElement& a);
GroupElement group_conj(const GroupElement& g, const GroupElement& h);  // g h g^-1
double group_distance(const GroupElement& a, const GroupElement& b);

// Matrix exponential chart and its principal inverse.
GroupElement exp_map(const LieGroupModel& model, const RVec& x);
// True when every eigenvalue argument of g lies in (-pi+margin, pi-margin).
bool log_in_domain(const GroupElement& g, double margin = 1e-9);
RVec log_map(const GroupElement& g);  // throws DomainError outside the principal branch

RVec Ad(const GroupElement& g, const RVec& x);
RMat Ad_matrix(const GroupElement& g);

// eta(s) = s / (1 - exp(-s)) applied to ad_x (or to any antisymmetric A).
// Throws DomainError when an eigenvalue of the argument sits at a pole
// 2*pi*i*k, k != 0.
RMat dexp_eta(const LieGroupModel& model, const RVec& x);
RMat eta_of_antisym(const RMat& a);
RMat eta_series(const RMat& a, int terms = 12);  // Bernoulli series, |a| < 2pi

// Left-trivialized differential of exp at x: dexp_x = (1 - e^{-ad_x})/ad_x,
// i.e. the inverse of eta(ad_x).
RMat dexp_matrix(const LieGroupModel& model, const RVec& x);

// Maurer-Cartan translations of a tangent matrix v at g: theta_L = g^-1 v,
// theta_R = v g^-1, expressed in basis coordinates. Throws DomainError when
// v is not tangent at g.
RVec theta_L(const GroupElement& g, const CMat& v, double tol = 1e-8);
RVec theta_R(const GroupElement& g, const CMat& v, double tol = 1e-8);

RVec random_algebra(const LieGroupModel& model, Rng& rng, double scale = 1.0);
GroupElement random_group_element(const LieGroupModel& model, Rng& rng, double scale = 0.8);

// Factor access for product-model elements (also valid for 1-factor models).
GroupElement factor_element(const GroupElement& g, int i);
GroupElement embed_factors(const LieGroupModel& product_model,
                           const std::vector<GroupElement>& parts);

}  // namespace qham
