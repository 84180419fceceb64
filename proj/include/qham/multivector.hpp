#pragma once

#include <functional>
#include <vector>

#include "qham/lie_group.hpp"
#include "qham/numerics.hpp"

namespace qham {

// Antisymmetric degree-k tensor over R^n, stored on increasing index tuples.
// Antisymmetry is structural: writes through unsorted tuples pick up the
// permutation sign, repeated indices contribute nothing.
class Multivector {
 public:
  Multivector() = default;
  Multivector(int degree, int dim);

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  std::size_t size() const { return c_.size(); }  // C(dim, degree)

  double raw(std::size_t r) const { return c_[r]; }
  double& raw(std::size_t r) { return c_[r]; }
  const std::vector<int>& tuple(std::size_t r) const;

  double coeff(std::vector<int> idx) const;        // any order; 0 on repeats
  void add(std::vector<int> idx, double v);        // signed accumulate

  Multivector wedge(const Multivector& b) const;
  Multivector contract(const RVec& covector) const;       // degree-(-1) antiderivation
  Multivector push_linear(const RMat& l) const;            // each slot through l (rows = new dim)
  Multivector apply_derivation(const RMat& l) const;       // sum over slots (e.g. ad_x action)

  double norm() const;                                     // sqrt of sum over increasing tuples
  double dot(const Multivector& b) const;

  Multivector& operator+=(const Multivector& b);
  Multivector& operator-=(const Multivector& b);
  Multivector& operator*=(double s);
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }

  static Multivector basis_wedge(int dim, const std::vector<int>& idx);
  // Degree-2 multivector with coefficient b(i,j) on e_i^e_j (i<j).
  static Multivector from_wedge_matrix(const RMat& b);
  RMat to_wedge_matrix() const;  // degree 2 only

 private:
  int degree_ = 0;
  int dim_ = 0;
  std::vector<double> c_;
};

// phi = (1/12) f_ijk e_i ^ e_j ^ e_k.
Multivector cartan_trivector(const LieGroupModel& model);

LieGroupModel doubled_model(const LieGroupModel& model);  // model x model

// psi = 1/2 sum_i e_i^1 ^ e_i^2 over g+g, with the Cartan trivector pushed
// through the diagonal and the two inclusions.
struct FusionBivector {
  LieGroupModel doubled;
  Multivector psi;
  Multivector diag_phi;
  Multivector phi1;
  Multivector phi2;
};
FusionBivector fusion_bivector(const LieGroupModel& model);

// Algebraic Schouten bracket on Lambda g extending the Lie bracket:
// [x_1^..^x_p, y_1^..^y_q] = sum_{r,s} (-1)^{r+s} [x_r,y_s]^x_..^y_.. .
Multivector schouten_lie(const Multivector& a, const Multivector& b, const LieGroupModel& model);

// Coordinate Schouten bracket of two bivector fields given by evaluators
// returning coefficient matrices in the convention P = C_jk d_j ^ d_k
// (full index sum). Central differences with one Richardson step (h, h/2).
// The result is a degree-3 multivector in wedge coefficients.
using BivectorField = std::function<RMat(const RVec&)>;
Multivector schouten_field(const BivectorField& p, const BivectorField& q, const RVec& point,
                           double fd_step);

}  // namespace qham
