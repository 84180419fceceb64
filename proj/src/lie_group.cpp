#include "qham/lie_group.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qham {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<CMat> pauli_basis() {
  // sigma_k / (i*sqrt(2)): orthonormal for -tr, f_ijk = sqrt(2) eps_ijk.
  CMat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Cplx(0, -1), Cplx(0, 1), 0;
  s3 << 1, 0, 0, -1;
  Cplx c = Cplx(0, -1) / std::sqrt(2.0);
  return {c * s1, c * s2, c * s3};
}

std::vector<CMat> gellmann_candidates() {
  auto L = [](std::initializer_list<Cplx> v) {
    CMat m(3, 3);
    int k = 0;
    for (Cplx x : v) m(k / 3, k % 3) = x, ++k;
    return m;
  };
  Cplx i(0, 1);
  double r3 = 1.0 / std::sqrt(3.0);
  std::vector<CMat> lam = {
      L({0, 1, 0, 1, 0, 0, 0, 0, 0}),
      L({0, -i, 0, i, 0, 0, 0, 0, 0}),
      L({1, 0, 0, 0, -1, 0, 0, 0, 0}),
      L({0, 0, 1, 0, 0, 0, 1, 0, 0}),
      L({0, 0, -i, 0, 0, 0, i, 0, 0}),
      L({0, 0, 0, 0, 0, 1, 0, 1, 0}),
      L({0, 0, 0, 0, 0, -i, 0, i, 0}),
      r3 * L({1, 0, 0, 0, 1, 0, 0, 0, -2}),
  };
  std::vector<CMat> out;
  for (const auto& l : lam) out.push_back(Cplx(0, -1) * l);  // anti-Hermitian
  return out;
}

std::vector<CMat> so3_basis() {
  RMat l1 = RMat::Zero(3, 3), l2 = RMat::Zero(3, 3), l3 = RMat::Zero(3, 3);
  l1(1, 2) = -1; l1(2, 1) = 1;
  l2(0, 2) = 1;  l2(2, 0) = -1;
  l3(0, 1) = -1; l3(1, 0) = 1;
  std::vector<CMat> out;
  for (const RMat* l : {&l1, &l2, &l3}) out.push_back(l->cast<Cplx>() / std::sqrt(2.0));
  return out;
}

}  // namespace

struct LieGroupModel::Data {
  std::string name;
  GroupKind kind = GroupKind::Su2;
  int dim = 0;
  int matrix_size = 0;
  std::vector<CMat> basis;
  std::vector<double> f;  // (i*dim + j)*dim + k
  std::vector<LieGroupModel> factors;
  std::vector<std::pair<int, int>> mat_blocks;  // offset,size per factor
  std::vector<std::pair<int, int>> alg_ranges;  // offset,dim per factor
};

namespace {

double inner_tr(const CMat& x, const CMat& y) { return -(x * y).trace().real(); }

// Gram-Schmidt for -tr; drops (near-)dependent candidates.
std::vector<CMat> orthonormalize(const std::vector<CMat>& cand) {
  std::vector<CMat> out;
  for (CMat v : cand) {
    for (const CMat& e : out) v -= inner_tr(v, e) * e;
    double n2 = inner_tr(v, v);
    if (n2 > 1e-20) out.push_back(v / std::sqrt(n2));
  }
  return out;
}

void fill_structure_constants(LieGroupModel::Data& d) {
  int n = d.dim;
  d.f.assign(std::size_t(n) * n * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      CMat br = d.basis[j] * d.basis[k] - d.basis[k] * d.basis[j];
      for (int i = 0; i < n; ++i) {
        double v = inner_tr(d.basis[i], br);
        if (std::abs(v) < 1e-14) v = 0.0;
        d.f[(std::size_t(i) * n + j) * n + k] = v;
      }
    }
}

std::shared_ptr<LieGroupModel::Data> build_simple(GroupKind kind, const std::string& name,
                                                  std::vector<CMat> cand, int msize) {
  auto d = std::make_shared<LieGroupModel::Data>();
  d->name = name;
  d->kind = kind;
  d->matrix_size = msize;
  d->basis = orthonormalize(cand);
  d->dim = int(d->basis.size());
  fill_structure_constants(*d);
  d->mat_blocks = {{0, msize}};
  d->alg_ranges = {{0, d->dim}};
  return d;
}

std::shared_ptr<LieGroupModel::Data> build_torus(int k) {
  if (k < 1) throw InputError("torus rank must be >= 1");
  std::vector<CMat> cand;
  for (int j = 0; j < k; ++j) {
    CMat e = CMat::Zero(k, k);
    e(j, j) = Cplx(0, 1);
    cand.push_back(e);
  }
  return build_simple(GroupKind::Torus, "torus:" + std::to_string(k), cand, k);
}

}  // namespace

LieGroupModel LieGroupModel::make(const std::string& spec) {
  if (spec == "su2") return LieGroupModel(build_simple(GroupKind::Su2, "su2", pauli_basis(), 2));
  if (spec == "su3")
    return LieGroupModel(build_simple(GroupKind::Su3, "su3", gellmann_candidates(), 3));
  if (spec == "so3") return LieGroupModel(build_simple(GroupKind::So3, "so3", so3_basis(), 3));
  if (spec.rfind("torus:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(spec.substr(6));
    } catch (...) {
      throw InputError("bad torus spec: " + spec);
    }
    return LieGroupModel(build_torus(k));
  }
  if (spec.rfind("prod:", 0) == 0) {
    std::vector<LieGroupModel> factors;
    std::stringstream ss(spec.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) factors.push_back(make(tok));
    }
    if (factors.size() < 2) throw InputError("product needs >= 2 factors: " + spec);
    return product(factors);
  }
  throw InputError("unsupported group kind: " + spec);
}

LieGroupModel LieGroupModel::product(const std::vector<LieGroupModel>& factors) {
  if (factors.empty()) throw InputError("empty product");
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::Product;
  d->factors = factors;
  std::string nm = "prod:";
  int msize = 0, dim = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    nm += (i ? "," : "") + factors[i].name();
    d->mat_blocks.emplace_back(msize, factors[i].matrix_size());
    d->alg_ranges.emplace_back(dim, factors[i].dim());
    msize += factors[i].matrix_size();
    dim += factors[i].dim();
  }
  d->name = nm;
  d->matrix_size = msize;
  d->dim = dim;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto [off, sz] = d->mat_blocks[i];
    for (int j = 0; j < factors[i].dim(); ++j) {
      CMat e = CMat::Zero(msize, msize);
      e.block(off, off, sz, sz) = factors[i].basis(j);
      d->basis.push_back(e);
    }
  }
  fill_structure_constants(*d);
  return LieGroupModel(d);
}

const LieGroupModel::Data& LieGroupModel::data() const {
  if (!d_) throw InputError("use of an uninitialized group model");
  return *d_;
}

const std::string& LieGroupModel::name() const { return data().name; }
GroupKind LieGroupModel::kind() const { return data().kind; }
int LieGroupModel::dim() const { return data().dim; }
int LieGroupModel::matrix_size() const { return data().matrix_size; }
const CMat& LieGroupModel::basis(int i) const { return data().basis.at(i); }
double LieGroupModel::inner(const CMat& x, const CMat& y) const { return inner_tr(x, y); }

RVec LieGroupModel::coords(const CMat& x) const {
  RVec v(dim());
  for (int i = 0; i < dim(); ++i) v(i) = inner_tr(x, data().basis[i]);
  return v;
}

CMat LieGroupModel::matrix(const RVec& c) const {
  if (c.size() != dim()) throw InputError("coefficient vector has wrong dimension");
  CMat x = CMat::Zero(matrix_size(), matrix_size());
  for (int i = 0; i < dim(); ++i) x += c(i) * data().basis[i];
  return x;
}

double LieGroupModel::algebra_residual(const CMat& x) const {
  CMat p = matrix(coords(x));
  return (x - p).norm() / std::max(1.0, x.norm());
}

double LieGroupModel::f(int i, int j, int k) const {
  int n = dim();
  return data().f[(std::size_t(i) * n + j) * n + k];
}
const std::vector<double>& LieGroupModel::f_tensor() const { return data().f; }

RVec LieGroupModel::bracket(const RVec& x, const RVec& y) const {
  int n = dim();
  RVec out = RVec::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (x(j) == 0.0) continue;
    for (int k = 0; k < n; ++k) {
      double xy = x(j) * y(k);
      if (xy == 0.0) continue;
      for (int i = 0; i < n; ++i) out(i) += f(i, j, k) * xy;
    }
  }
  return out;
}

RMat LieGroupModel::ad_matrix(const RVec& x) const {
  int n = dim();
  RMat ad = RMat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += f(j, i, k) * x(i);
      ad(j, k) = s;
    }
  return ad;
}

int LieGroupModel::num_factors() const {
  return data().factors.empty() ? 1 : int(data().factors.size());
}
const LieGroupModel& LieGroupModel::factor(int i) const {
  if (data().factors.empty()) {
    if (i != 0) throw InputError("factor index out of range");
    return *this;
  }
  return data().factors.at(i);
}
std::pair<int, int> LieGroupModel::factor_matrix_block(int i) const { return data().mat_blocks.at(i); }
std::pair<int, int> LieGroupModel::factor_algebra_range(int i) const { return data().alg_ranges.at(i); }

double LieGroupModel::group_residual(const CMat& g) const {
  if (g.rows() != matrix_size() || g.cols() != matrix_size()) return 1e30;
  double r = (g.adjoint() * g - CMat::Identity(matrix_size(), matrix_size())).norm();
  switch (kind()) {
    case GroupKind::Su2:
    case GroupKind::Su3:
      r += std::abs(g.determinant() - Cplx(1, 0));
      break;
    case GroupKind::So3:
      r += g.imag().norm() + std::abs(g.determinant() - Cplx(1, 0));
      break;
    case GroupKind::Torus: {
      CMat off = g;
      off.diagonal().setZero();
      r += off.norm();
      break;
    }
    case GroupKind::Product:
      for (int i = 0; i < num_factors(); ++i) {
        auto [off, sz] = factor_matrix_block(i);
        r += factor(i).group_residual(g.block(off, off, sz, sz));
      }
      {
        CMat rem = g;
        for (int i = 0; i < num_factors(); ++i) {
          auto [off, sz] = factor_matrix_block(i);
          rem.block(off, off, sz, sz).setZero();
        }
        r += rem.norm();
      }
      break;
  }
  return r;
}

bool LieGroupModel::same_as(const LieGroupModel& other) const {
  if (d_ == other.d_) return true;
  if (!d_ || !other.d_) return false;
  return d_->name == other.d_->name;
}

GroupElement identity_element(const LieGroupModel& model) {
  return {model, CMat::Identity(model.matrix_size(), model.matrix_size())};
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
  if (!a.model.same_as(b.model)) throw InputError("group elements from different models");
  return {a.model, a.m * b.m};
}
GroupElement group_inv(const GroupElement& a) { return {a.model, a.m.inverse()}; }
GroupElement group_conj(const GroupElement& g, const GroupElement& h) {
  return {g.model, g.m * h.m * g.m.inverse()};
}
double group_distance(const GroupElement& a, const GroupElement& b) { return (a.m - b.m).norm(); }

GroupElement exp_map(const LieGroupModel& model, const RVec& x) {
  CMat X = model.matrix(x);
  return {model, X.exp()};
}

bool log_in_domain(const GroupElement& g, double margin) {
  Eigen::ComplexEigenSolver<CMat> es(g.m, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double a = std::arg(es.eigenvalues()(i));
    if (std::abs(a) >= kPi - margin) return false;
  }
  return true;
}

RVec log_map(const GroupElement& g) {
  if (!log_in_domain(g))
    throw DomainError("log_map: eigenvalue argument outside the principal branch");
  CMat X = g.m.log();
  RVec c = g.model.coords(X);
  if (g.model.algebra_residual(X) > 1e-7)
    throw DomainError("log_map: logarithm is not in the model algebra");
  return c;
}

RVec Ad(const GroupElement& g, const RVec& x) {
  CMat X = g.model.matrix(x);
  return g.model.coords(g.m * X * g.m.inverse());
}

RMat Ad_matrix(const GroupElement& g) {
  int n = g.model.dim();
  RMat a(n, n);
  CMat gi = g.m.inverse();
  for (int i = 0; i < n; ++i) {
    CMat col = g.m * g.model.basis(i) * gi;
    a.col(i) = g.model.coords(col);
  }
  return a;
}

namespace {

Cplx eta_scalar(Cplx s) {
  if (std::abs(s) < 1e-7) return 1.0 + s / 2.0 + s * s / 12.0;
  return s / (1.0 - std::exp(-s));
}

void check_eta_pole(Cplx s) {
  double k = std::round(s.imag() / (2 * kPi));
  if (k != 0.0) {
    Cplx pole(0, 2 * kPi * k);
    if (std::abs(s - pole) < 1e-8)
      throw DomainError("eta: eigenvalue at a pole 2*pi*i*k of s/(1-exp(-s))");
  }
}

}  // namespace

RMat eta_of_antisym(const RMat& a) {
  // a is antisymmetric, hence normal; exact up to roundoff via eigenvalues.
  Eigen::ComplexEigenSolver<CMat> es(a.cast<Cplx>());
  if (es.info() != Eigen::Success) throw DomainError("eta: eigendecomposition failed");
  CVec lam = es.eigenvalues();
  CVec eval(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    check_eta_pole(lam(i));
    eval(i) = eta_scalar(lam(i));
  }
  CMat v = es.eigenvectors();
  CMat r = v * eval.asDiagonal() * v.inverse();
  return real_part_checked(r, 1e-9, "eta_of_antisym");
}

RMat eta_series(const RMat& a, int terms) {
  // eta(s) = 1 + s/2 + sum_{k>=1} B_{2k}/(2k)! s^{2k}
  static const double b2k[] = {
      8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
      -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
      1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
      -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
  };
  int n = int(a.rows());
  RMat acc = RMat::Identity(n, n) + 0.5 * a;
  RMat p = a * a;  // s^2
  int kmax = std::min(terms, int(sizeof(b2k) / sizeof(b2k[0])));
  for (int k = 1; k <= kmax; ++k) {
    acc += b2k[k - 1] * p;
    if (k < kmax) p = p * (a * a);
  }
  return acc;
}

RMat dexp_eta(const LieGroupModel& model, const RVec& x) {
  return eta_of_antisym(model.ad_matrix(x));
}

RMat dexp_matrix(const LieGroupModel& model, const RVec& x) {
  return dexp_eta(model, x).inverse();
}

namespace {
RVec theta_common(const GroupElement& g, const CMat& v, bool left, double tol) {
  CMat gi = g.m.inverse();
  CMat X = left ? CMat(gi * v) : CMat(v * gi);
  if (g.model.algebra_residual(X) > tol)
    throw DomainError("theta: vector is not tangent at g");
  return g.model.coords(X);
}
}  // namespace

RVec theta_L(const GroupElement& g, const CMat& v, double tol) {
  return theta_common(g, v, true, tol);
}
RVec theta_R(const GroupElement& g, const CMat& v, double tol) {
  return theta_common(g, v, false, tol);
}

RVec random_algebra(const LieGroupModel& model, Rng& rng, double scale) {
  return rng.normal_vec(model.dim(), scale / std::sqrt(double(model.dim())));
}

GroupElement random_group_element(const LieGroupModel& model, Rng& rng, double scale) {
  return exp_map(model, random_algebra(model, rng, scale));
}

GroupElement factor_element(const GroupElement& g, int i) {
  const LieGroupModel& m = g.model;
  if (m.num_factors() == 1) {
    if (i != 0) throw InputError("factor index out of range");
    return g;
  }
  auto [off, sz] = m.factor_matrix_block(i);
  return {m.factor(i), g.m.block(off, off, sz, sz)};
}

GroupElement embed_factors(const LieGroupModel& pm, const std::vector<GroupElement>& parts) {
  if (int(parts.size()) != pm.num_factors()) throw InputError("embed_factors: arity mismatch");
  CMat g = CMat::Zero(pm.matrix_size(), pm.matrix_size());
  for (int i = 0; i < pm.num_factors(); ++i) {
    auto [off, sz] = pm.factor_matrix_block(i);
    if (!parts[i].model.same_as(pm.factor(i))) throw InputError("embed_factors: model mismatch");
    g.block(off, off, sz, sz) = parts[i].m;
  }
  return {pm, g};
}

}  // namespace qham
