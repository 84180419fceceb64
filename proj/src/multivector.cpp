#include "qham/multivector.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace qham {

namespace {

struct TupleTable {
  std::vector<std::vector<int>> tuples;            // lexicographic increasing tuples
  std::unordered_map<std::uint64_t, std::size_t> rank;
};

std::uint64_t pack(const std::vector<int>& t) {
  std::uint64_t k = 0;
  for (int i : t) k = k * 64 + std::uint64_t(i + 1);
  return k;
}

const TupleTable& table_for(int dim, int degree) {
  static std::map<std::pair<int, int>, TupleTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  TupleTable tt;
  std::vector<int> cur(degree);
  // iterative enumeration of increasing tuples
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == degree) {
      tt.rank[pack(cur)] = tt.tuples.size();
      tt.tuples.push_back(cur);
      return;
    }
    for (int v = start; v < dim; ++v) {
      cur[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  if (degree <= dim) rec(0, 0);
  if (degree == 0) {
    // rec() above already handled degree 0 by pushing an empty tuple
  }
  return cache.emplace(key, std::move(tt)).first->second;
}

// Sorts idx in place, returns permutation sign, 0 if repeats.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

}  // namespace

Multivector::Multivector(int degree, int dim) : degree_(degree), dim_(dim) {
  if (degree < 0 || dim < 0) throw InputError("multivector: negative degree or dim");
  c_.assign(degree > dim ? 0 : table_for(dim, degree).tuples.size(), 0.0);
}

const std::vector<int>& Multivector::tuple(std::size_t r) const {
  return table_for(dim_, degree_).tuples[r];
}

double Multivector::coeff(std::vector<int> idx) const {
  if (int(idx.size()) != degree_) throw InputError("coeff: wrong index count");
  int s = sort_sign(idx);
  if (s == 0 || degree_ > dim_) return 0.0;
  auto& tt = table_for(dim_, degree_);
  auto it = tt.rank.find(pack(idx));
  if (it == tt.rank.end()) throw InputError("coeff: index out of range");
  return s * c_[it->second];
}

void Multivector::add(std::vector<int> idx, double v) {
  if (int(idx.size()) != degree_) throw InputError("add: wrong index count");
  int s = sort_sign(idx);
  if (s == 0 || degree_ > dim_) return;
  auto& tt = table_for(dim_, degree_);
  auto it = tt.rank.find(pack(idx));
  if (it == tt.rank.end()) throw InputError("add: index out of range");
  c_[it->second] += s * v;
}

Multivector Multivector::wedge(const Multivector& b) const {
  if (dim_ != b.dim_) throw InputError("wedge: dimension mismatch");
  Multivector out(degree_ + b.degree_, dim_);
  if (degree_ + b.degree_ > dim_) return out;
  std::vector<int> idx;
  idx.reserve(degree_ + b.degree_);
  for (std::size_t r = 0; r < c_.size(); ++r) {
    if (c_[r] == 0.0) continue;
    const auto& ti = tuple(r);
    for (std::size_t s = 0; s < b.c_.size(); ++s) {
      if (b.c_[s] == 0.0) continue;
      idx = ti;
      const auto& tj = b.tuple(s);
      idx.insert(idx.end(), tj.begin(), tj.end());
      out.add(idx, c_[r] * b.c_[s]);
    }
  }
  return out;
}

Multivector Multivector::contract(const RVec& covector) const {
  if (covector.size() != dim_) throw InputError("contract: dimension mismatch");
  if (degree_ == 0) return Multivector(0, dim_);
  Multivector out(degree_ - 1, dim_);
  std::vector<int> rest(degree_ - 1);
  for (std::size_t r = 0; r < c_.size(); ++r) {
    if (c_[r] == 0.0) continue;
    const auto& t = tuple(r);
    for (int pos = 0; pos < degree_; ++pos) {
      double a = covector(t[pos]);
      if (a == 0.0) continue;
      int k = 0;
      for (int q = 0; q < degree_; ++q)
        if (q != pos) rest[k++] = t[q];
      double sign = (pos % 2 == 0) ? 1.0 : -1.0;
      out.add(rest, sign * a * c_[r]);
    }
  }
  return out;
}

Multivector Multivector::push_linear(const RMat& l) const {
  if (l.cols() != dim_) throw InputError("push_linear: dimension mismatch");
  int nd = int(l.rows());
  Multivector out(degree_, nd);
  if (degree_ > nd) return out;
  std::vector<int> idx(degree_);
  std::function<void(std::size_t, int, double)> rec = [&](std::size_t r, int pos, double acc) {
    if (acc == 0.0) return;
    if (pos == degree_) {
      out.add(idx, acc);
      return;
    }
    const auto& t = tuple(r);
    for (int b = 0; b < nd; ++b) {
      double w = l(b, t[pos]);
      if (w == 0.0) continue;
      idx[pos] = b;
      rec(r, pos + 1, acc * w);
    }
  };
  for (std::size_t r = 0; r < c_.size(); ++r)
    if (c_[r] != 0.0) rec(r, 0, c_[r]);
  return out;
}

Multivector Multivector::apply_derivation(const RMat& l) const {
  if (l.rows() != dim_ || l.cols() != dim_) throw InputError("apply_derivation: shape mismatch");
  Multivector out(degree_, dim_);
  std::vector<int> idx;
  for (std::size_t r = 0; r < c_.size(); ++r) {
    if (c_[r] == 0.0) continue;
    const auto& t = tuple(r);
    for (int pos = 0; pos < degree_; ++pos)
      for (int b = 0; b < dim_; ++b) {
        double w = l(b, t[pos]);
        if (w == 0.0) continue;
        idx = t;
        idx[pos] = b;
        out.add(idx, w * c_[r]);
      }
  }
  return out;
}

double Multivector::norm() const {
  double s = 0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

double Multivector::dot(const Multivector& b) const {
  if (degree_ != b.degree_ || dim_ != b.dim_) throw InputError("dot: shape mismatch");
  double s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * b.c_[i];
  return s;
}

Multivector& Multivector::operator+=(const Multivector& b) {
  if (degree_ != b.degree_ || dim_ != b.dim_) throw InputError("+=: shape mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}
Multivector& Multivector::operator-=(const Multivector& b) {
  if (degree_ != b.degree_ || dim_ != b.dim_) throw InputError("-=: shape mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
  return *this;
}
Multivector& Multivector::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Multivector Multivector::basis_wedge(int dim, const std::vector<int>& idx) {
  Multivector out(int(idx.size()), dim);
  out.add(idx, 1.0);
  return out;
}

Multivector Multivector::from_wedge_matrix(const RMat& b) {
  int n = int(b.rows());
  Multivector out(2, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.add({i, j}, b(i, j));
  return out;
}

RMat Multivector::to_wedge_matrix() const {
  if (degree_ != 2) throw InputError("to_wedge_matrix: degree must be 2");
  RMat b = RMat::Zero(dim_, dim_);
  for (std::size_t r = 0; r < c_.size(); ++r) {
    const auto& t = tuple(r);
    b(t[0], t[1]) = c_[r];
    b(t[1], t[0]) = -c_[r];
  }
  return b;
}

Multivector cartan_trivector(const LieGroupModel& model) {
  int n = model.dim();
  Multivector phi(3, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double f = model.f(i, j, k);
        if (f != 0.0) phi.add({i, j, k}, f / 12.0);
      }
  return phi;
}

LieGroupModel doubled_model(const LieGroupModel& model) {
  return LieGroupModel::product({model, model});
}

FusionBivector fusion_bivector(const LieGroupModel& model) {
  int n = model.dim();
  FusionBivector out{doubled_model(model), Multivector(2, 2 * n), Multivector(3, 2 * n),
                     Multivector(3, 2 * n), Multivector(3, 2 * n)};
  for (int i = 0; i < n; ++i) out.psi.add({i, n + i}, 0.5);
  Multivector phi = cartan_trivector(model);
  RMat inc1 = RMat::Zero(2 * n, n), inc2 = RMat::Zero(2 * n, n), diag = RMat::Zero(2 * n, n);
  inc1.topRows(n).setIdentity();
  inc2.bottomRows(n).setIdentity();
  diag = inc1 + inc2;
  out.phi1 = phi.push_linear(inc1);
  out.phi2 = phi.push_linear(inc2);
  out.diag_phi = phi.push_linear(diag);
  return out;
}

Multivector schouten_lie(const Multivector& a, const Multivector& b, const LieGroupModel& model) {
  int n = model.dim();
  if (a.dim() != n || b.dim() != n) throw InputError("schouten_lie: dimension mismatch");
  int p = a.degree(), q = b.degree();
  if (p == 0 || q == 0) return Multivector(std::max(p + q - 1, 0), n);  // scalars bracket to 0
  Multivector out(p + q - 1, n);
  std::vector<int> idx(p + q - 1);
  for (std::size_t ra = 0; ra < a.size(); ++ra) {
    double ca = a.raw(ra);
    if (ca == 0.0) continue;
    const auto& ti = a.tuple(ra);
    for (std::size_t rb = 0; rb < b.size(); ++rb) {
      double cb = b.raw(rb);
      if (cb == 0.0) continue;
      const auto& tj = b.tuple(rb);
      for (int r = 0; r < p; ++r)
        for (int s = 0; s < q; ++s) {
          double sgn = ((r + s) % 2 == 0) ? 1.0 : -1.0;  // (-1)^{(r+1)+(s+1)}
          // bracket [e_{ti[r]}, e_{tj[s]}] = sum_m f(m, ti[r], tj[s]) e_m
          int k = 1;
          for (int u = 0; u < p; ++u)
            if (u != r) idx[k++] = ti[u];
          for (int u = 0; u < q; ++u)
            if (u != s) idx[k++] = tj[u];
          for (int m = 0; m < n; ++m) {
            double f = model.f(m, ti[r], tj[s]);
            if (f == 0.0) continue;
            idx[0] = m;
            out.add(idx, sgn * f * ca * cb);
          }
        }
    }
  }
  return out;
}

namespace {

// One finite-difference pass of the coordinate formula
// [P,Q]_{ijk} = sum_l ( B^P_{il} dl B^Q_{jk} + cyclic(ijk) + (P<->Q) ),
// with wedge-coefficient matrices B = 2C.
Multivector schouten_field_once(const BivectorField& pf, const BivectorField& qf,
                                const RVec& x, double h) {
  int n = int(x.size());
  std::vector<RMat> dp(n), dq(n);
  for (int l = 0; l < n; ++l) {
    RVec xp = x, xm = x;
    xp(l) += h;
    xm(l) -= h;
    dp[l] = (2.0 * pf(xp) - 2.0 * pf(xm)) / (2 * h);
    dq[l] = (2.0 * qf(xp) - 2.0 * qf(xm)) / (2 * h);
  }
  RMat bp = 2.0 * pf(x), bq = 2.0 * qf(x);
  if (!bp.allFinite() || !bq.allFinite()) throw DomainError("schouten_field: non-finite evaluation");
  Multivector out(3, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double s = 0;
        for (int l = 0; l < n; ++l) {
          s += bp(i, l) * dq[l](j, k) + bp(j, l) * dq[l](k, i) + bp(k, l) * dq[l](i, j);
          s += bq(i, l) * dp[l](j, k) + bq(j, l) * dp[l](k, i) + bq(k, l) * dp[l](i, j);
        }
        if (s != 0.0) out.add({i, j, k}, s);
      }
  return out;
}

}  // namespace

Multivector schouten_field(const BivectorField& p, const BivectorField& q, const RVec& point,
                           double fd_step) {
  if (fd_step <= 0) throw InputError("schouten_field: fd_step must be positive");
  Multivector th = schouten_field_once(p, q, point, fd_step);
  Multivector th2 = schouten_field_once(p, q, point, fd_step / 2);
  // Richardson: error O(h^2) per pass -> (4 T_{h/2} - T_h) / 3 is O(h^4).
  th2 *= 4.0 / 3.0;
  th *= 1.0 / 3.0;
  return th2 - th;
}

}  // namespace qham
