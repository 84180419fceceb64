#include "qham/implosion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace qham {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTol = 1e-9;

// Imaginary parts of the torus basis diagonals: theta -> diag args.
RMat diag_map(const LieGroupModel& model, const std::vector<int>& torus_basis) {
  int msize = model.matrix_size();
  RMat a(msize, int(torus_basis.size()));
  for (std::size_t r = 0; r < torus_basis.size(); ++r) {
    const CMat& h = model.basis(torus_basis[r]);
    for (int j = 0; j < msize; ++j) a(j, int(r)) = h(j, j).imag();
  }
  return a;
}

struct ConstraintSystem {
  // simple-root rows first, then (alcove only) the affine highest-root row
  std::vector<RVec> rows;
  std::vector<double> offsets;  // equality value when active (0 or 2pi)
  bool affine_last = false;
};

ConstraintSystem alcove_constraints(const RootDatum& rd) {
  ConstraintSystem cs;
  for (int s : rd.simple_roots) {
    cs.rows.push_back(rd.positive_roots[s]);
    cs.offsets.push_back(0.0);
  }
  cs.rows.push_back(rd.positive_roots[rd.highest_root]);
  cs.offsets.push_back(2 * kPi);
  cs.affine_last = true;
  return cs;
}

ConstraintSystem chamber_constraints(const RootDatum& rd) {
  ConstraintSystem cs;
  for (int s : rd.simple_roots) {
    cs.rows.push_back(rd.positive_roots[s]);
    cs.offsets.push_back(0.0);
  }
  return cs;
}

bool in_closure(const ConstraintSystem& cs, const RVec& theta, double tol) {
  for (std::size_t c = 0; c < cs.rows.size(); ++c) {
    double v = cs.rows[c].dot(theta);
    bool affine = cs.affine_last && c + 1 == cs.rows.size();
    if (affine ? (v > cs.offsets[c] + tol) : (v < -tol)) return false;
  }
  return true;
}

std::vector<int> active_set(const ConstraintSystem& cs, const RVec& theta, double tol) {
  std::vector<int> act;
  for (std::size_t c = 0; c < cs.rows.size(); ++c)
    if (std::abs(cs.rows[c].dot(theta) - cs.offsets[c]) < tol) act.push_back(int(c));
  return act;
}

std::string face_name(int dim, int rank, const std::vector<int>& active, const RVec& rep) {
  if (dim == rank) return "interior";
  std::string suffix;
  for (int a : active) suffix += (suffix.empty() ? "" : ",") + std::to_string(a);
  if (dim == 0) {
    if (rep.norm() < 1e-12) return "vertex0";
    return "vertex(" + suffix + ")";
  }
  return "edge(" + suffix + ")";
}

std::vector<Face> enumerate_faces(const LieGroupModel& model, const RootDatum& rd,
                                  FaceAmbient ambient) {
  const ConstraintSystem cs =
      ambient == FaceAmbient::Alcove ? alcove_constraints(rd) : chamber_constraints(rd);
  int rank = rd.rank;
  int nc = int(cs.rows.size());

  // Vertices (alcove) / representative generators: for the alcove collect the
  // simplex vertices; for the chamber cone use the dual basis construction.
  std::vector<std::pair<std::vector<int>, RVec>> reps;  // (active set, representative)
  if (ambient == FaceAmbient::Alcove) {
    std::vector<std::pair<std::vector<int>, RVec>> vertices;
    std::vector<int> subset;
    std::function<void(int)> rec = [&](int start) {
      if (int(subset.size()) == rank) {
        RMat a(rank, rank);
        RVec b(rank);
        for (int i = 0; i < rank; ++i) {
          a.row(i) = cs.rows[subset[i]].transpose();
          b(i) = cs.offsets[subset[i]];
        }
        Eigen::FullPivLU<RMat> lu(a);
        if (lu.isInvertible()) {
          RVec theta = lu.solve(b);
          if (in_closure(cs, theta, kTol)) vertices.emplace_back(subset, theta);
        }
        return;
      }
      for (int c = start; c < nc; ++c) {
        subset.push_back(c);
        rec(c + 1);
        subset.pop_back();
      }
    };
    rec(0);
    // enumerate faces by active subsets; representative = centroid of the
    // vertices whose active sets contain the subset
    std::vector<int> sub;
    std::function<void(int)> recf = [&](int start) {
      if (int(sub.size()) <= rank) {
        std::vector<RVec> vs;
        for (auto& [va, vt] : vertices)
          if (std::includes(va.begin(), va.end(), sub.begin(), sub.end())) vs.push_back(vt);
        if (!vs.empty()) {
          RVec c0 = RVec::Zero(rank);
          for (const RVec& v : vs) c0 += v;
          c0 /= double(vs.size());
          if (active_set(cs, c0, kTol) == sub) reps.emplace_back(sub, c0);
        }
      }
      if (int(sub.size()) == rank) return;
      for (int c = start; c < nc; ++c) {
        sub.push_back(c);
        recf(c + 1);
        sub.pop_back();
      }
    };
    recf(0);
  } else {
    // chamber: representative with active rows = 0 and the others = 1
    std::vector<int> sub;
    std::function<void(int)> recf = [&](int start) {
      RMat a(nc, rank);
      RVec b(nc);
      for (int c = 0; c < nc; ++c) {
        a.row(c) = cs.rows[c].transpose();
        bool act = std::find(sub.begin(), sub.end(), c) != sub.end();
        b(c) = act ? 0.0 : 1.0;
      }
      RVec theta = a.fullPivLu().solve(b);
      if (active_set(cs, theta, kTol) == sub && in_closure(cs, theta, kTol))
        reps.emplace_back(sub, theta);
      if (int(sub.size()) == rank) return;
      for (int c = start; c < nc; ++c) {
        sub.push_back(c);
        recf(c + 1);
        sub.pop_back();
      }
    };
    recf(0);
  }

  std::vector<Face> faces;
  for (auto& [act, theta] : reps) {
    Face f;
    f.ambient = ambient;
    f.dim = rank - int(act.size());
    f.active = act;
    f.rep_torus = theta;
    f.representative = torus_to_full(model, theta);
    // stabilizer = roots vanishing at the representative (mod 2pi on the
    // alcove side, exactly on the chamber side)
    for (std::size_t r = 0; r < rd.positive_roots.size(); ++r) {
      double v = rd.positive_roots[r].dot(theta);
      bool vanish = ambient == FaceAmbient::Alcove
                        ? std::abs(v - 2 * kPi * std::round(v / (2 * kPi))) < 1e-8
                        : std::abs(v) < 1e-8;
      if (vanish) {
        f.vanishing_roots.push_back(int(r));
        f.root_blocks.push_back(rd.root_pairs[r]);
      }
    }
    int nv = int(f.vanishing_roots.size());
    f.dim_stabilizer = rank + 2 * nv;
    {
      RMat span(rank, std::max(nv, 1));
      span.setZero();
      for (int i = 0; i < nv; ++i) span.col(i) = rd.positive_roots[f.vanishing_roots[i]];
      f.dim_commutator = 2 * nv + (nv ? numerical_rank(span, 1e-10) : 0);
    }
    if (f.dim_stabilizer == model.dim())
      f.stabilizer_type = "G";
    else if (nv == 0)
      f.stabilizer_type = "T";
    else
      f.stabilizer_type = "A1xU1";
    if (ambient == FaceAmbient::Alcove) {
      int affine_idx = nc - 1;
      f.contains_origin_in_closure =
          std::find(act.begin(), act.end(), affine_idx) == act.end();
    } else {
      f.contains_origin_in_closure = true;
    }
    f.id = face_name(f.dim, rank, act, theta);
    faces.push_back(std::move(f));
  }
  // deterministic order: by dim descending then id
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.id < b.id;
  });
  return faces;
}

const RootDatum& cached_root_datum(const LieGroupModel& model) {
  static std::deque<RootDatum> cache;  // deque: stable references across growth
  for (const RootDatum& rd : cache)
    if (rd.model.same_as(model)) return rd;
  cache.push_back(root_datum(model));
  return cache.back();
}

}  // namespace

RootDatum root_datum(const LieGroupModel& model) {
  if (model.kind() != GroupKind::Su2 && model.kind() != GroupKind::Su3)
    throw InputError("root data implemented for su2 and su3 only");
  RootDatum rd;
  rd.model = model;
  int msize = model.matrix_size();
  for (int i = 0; i < model.dim(); ++i) {
    CMat off = model.basis(i);
    off.diagonal().setZero();
    if (off.norm() < 1e-12) rd.torus_basis.push_back(i);
  }
  rd.rank = int(rd.torus_basis.size());
  RMat dm = diag_map(model, rd.torus_basis);
  // generic reference direction fixing the positive system
  RVec ref(rd.rank);
  for (int r = 0; r < rd.rank; ++r) ref(r) = 0.83 - 0.54 * r;
  for (int j = 0; j < msize; ++j)
    for (int k = j + 1; k < msize; ++k) {
      RVec root = dm.row(j) - dm.row(k);
      if (root.norm() < 1e-12) continue;
      if (root.dot(ref) < 0) {
        root = -root;
        rd.root_pairs.push_back({k, j});
      } else {
        rd.root_pairs.push_back({j, k});
      }
      rd.positive_roots.push_back(root);
    }
  // simple roots: positive roots that are not a sum of two positive roots
  int np = int(rd.positive_roots.size());
  for (int r = 0; r < np; ++r) {
    bool decomposable = false;
    for (int s = 0; s < np && !decomposable; ++s)
      for (int t = 0; t < np && !decomposable; ++t)
        if (s != r && t != r &&
            (rd.positive_roots[s] + rd.positive_roots[t] - rd.positive_roots[r]).norm() < 1e-9)
          decomposable = true;
    if (!decomposable) rd.simple_roots.push_back(r);
  }
  // highest root: maximal for the partial order "difference is a positive sum";
  // at rank <= 2 it is the positive root with the largest value on ref.
  double best = -1e30;
  for (int r = 0; r < np; ++r) {
    double v = rd.positive_roots[r].dot(ref);
    if (v > best) {
      best = v;
      rd.highest_root = r;
    }
  }
  if (int(rd.simple_roots.size()) != rd.rank)
    throw QhamError("root datum: simple-root count does not match the rank");
  return rd;
}

RVec torus_to_full(const LieGroupModel& model, const RVec& theta) {
  const RootDatum& rd = cached_root_datum(model);
  if (theta.size() != rd.rank) throw InputError("torus_to_full: wrong rank");
  RVec x = RVec::Zero(model.dim());
  for (int r = 0; r < rd.rank; ++r) x(rd.torus_basis[r]) = theta(r);
  return x;
}

std::vector<Face> alcove_faces(const LieGroupModel& model) {
  return enumerate_faces(model, cached_root_datum(model), FaceAmbient::Alcove);
}
std::vector<Face> chamber_faces(const LieGroupModel& model) {
  return enumerate_faces(model, cached_root_datum(model), FaceAmbient::Chamber);
}

Face tau_of(const LieGroupModel& model, const Face& sigma) {
  if (sigma.ambient != FaceAmbient::Alcove) throw InputError("tau_of: expects an alcove face");
  if (!sigma.contains_origin_in_closure)
    throw DomainError("tau_of: face closure does not contain the origin");
  const RootDatum& rd = cached_root_datum(model);
  int n_simple = int(rd.simple_roots.size());
  std::vector<int> s;
  for (int a : sigma.active)
    if (a < n_simple) s.push_back(a);
  for (const Face& tau : chamber_faces(model))
    if (tau.active == s) return tau;
  throw QhamError("tau_of: no matching chamber face");
}

std::vector<Stratum> stratum_inventory(const LieGroupModel& model, ImplodedSpace space) {
  std::vector<Stratum> out;
  if (space == ImplodedSpace::DoubleImplosion) {
    for (const Face& f : alcove_faces(model)) {
      Stratum s;
      s.face = f;
      s.kind = "multiplicative";
      s.dim = model.dim() - f.dim_commutator + f.dim;
      s.deformation_target = f.contains_origin_in_closure ? tau_of(model, f).id : "EMPTY";
      out.push_back(std::move(s));
    }
  } else {
    for (const Face& f : chamber_faces(model)) {
      Stratum s;
      s.face = f;
      s.kind = "additive";
      s.dim = model.dim() - f.dim_commutator + f.dim;
      s.deformation_target = "";
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

RVec torus_coords_of(const LieGroupModel& model, const RVec& x_full) {
  const RootDatum& rd = cached_root_datum(model);
  RVec theta(rd.rank);
  RVec rest = x_full;
  for (int r = 0; r < rd.rank; ++r) {
    theta(r) = x_full(rd.torus_basis[r]);
    rest(rd.torus_basis[r]) = 0.0;
  }
  if (rest.norm() > 1e-8 * std::max(1.0, x_full.norm()))
    throw DomainError("point is not in the torus algebra");
  return theta;
}

void require_in_face(const LieGroupModel& model, const Face& face, const RVec& x_full) {
  const RootDatum& rd = cached_root_datum(model);
  RVec theta = torus_coords_of(model, x_full);
  ConstraintSystem cs = face.ambient == FaceAmbient::Alcove ? alcove_constraints(rd)
                                                            : chamber_constraints(rd);
  if (!in_closure(cs, theta, 1e-8)) throw DomainError("point is outside the fundamental domain");
  if (active_set(cs, theta, 1e-8) != face.active)
    throw DomainError("point is not in the open face " + face.id);
}

}  // namespace

double lambda_sigma(const LieGroupModel& model, const Face& face, const RVec& x, const RVec& u1,
                    const RVec& eta1, const RVec& u2, const RVec& eta2) {
  if (face.ambient != FaceAmbient::Alcove) throw InputError("lambda_sigma: alcove faces only");
  require_in_face(model, face, x);
  RMat a = Ad_matrix(exp_map(model, x));
  RVec w = (a - a.transpose()) * u1;
  return 0.5 * w.dot(u2) + u1.dot(eta2) - u2.dot(eta1);
}

double omega_tau(const LieGroupModel& model, const Face& face, const RVec& x, const RVec& u1,
                 const RVec& v1, const RVec& u2, const RVec& v2) {
  if (face.ambient != FaceAmbient::Chamber) throw InputError("omega_tau: chamber faces only");
  require_in_face(model, face, x);
  return u1.dot(v2) - u2.dot(v1) + x.dot(model.bracket(u1, u2));
}

double family_interval_bound(const LieGroupModel& model, const Face& face) {
  const RootDatum& rd = cached_root_datum(model);
  double mx = 0;
  for (const RVec& root : rd.positive_roots)
    mx = std::max(mx, std::abs(root.dot(face.rep_torus)));
  return mx < 1e-12 ? 1e9 : 2 * kPi / mx;
}

double stratum_family_form(const LieGroupModel& model, const Face& sigma, const RVec& x, double t,
                           const RVec& y1, const RVec& z1, const RVec& y2, const RVec& z2) {
  Face tau = tau_of(model, sigma);
  require_in_face(model, tau, x);
  if (t == 0.0) return omega_tau(model, tau, x, y1, z1, y2, z2);
  const RootDatum& rd = cached_root_datum(model);
  RVec theta = torus_coords_of(model, x);
  for (const RVec& root : rd.positive_roots)
    if (std::abs(t * root.dot(theta)) >= 2 * kPi - 1e-9)
      throw DomainError("stratum_family_form: d exp is singular at t x");
  RMat e = Ad_matrix(exp_map(model, RVec(t * x)));
  RMat at = (e.transpose() - e) / (2.0 * t);
  RMat d = dexp_matrix(model, RVec(t * x));
  RMat m = d + e * d;
  return y1.dot(at * y2) + 0.5 * (y1.dot(m * z2) - y2.dot(m * z1));
}

namespace {

// Recover theta with exp(torus_to_full(theta)) = b and theta in the closed
// alcove, searching the finitely many 2*pi arg-branch shifts.
RVec alcove_log(const LieGroupModel& model, const GroupElement& b, double tol) {
  const RootDatum& rd = cached_root_datum(model);
  int msize = model.matrix_size();
  CMat off = b.m;
  off.diagonal().setZero();
  if (off.norm() > tol) throw DomainError("implosion: b is not a torus element");
  RMat dm = diag_map(model, rd.torus_basis);
  RVec base(msize);
  for (int j = 0; j < msize; ++j) base(j) = std::arg(b.m(j, j));
  ConstraintSystem cs = alcove_constraints(rd);
  std::vector<int> shift(msize, -1);
  while (true) {
    RVec a = base;
    for (int j = 0; j < msize; ++j) a(j) += 2 * kPi * shift[j];
    RVec theta = dm.colPivHouseholderQr().solve(a);
    if ((dm * theta - a).norm() < 1e-6 && in_closure(cs, theta, 1e-7)) {
      GroupElement chk = exp_map(model, torus_to_full(model, theta));
      if ((chk.m - b.m).norm() < 1e-6) return theta;
    }
    int j = 0;
    for (; j < msize; ++j) {
      if (shift[j] < 1) {
        ++shift[j];
        break;
      }
      shift[j] = -1;
    }
    if (j == msize) break;
  }
  throw DomainError("implosion: b is outside exp of the fundamental alcove");
}

const Face& face_of_theta(const LieGroupModel& model, const RVec& theta,
                          const std::vector<Face>& faces) {
  const RootDatum& rd = cached_root_datum(model);
  ConstraintSystem cs = alcove_constraints(rd);
  std::vector<int> act = active_set(cs, theta, 1e-7);
  for (const Face& f : faces)
    if (f.active == act) return f;
  throw QhamError("implosion: no face matches the active set");
}

}  // namespace

bool implosion_equiv(const LieGroupModel& model, const GroupElement& a, const GroupElement& b,
                     const GroupElement& a2, const GroupElement& b2, double tol) {
  if ((b.m - b2.m).norm() > tol)
    throw DomainError("implosion_equiv: relation only defined on a fixed fiber (b != b')");
  RVec theta = alcove_log(model, b, tol);
  static std::deque<std::pair<std::string, std::vector<Face>>> cache;
  const std::vector<Face>* faces = nullptr;
  for (auto& [nm, fs] : cache)
    if (nm == model.name()) faces = &fs;
  if (!faces) {
    cache.emplace_back(model.name(), alcove_faces(model));
    faces = &cache.back().second;
  }
  const Face& f = face_of_theta(model, theta, *faces);
  CMat d = (a.m.inverse() * a2.m).eval();
  int msize = model.matrix_size();
  if (f.stabilizer_type == "G") return true;  // perfect stabilizer, [G,G] = G
  if (f.stabilizer_type == "T")
    return (d - CMat::Identity(msize, msize)).norm() < tol;
  // A1xU1: membership in the embedded SU(2) block of the vanishing root
  const auto& blk = f.root_blocks.at(0);
  for (int r = 0; r < msize; ++r) {
    if (r == blk[0] || r == blk[1]) continue;
    if (std::abs(d(r, r) - Cplx(1, 0)) > tol) return false;
  }
  CMat sub(2, 2);
  sub << d(blk[0], blk[0]), d(blk[0], blk[1]), d(blk[1], blk[0]), d(blk[1], blk[1]);
  // off-block entries must vanish
  double offmass = 0;
  for (int r = 0; r < msize; ++r)
    for (int c = 0; c < msize; ++c) {
      bool rin = (r == blk[0] || r == blk[1]);
      bool cin = (c == blk[0] || c == blk[1]);
      if (rin != cin) offmass += std::norm(d(r, c));
    }
  if (std::sqrt(offmass) > tol) return false;
  if ((sub.adjoint() * sub - CMat::Identity(2, 2)).norm() > tol) return false;
  return std::abs(sub.determinant() - Cplx(1, 0)) < tol;
}

MasterInventory master_moduli_dims(const LieGroupModel& model, int genus, int r) {
  if (genus < 0 || r < 0) throw InputError("master_moduli_dims: negative parameters");
  if (r > 6) throw InputError("master_moduli_dims: r larger than the enumeration cap (6)");
  MasterInventory inv;
  inv.genus = genus;
  inv.r = r;
  inv.dim_g_units = 2LL * genus * model.dim();
  auto mult = stratum_inventory(model, ImplodedSpace::DoubleImplosion);
  auto add = stratum_inventory(model, ImplodedSpace::CotangentImplosion);
  auto enumerate = [&](const std::vector<Stratum>& strata, std::vector<MasterStratum>& out,
                       long long& top) {
    std::vector<int> pick(r, 0);
    long long best = 0;
    while (true) {
      MasterStratum ms;
      ms.dim = inv.dim_g_units;
      for (int i = 0; i < r; ++i) {
        ms.faces.push_back(strata[pick[i]].face.id);
        ms.dim += strata[pick[i]].dim;
      }
      best = std::max(best, ms.dim);
      out.push_back(std::move(ms));
      int i = 0;
      for (; i < r; ++i) {
        if (pick[i] + 1 < int(strata.size())) {
          ++pick[i];
          std::fill(pick.begin(), pick.begin() + i, 0);
          break;
        }
      }
      if (i == r) break;
    }
    top = best;
  };
  enumerate(mult, inv.strata, inv.top_dim);
  enumerate(add, inv.additive_strata, inv.additive_top_dim);
  return inv;
}

}  // namespace qham
