// Acceptance battery: prints one [PASS]/[FAIL] line per criterion and exits
// with the number of failed criteria. Every tolerance is pinned here.

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "qham/suite.hpp"

using namespace qham;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

constexpr std::uint64_t kSeed = 42;

// ---------------------------------------------------------------- criterion 1
void criterion1() {
  double worst = 0;
  for (const char* name : {"su2", "su3", "so3", "prod:su2,su2"}) {
    auto m = LieGroupModel::make(name);
    FusionBivector f = fusion_bivector(m);
    Multivector lhs = schouten_lie(f.psi, f.psi, f.doubled);
    Multivector rhs = f.diag_phi - f.phi1 - f.phi2;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  report(1, "psi-identity [psi,psi] = diag(phi)-phi1-phi2 on su2,su3,so3,su2xsu2",
         worst < 1e-12, "max residual " + std::to_string(worst));
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
  auto su2 = LieGroupModel::make("su2");
  auto su3 = LieGroupModel::make("su3");
  double c = default_qp_constant();
  QpVerifyReport r2 = verify_quasi_poisson(su2, 100, kSeed, 1e-3, 1e-5, c);
  QpVerifyReport r3 = verify_quasi_poisson(su3, 50, kSeed, 1e-3, 1e-5, c);
  // point-independence of c on su3 (su2 admits no estimate: both sides vanish
  // identically on a rank-1 group, so the su2 identity holds with the same c)
  RVec xa(8), xb(8);
  xa << 0.2, -0.3, 0.1, 0.25, -0.15, 0.05, 0.3, -0.1;
  xb << -0.1, 0.2, 0.3, -0.2, 0.1, 0.15, -0.25, 0.2;
  double spread = std::abs(measure_qp_constant(su3, xa, 1e-3) - measure_qp_constant(su3, xb, 1e-3));
  bool su2_vacuous = r2.max_residual < 1e-8;
  bool ok = r2.pass && r3.pass && spread < 1e-6 && su2_vacuous;
  char buf[160];
  std::snprintf(buf, sizeof buf, "c=%.9f, su2 res %.2e (identity vacuous), su3 res %.2e, c spread %.2e",
                c, r2.max_residual, r3.max_residual, spread);
  report(2, "quasi-Poisson identity [P_G,P_G] = c*phi_G with one global c", ok, buf);
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
  std::vector<double> grid = {1e-1, 1e-2, 1e-3, 1e-4};
  double slope_lo = 1e30, slope_hi = -1e30, tri_slope_min = 1e30, worst_pull = 0;
  bool tri_all_flat = true, tri_t0 = true;
  for (const char* name : {"su2", "su3"}) {
    auto m = LieGroupModel::make(name);
    for (int s = 0; s < 20; ++s) {
      Rng rng(kSeed, std::uint64_t(s));
      RVec x = random_algebra(m, rng, 0.5);
      RMat p0 = family_bivector(m, x, 0.0);
      std::vector<double> diffs, tnorms;
      for (double t : grid) {
        diffs.push_back((family_bivector(m, x, t) - p0).norm());
        tnorms.push_back(family_trivector(m, x, t).norm());
      }
      double slope = loglog_slope(grid, diffs);
      slope_lo = std::min(slope_lo, slope);
      slope_hi = std::max(slope_hi, slope);
      if (*std::max_element(tnorms.begin(), tnorms.end()) > 1e-13) {
        tri_all_flat = false;
        tri_slope_min = std::min(tri_slope_min, loglog_slope(grid, tnorms));
      }
      tri_t0 &= family_trivector(m, x, 0.0).norm() == 0.0;
      for (double t : {1e-1, 1e-2, 1e-3}) {
        auto once = [&](double h) {
          int n = m.dim();
          GroupElement g = exp_map(m, t * x);
          RMat jac(n, n);
          for (int j = 0; j < n; ++j) {
            RVec xp = x, xm = x;
            xp(j) += h;
            xm(j) -= h;
            CMat diff = (exp_map(m, t * xp).m - exp_map(m, t * xm).m) / (2 * h);
            jac.col(j) = m.coords(g.m.inverse() * diff);
          }
          RMat a = Ad_matrix(group_inv(g));
          RMat ji = jac.inverse();
          return RMat(ji * (t * 0.25 * (a - a.transpose())) * ji.transpose());
        };
        RMat fd = (4.0 * once(5e-4) - once(1e-3)) / 3.0;
        worst_pull = std::max(worst_pull, (family_bivector(m, x, t) - fd).norm());
      }
    }
  }
  bool win = slope_lo >= 0.9 && slope_hi <= 1.1;
  bool tri = tri_t0 && (tri_all_flat || tri_slope_min >= 0.9);
  bool pull = worst_pull < 1e-7;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "bivector slope in [%.3f, %.3f] vs window [0.9,1.1]:%s; trivector slope>=0.9:%s; "
                "closed-form vs FD-pullback %.2e < 1e-7:%s",
                slope_lo, slope_hi, win ? "yes" : "NO (order is 2: t*P_G pullback is even in t)",
                tri ? "yes" : "NO", worst_pull, pull ? "yes" : "NO");
  report(3, "deformation limit of the family bivector/trivector", win && tri && pull, buf);
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
  auto su2 = LieGroupModel::make("su2");
  std::vector<double> grid = {1e-1, 1e-2, 1e-3, 1e-4};
  double slope_min = 1e30;
  for (int s = 0; s < 20; ++s) {
    Rng rng(kSeed ^ 0x44ULL, std::uint64_t(s));
    RVec x = random_algebra(su2, rng, 0.6), y = random_algebra(su2, rng, 0.6);
    std::vector<double> res;
    for (double t : grid) res.push_back(mult_chart_residual(su2, x, y, t));
    slope_min = std::min(slope_min, loglog_slope(grid, res));
  }
  Rng rng(kSeed);
  RVec x = random_algebra(su2, rng), y = random_algebra(su2, rng);
  GPoint z = mult_map(zero_fiber_point(su2, x), zero_fiber_point(su2, y));
  bool exact = z.zero_fiber() && (z.x - (x + y)).norm() == 0.0;
  report(4, "multiplication chart residual O(t^2) and exact additive branch",
         slope_min >= 1.9 && exact, "min slope " + std::to_string(slope_min));
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
  std::vector<double> grid = {1e-1, 1e-2, 1e-3, 1e-4};
  bool ok = true;
  std::string detail;
  for (const char* name : {"su2", "su3"}) {
    auto m = LieGroupModel::make(name);
    int idx = 0;
    for (const Face& sigma : alcove_faces(m)) {
      if (!sigma.contains_origin_in_closure) continue;
      Face tau = tau_of(m, sigma);
      Rng rng(kSeed ^ 0x55ULL, std::uint64_t(idx++));
      RVec x = tau.representative;
      RVec y1 = random_algebra(m, rng), y2 = random_algebra(m, rng);
      RVec z1 = torus_to_full(m, RVec(rng.normal_vec(int(tau.rep_torus.size()))));
      RVec z2 = torus_to_full(m, RVec(rng.normal_vec(int(tau.rep_torus.size()))));
      double f0 = stratum_family_form(m, sigma, x, 0.0, y1, z1, y2, z2);
      bool exact = f0 == omega_tau(m, tau, x, y1, z1, y2, z2);
      std::vector<double> diffs;
      for (double t : grid)
        diffs.push_back(std::abs(stratum_family_form(m, sigma, x, t, y1, z1, y2, z2) - f0));
      bool flat = *std::max_element(diffs.begin(), diffs.end()) < 1e-13;
      double slope = flat ? 999.0 : loglog_slope(grid, diffs);
      bool this_ok = exact && (flat || slope >= 0.9);
      if (!this_ok) detail += std::string(name) + "/" + sigma.id + " ";
      ok &= this_ok;
    }
  }
  report(5, "stratum family form: t=0 equals omega_tau exactly, slope >= 0.9 per origin face", ok,
         detail);
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
  auto su2 = LieGroupModel::make("su2");
  auto su3 = LieGroupModel::make("su3");
  auto dbl2 = stratum_inventory(su2, ImplodedSpace::DoubleImplosion);
  std::multiset<int> dims;
  int empties = 0;
  for (const Stratum& s : dbl2) {
    dims.insert(s.dim);
    empties += s.deformation_target == "EMPTY";
  }
  bool su2_dbl = dims == std::multiset<int>({0, 0, 4}) && empties == 1;
  auto cot2 = stratum_inventory(su2, ImplodedSpace::CotangentImplosion);
  std::multiset<int> cdims;
  for (const Stratum& s : cot2) cdims.insert(s.dim);
  bool su2_cot = cdims == std::multiset<int>({0, 4});
  bool su3_forms = true;
  for (auto space : {ImplodedSpace::DoubleImplosion, ImplodedSpace::CotangentImplosion})
    for (const Stratum& s : stratum_inventory(su3, space))
      su3_forms &= s.dim == su3.dim() - s.face.dim_commutator + s.face.dim;
  int origin2 = 0, origin3 = 0;
  for (const Face& f : alcove_faces(su2)) origin2 += f.contains_origin_in_closure;
  for (const Face& f : alcove_faces(su3)) origin3 += f.contains_origin_in_closure;
  bool bij = origin2 == int(chamber_faces(su2).size()) &&
             origin3 == int(chamber_faces(su3).size());
  bool stab = true;
  for (auto* m : {&su2, &su3})
    for (const Face& f : alcove_faces(*m))
      if (f.contains_origin_in_closure) stab &= tau_of(*m, f).dim_stabilizer == f.dim_stabilizer;
  report(6, "stratum inventories, X/Y dimension formulas, face/chamber bijection",
         su2_dbl && su2_cot && su3_forms && bij && stab);
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
  auto su2 = LieGroupModel::make("su2");
  double worst_stab = 0, worst_mom = 0;
  bool ranks_ok = true;
  for (int k = 0; k < 20; ++k) {
    Rng qr(kSeed ^ 0x77ULL, std::uint64_t(k));
    Quiver q = random_quiver(qr, 8);
    QuiverInvariants inv = validate(q);
    for (int s = 0; s < 5; ++s) {
      Rng pr(kSeed ^ 0x700ULL + std::uint64_t(k), std::uint64_t(s));
      QuiverPoint p = sample_level_set(q, su2, pr);
      worst_mom = std::max(worst_mom, level_set_residual(q, su2, p));
      StabilizerResult sr = stabilizer_propagate(q, su2, p);
      worst_stab = std::max({worst_stab, sr.max_equation_residual, sr.max_identity_distance});
      ranks_ok &= moment_jacobian_rank(q, su2, p) == 3 * inv.n_interior;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "moment res %.2e, stabilizer res %.2e, ranks 3|int|: %s",
                worst_mom, worst_stab, ranks_ok ? "yes" : "NO");
  report(7, "freeness: identity stabilizers, level-set residuals, Jacobian ranks",
         worst_mom < 1e-9 && worst_stab < 1e-9 && ranks_ok, buf);
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
  auto su2 = LieGroupModel::make("su2");
  bool dims_ok = true;
  for (int k = 0; k < 200; ++k) {
    Rng rng(kSeed ^ 0x88ULL, std::uint64_t(k));
    Quiver q = random_quiver(rng, 8);
    QuiverInvariants inv = validate(q);
    long long lhs = 2LL * (inv.n_edges - inv.n_interior) * su2.dim();
    long long rhs = 2LL * (inv.genus + inv.m + inv.n - inv.components) * su2.dim();
    dims_ok &= (inv.dim_units * su2.dim() == lhs) && (lhs == rhs);
  }
  int glued = 0;
  bool glue_ok = true;
  for (int k = 0; k < 400 && glued < 50; ++k) {
    Rng rng(kSeed ^ 0x888ULL, std::uint64_t(k));
    Quiver q1 = random_quiver(rng, 6), q2 = random_quiver(rng, 6);
    BoundarySplit b1 = boundary_split(q1), b2 = boundary_split(q2);
    if (b1.outgoing.empty() || b1.outgoing.size() > b2.incoming.size()) continue;
    std::sort(b1.outgoing.begin(), b1.outgoing.end());
    std::sort(b2.incoming.begin(), b2.incoming.end());
    std::vector<std::pair<std::string, std::string>> match;
    for (std::size_t i = 0; i < b1.outgoing.size(); ++i)
      match.emplace_back(b1.outgoing[i], b2.incoming[i]);
    Quiver g = glue(q1, q2, match);
    glue_ok &= validate(g).dim_units ==
               validate(q1).dim_units + validate(q2).dim_units - 2 * long(match.size());
    ++glued;
  }
  report(8, "dimension laws: 2(|E|-|int|)dimG = 2(g+m+n-1)dimG; gluing law on 50 pairs",
         dims_ok && glue_ok && glued == 50,
         "glued pairs " + std::to_string(glued));
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
  bool ok = true;
  int done = 0;
  for (int k = 0; k < 4000 && done < 200; ++k) {
    Rng rng(kSeed ^ 0x99ULL, std::uint64_t(k));
    Quiver q = random_quiver(rng, 8);
    BoundarySplit bs = boundary_split(q);
    std::set<std::string> interior(bs.interior.begin(), bs.interior.end());
    std::vector<std::string> eligible;
    for (const auto& e : q.edges)
      if (e.src != e.dst && interior.count(e.src) && interior.count(e.dst))
        eligible.push_back(e.id);
    if (eligible.empty()) continue;
    std::string pick = eligible[std::size_t(rng.uniform_int(0, int(eligible.size()) - 1))];
    QuiverInvariants a = validate(q);
    QuiverInvariants b = validate(contract_edge(q, pick));
    ok &= a.m == b.m && a.n == b.n && a.genus == b.genus && a.dim_units == b.dim_units;
    ++done;
  }
  bool idem = true;
  for (int k = 0; k < 40; ++k) {
    Rng rng(kSeed ^ 0x999ULL, std::uint64_t(k));
    Quiver q = random_quiver(rng, 8);
    Quiver n1 = normalize(q);  // internally guarded to <= |E| contractions
    Quiver n2 = normalize(n1);
    idem &= n1.edges.size() == n2.edges.size() && n1.vertices.size() == n2.vertices.size();
  }
  report(9, "homotopy invariance of 200 contractions; normalize idempotent, <= |E| steps",
         ok && idem && done == 200, "contractions " + std::to_string(done));
}

// --------------------------------------------------------------- criterion 10
void criterion10() {
  auto su2 = LieGroupModel::make("su2");
  RelationsReport rel = verify_relations(su2);
  bool identity_ok = true;
  for (int k = 0; k < 50; ++k) {
    Rng rng(kSeed ^ 0xaaULL, std::uint64_t(k));
    CobMorphism m = random_morphism(rng);
    identity_ok &= same_morphism(compose(identity_morphism(m.n_out), m), m);
    identity_ok &= same_morphism(compose(m, identity_morphism(m.n_in)), m);
  }
  bool fun_ok = true, cross_ok = true;
  for (int k = 0; k < 50; ++k) {
    Rng rng(kSeed ^ 0xabULL, std::uint64_t(k));
    CobMorphism a = random_morphism(rng), b = random_morphism(rng);
    if (b.n_in < a.n_out) b = tensor(b, identity_morphism(a.n_out - b.n_in));
    if (b.n_in > a.n_out) a = tensor(a, identity_morphism(b.n_in - a.n_out));
    FunctorialityReport fr = functoriality_check(a, b, su2);
    fun_ok &= fr.pass;
    for (const auto& c : fr.composite_record.components)
      if (!c.closed && c.realizing_quiver)
        cross_ok &= validate(*c.realizing_quiver).dim_units * su2.dim() == c.dim;
  }
  FunctorialityReport g1 = functoriality_check(generator("copants"), generator("pants"), su2);
  bool genus1 = g1.pass && g1.composite_record.components.size() == 1 &&
                g1.composite_record.components[0].genus == 1 &&
                g1.composite_record.components[0].dim == 4LL * su2.dim();
  bool points = n_functor(generator("cup"), su2).components[0].dim == 0 &&
                n_functor(generator("cap"), su2).components[0].dim == 0;
  report(10, "TQFT relations, identity law, functoriality, cup/cap points, quiver cross-check",
         rel.pass && identity_ok && fun_ok && cross_ok && genus1 && points);
}

// --------------------------------------------------------------- criterion 11
void criterion11() {
  auto su2 = LieGroupModel::make("su2");
  QuasiHamBundle dbl = double_bundle(su2);
  double worst_antisym = 0, worst_inv = 0;
  for (int s = 0; s < 20; ++s) {
    Rng rng(kSeed ^ 0xbbULL, std::uint64_t(s));
    SpacePoint p = sample_regular_double_point(dbl, su2, rng);
    Eq1Candidate cand = eq1_candidate_P(dbl, p);
    worst_antisym = std::max(worst_antisym, cand.antisym_residual);
    for (int g = 0; g < 10; ++g) {
      std::vector<GroupElement> gh = {random_group_element(su2, rng),
                                      random_group_element(su2, rng)};
      SpacePoint gp = dbl.space.act(gh, p);
      RMat t = dbl.space.tangent_map(gh, p);
      Eq1Candidate cand2 = eq1_candidate_P(dbl, gp);
      worst_inv = std::max(worst_inv, (t * cand.sharp * t.transpose() - cand2.sharp).norm() /
                                         std::max(1.0, cand2.sharp.norm()));
    }
  }
  char buf[100];
  std::snprintf(buf, sizeof buf, "antisym %.2e < 1e-7, invariance %.2e < 1e-6", worst_antisym,
                worst_inv);
  report(11, "Eq (1) candidate bivector on D(SU(2)): antisymmetric and invariant",
         worst_antisym < 1e-7 && worst_inv < 1e-6, buf);
}

// --------------------------------------------------------------- criterion 12
void criterion12() {
  RunConfig cfg = RunConfig::defaults();
  cfg.group = "su2";
  cfg.seed = 42;
  cfg.n_samples = 5;
  std::string a = run_suite(cfg).dump(2);
  std::string b = run_suite(cfg).dump(2);
  report(12, "determinism: suite all --seed 42 emits byte-identical reports", a == b,
         std::to_string(a.size()) + " bytes");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures;
}
