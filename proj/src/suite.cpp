#include "qham/suite.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace qham {

using nlohmann::json;

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.tol = {
      {"orthonormality", 1e-12}, {"ad_invariance", 1e-10},  {"jacobi", 1e-10},
      {"exp_log", 1e-10},        {"ad_homomorphism", 1e-9}, {"eta_identity", 1e-8},
      {"psi_identity", 1e-12},   {"schouten_antisym", 1e-12}, {"biderivation", 1e-10},
      {"phi_invariance", 1e-10}, {"qp_residual", 1e-5},     {"c_match", 1e-6},
      {"bivector_slope_lo", 0.9}, {"bivector_slope_hi", 1.1}, {"trivector_slope", 0.9},
      {"pullback_match", 1e-7},  {"fiber_condition", 1e-5}, {"mult_slope", 1.9},
      {"equivariance", 1e-6},    {"family_form_slope", 0.9}, {"moment_residual", 1e-9},
      {"freeness_residual", 1e-9}, {"eq1_antisym", 1e-7},   {"eq1_invariance", 1e-6},
      {"omega_condition", 1e6},
  };
  return c;
}

double RunConfig::tolerance(const std::string& name) const {
  auto it = tol.find(name);
  if (it != tol.end()) return it->second;
  RunConfig d = defaults();
  auto jt = d.tol.find(name);
  if (jt == d.tol.end()) throw InputError("unknown tolerance name: " + name);
  return jt->second;
}

void RunConfig::validate_config() const {
  if (n_samples < 1) throw InputError("config: n_samples must be >= 1");
  if (fd_step <= 0) throw InputError("config: fd_step must be positive");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] <= 0) throw InputError("config: t_grid entries must be positive");
    if (i && t_grid[i] >= t_grid[i - 1]) throw InputError("config: t_grid must be decreasing");
  }
}

json multivector_to_json(const Multivector& mv) {
  json entries = json::array();
  for (std::size_t r = 0; r < mv.size(); ++r) {
    if (mv.raw(r) == 0.0) continue;
    entries.push_back(json::array({mv.tuple(r), mv.raw(r)}));
  }
  return json{{"degree", mv.degree()}, {"dim", mv.dim()}, {"entries", entries}};
}

json quiver_to_json_obj(const Quiver& q) {
  json j;
  j["vertices"] = q.vertices;
  j["edges"] = json::array();
  for (const auto& e : q.edges) j["edges"].push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  return j;
}

json config_to_json(const RunConfig& cfg) {
  return json{{"group", cfg.group}, {"seed", cfg.seed},       {"n_samples", cfg.n_samples},
              {"fd_step", cfg.fd_step}, {"t_grid", cfg.t_grid}, {"tolerances", cfg.tol}};
}

namespace {

json slope_entry(const std::vector<double>& grid, const std::vector<double>& norms) {
  double slope = loglog_slope(grid, norms);
  return json{{"t_grid", grid}, {"norms", norms}, {"slope", slope}};
}

RVec domain_sample(const LieGroupModel& model, std::uint64_t seed, int index, double scale = 0.6) {
  Rng rng(seed, std::uint64_t(index));
  RVec x = random_algebra(model, rng, scale);
  if (!chart_domain_ok(model, x, 1.0)) x *= 0.25;
  return x;
}

}  // namespace

json verify_lie_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  int n = model.dim();
  json out;
  out["name"] = "verify.lie";
  out["group"] = model.name();
  out["dim"] = n;
  out["matrix_size"] = model.matrix_size();
  out["inner_product"] = "-Re tr(XY), basis orthonormalized";

  double ortho = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ortho = std::max(ortho,
                       std::abs(model.inner(model.basis(i), model.basis(j)) - (i == j ? 1.0 : 0.0)));

  double adinv = 0, jacobi = 0, fantisym = 0;
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed, std::uint64_t(s));
    RVec x = random_algebra(model, rng), y = random_algebra(model, rng),
         z = random_algebra(model, rng);
    adinv = std::max(adinv, std::abs(model.bracket(x, y).dot(z) + y.dot(model.bracket(x, z))));
    // Jacobi on random coefficient triples
    RVec j1 = model.bracket(x, model.bracket(y, z)) + model.bracket(y, model.bracket(z, x)) +
              model.bracket(z, model.bracket(x, y));
    jacobi = std::max(jacobi, j1.norm());
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        fantisym = std::max(fantisym, std::abs(model.f(i, j, k) + model.f(i, k, j)));
        fantisym = std::max(fantisym, std::abs(model.f(i, j, k) + model.f(j, i, k)));
      }

  double explog = 0, adhom = 0, eta_ident = 0, adexp = 0;
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed ^ 0x5eedULL, std::uint64_t(s));
    RVec x = random_algebra(model, rng, 0.5);
    GroupElement g = exp_map(model, x);
    explog = std::max(explog, (log_map(g) - x).norm());
    GroupElement h = random_group_element(model, rng);
    adhom = std::max(adhom, (Ad_matrix(group_mul(g, h)) - Ad_matrix(g) * Ad_matrix(h)).norm());
    RMat ad = model.ad_matrix(x);
    adexp = std::max(adexp, (Ad_matrix(g) - RMat(ad.exp())).norm());
    RMat eta = eta_of_antisym(ad);
    RMat one_minus = RMat::Identity(n, n) - RMat((-ad).exp());
    eta_ident = std::max(eta_ident, (eta * one_minus - ad).norm());
  }

  out["residuals"] = {{"orthonormality", ortho},    {"ad_invariance", adinv},
                      {"f_antisymmetry", fantisym}, {"jacobi", jacobi},
                      {"exp_log_roundtrip", explog}, {"Ad_homomorphism", adhom},
                      {"Ad_exp_vs_exp_ad", adexp},  {"eta_defining_identity", eta_ident}};
  json f = json::array();
  for (int i = 0; i < n; ++i) {
    json fi = json::array();
    for (int j = 0; j < n; ++j) {
      json fij = json::array();
      for (int k = 0; k < n; ++k) fij.push_back(model.f(i, j, k));
      fi.push_back(fij);
    }
    f.push_back(fi);
  }
  out["f_ijk"] = f;
  out["pass"] = ortho < cfg.tolerance("orthonormality") && adinv < cfg.tolerance("ad_invariance") &&
                fantisym < 1e-12 && jacobi < cfg.tolerance("jacobi") &&
                explog < cfg.tolerance("exp_log") && adhom < cfg.tolerance("ad_homomorphism") &&
                adexp < 1e-8 && eta_ident < cfg.tolerance("eta_identity");
  return out;
}

json verify_multivector_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "verify.multivector";
  out["group"] = model.name();
  FusionBivector fus = fusion_bivector(model);
  Multivector lhs = schouten_lie(fus.psi, fus.psi, fus.doubled);
  Multivector rhs = fus.diag_phi - fus.phi1 - fus.phi2;
  double psi_res = (lhs - rhs).norm();
  out["psi_identity_residual"] = psi_res;
  out["cartan_trivector"] = multivector_to_json(cartan_trivector(model));

  double antisym = 0, bider = 0, phi_inv = 0;
  Multivector phi = cartan_trivector(model);
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed ^ 0xabcdULL, std::uint64_t(s));
    int n = model.dim();
    Multivector a(2, n), b(1, n), c(2, n);
    for (std::size_t r = 0; r < a.size(); ++r) a.raw(r) = rng.normal();
    for (std::size_t r = 0; r < b.size(); ++r) b.raw(r) = rng.normal();
    for (std::size_t r = 0; r < c.size(); ++r) c.raw(r) = rng.normal();
    // graded antisymmetry [a,b] = -(-1)^{(p-1)(q-1)} [b,a]
    Multivector ab = schouten_lie(a, b, model);
    Multivector ba = schouten_lie(b, a, model);
    double sgn = ((a.degree() - 1) * (b.degree() - 1)) % 2 == 0 ? 1.0 : -1.0;
    antisym = std::max(antisym, (ab + sgn * ba).norm());
    // biderivation [a, b^c] = [a,b]^c + (-1)^{(deg a-1) deg b} b^[a,c]
    Multivector lhs2 = schouten_lie(a, b.wedge(c), model);
    double sg = ((a.degree() - 1) * b.degree()) % 2 == 0 ? 1.0 : -1.0;
    Multivector rhs2 = schouten_lie(a, b, model).wedge(c) + sg * b.wedge(schouten_lie(a, c, model));
    bider = std::max(bider, (lhs2 - rhs2).norm());
    RVec x = random_algebra(model, rng);
    phi_inv = std::max(phi_inv, phi.apply_derivation(model.ad_matrix(x)).norm());
  }
  out["residuals"] = {{"psi_identity", psi_res},
                      {"schouten_graded_antisymmetry", antisym},
                      {"schouten_biderivation", bider},
                      {"cartan_ad_invariance", phi_inv}};
  out["pass"] = psi_res < cfg.tolerance("psi_identity") &&
                antisym < cfg.tolerance("schouten_antisym") &&
                bider < cfg.tolerance("biderivation") && phi_inv < cfg.tolerance("phi_invariance");
  return out;
}

json verify_qp_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "verify.qp";
  out["group"] = model.name();
  double c = default_qp_constant();
  out["c_constant"] = c;
  out["c_measured_on"] = "su3";
  QpVerifyReport rep =
      verify_quasi_poisson(model, cfg.n_samples, cfg.seed, cfg.fd_step,
                           cfg.tolerance("qp_residual"), c);
  out["quasi_poisson"] = {{"bundle", rep.bundle},     {"n_points", rep.n_points},
                          {"seed", rep.seed},         {"c_estimate", rep.c_estimate},
                          {"c_defined", rep.c_defined}, {"max_residual", rep.max_residual},
                          {"tolerance", rep.tolerance}, {"pass", rep.pass}};

  // Eq (1) on the double: antisymmetry and invariance of the candidate P
  QuasiHamBundle dbl = double_bundle(model);
  double worst_antisym = 0, worst_inv = 0, worst_equiv = 0;
  int n_eq1 = std::min(cfg.n_samples, 20);
  for (int s = 0; s < n_eq1; ++s) {
    Rng rng(cfg.seed ^ 0x471fULL, std::uint64_t(s));
    SpacePoint p = sample_regular_double_point(dbl, model, rng, cfg.tolerance("omega_condition"));
    Eq1Candidate cand = eq1_candidate_P(dbl, p, cfg.tolerance("omega_condition"));
    worst_antisym = std::max(worst_antisym, cand.antisym_residual);
    std::vector<GroupElement> gh = {random_group_element(model, rng),
                                    random_group_element(model, rng)};
    SpacePoint p2 = dbl.space.act(gh, p);
    RMat t = dbl.space.tangent_map(gh, p);
    Eq1Candidate cand2 = eq1_candidate_P(dbl, p2, cfg.tolerance("omega_condition"));
    RMat pushed = t * cand.sharp * t.transpose();
    worst_inv = std::max(worst_inv, (pushed - cand2.sharp).norm() /
                                        std::max(1.0, cand2.sharp.norm()));
    // moment equivariance mu((g,h).(a,b)) = (g,h) . mu(a,b)
    std::vector<GroupElement> mu1 = dbl.mu(p);
    std::vector<GroupElement> mu2 = dbl.mu(p2);
    worst_equiv = std::max(worst_equiv, group_distance(mu2[0], group_conj(gh[0], mu1[0])));
    worst_equiv = std::max(worst_equiv, group_distance(mu2[1], group_conj(gh[1], mu1[1])));
  }
  out["eq1"] = {{"n_points", n_eq1},
                {"candidate_antisymmetry", worst_antisym},
                {"invariance", worst_inv},
                {"moment_equivariance", worst_equiv}};

  // distribution dimensions
  QuasiPoissonBundle pg = PG_bundle(model);
  Rng rng(cfg.seed ^ 0x99ULL);
  SpacePoint ident = point_of({identity_element(model)});
  SpacePoint gen = point_of({random_group_element(model, rng)});
  out["distribution"] = {{"PG_at_identity", distribution_dim(pg, ident)},
                         {"PG_generic", distribution_dim(pg, gen)}};
  out["pass"] = rep.pass && worst_antisym < cfg.tolerance("eq1_antisym") &&
                worst_inv < cfg.tolerance("eq1_invariance") && worst_equiv < 1e-10;
  return out;
}

json deform_bivector_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "deform.bivector";
  out["group"] = model.name();
  json samples = json::array();
  double slope_min = 1e30, slope_max = -1e30, worst_pull = 0, worst_fiber = 0;
  double c = default_qp_constant();
  bool all_flat = true;
  for (int s = 0; s < cfg.n_samples; ++s) {
    RVec x = domain_sample(model, cfg.seed, s);
    RMat p0 = family_bivector(model, x, 0.0);
    std::vector<double> norms;
    for (double t : cfg.t_grid) norms.push_back((family_bivector(model, x, t) - p0).norm());
    json e = slope_entry(cfg.t_grid, norms);
    e["x_seed"] = s;
    double slope = e["slope"].get<double>();
    bool flat = *std::max_element(norms.begin(), norms.end()) < 1e-13;
    if (!flat) {
      all_flat = false;
      slope_min = std::min(slope_min, slope);
      slope_max = std::max(slope_max, slope);
    }
    // closed form vs FD pullback of t P_G through the chart at t >= 1e-3
    for (double t : cfg.t_grid) {
      if (t < 1e-3) continue;
      RMat closed = family_bivector(model, x, t);
      auto pullback_at = [&](double h) {
        int n = model.dim();
        GroupElement g = exp_map(model, t * x);
        RMat jac(n, n);
        for (int j = 0; j < n; ++j) {
          RVec xp = x, xm = x;
          xp(j) += h;
          xm(j) -= h;
          CMat diff = (exp_map(model, t * xp).m - exp_map(model, t * xm).m) / (2 * h);
          jac.col(j) = g.model.coords(g.m.inverse() * diff);
        }
        RMat a = Ad_matrix(group_inv(g));
        RMat cg = 0.25 * (a - a.transpose());
        RMat ji = jac.inverse();
        return RMat(ji * (t * cg) * ji.transpose());
      };
      RMat fd = (4.0 * pullback_at(5e-4) - pullback_at(1e-3)) / 3.0;
      worst_pull = std::max(worst_pull, (closed - fd).norm());
    }
    // fiber condition [P_t, P_t] = c phi_t at t in {1, 0.1, 0}
    for (double t : {1.0, 0.1, 0.0}) {
      BivectorField pf = [&model, t](const RVec& y) { return family_bivector(model, y, t); };
      Multivector sq = schouten_field(pf, pf, x, cfg.fd_step);
      Multivector target = family_trivector(model, x, t);
      worst_fiber = std::max(worst_fiber, (sq - c * target).norm());
    }
    samples.push_back(e);
  }
  out["samples"] = samples;
  out["slope_min"] = all_flat ? json() : json(slope_min);
  out["slope_max"] = all_flat ? json() : json(slope_max);
  out["abelian_flat"] = all_flat;
  out["pullback_oracle_max_diff"] = worst_pull;
  out["fiber_condition_max_residual"] = worst_fiber;
  out["c_constant"] = c;
  bool slope_ok = all_flat || (slope_min >= cfg.tolerance("bivector_slope_lo") &&
                               slope_max <= cfg.tolerance("bivector_slope_hi"));
  out["slope_window"] = {cfg.tolerance("bivector_slope_lo"), cfg.tolerance("bivector_slope_hi")};
  out["slope_pass"] = slope_ok;
  out["pass"] = slope_ok && worst_pull < cfg.tolerance("pullback_match") &&
                worst_fiber < cfg.tolerance("fiber_condition");
  return out;
}

json deform_trivector_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "deform.trivector";
  out["group"] = model.name();
  double slope_min = 1e30;
  bool all_flat = true;
  json samples = json::array();
  for (int s = 0; s < cfg.n_samples; ++s) {
    RVec x = domain_sample(model, cfg.seed ^ 0x7777ULL, s);
    std::vector<double> norms;
    for (double t : cfg.t_grid) norms.push_back(family_trivector(model, x, t).norm());
    json e = slope_entry(cfg.t_grid, norms);
    bool flat = *std::max_element(norms.begin(), norms.end()) < 1e-13;
    if (!flat) {
      all_flat = false;
      slope_min = std::min(slope_min, e["slope"].get<double>());
    }
    samples.push_back(e);
    if (family_trivector(model, x, 0.0).norm() != 0.0) {
      out["t0_exact"] = false;
    }
  }
  if (!out.contains("t0_exact")) out["t0_exact"] = true;
  out["samples"] = samples;
  out["slope_min"] = all_flat ? json() : json(slope_min);
  out["abelian_flat"] = all_flat;
  out["pass"] = out["t0_exact"].get<bool>() &&
                (all_flat || slope_min >= cfg.tolerance("trivector_slope"));
  return out;
}

json deform_mult_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "deform.mult";
  out["group"] = model.name();
  double slope_min = 1e30;
  bool all_flat = true;
  json samples = json::array();
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed ^ 0x3333ULL, std::uint64_t(s));
    RVec x = random_algebra(model, rng, 0.5), y = random_algebra(model, rng, 0.5);
    std::vector<double> res;
    for (double t : cfg.t_grid) res.push_back(mult_chart_residual(model, x, y, t));
    json e = slope_entry(cfg.t_grid, res);
    bool flat = *std::max_element(res.begin(), res.end()) < 1e-13;
    if (!flat) {
      all_flat = false;
      slope_min = std::min(slope_min, e["slope"].get<double>());
    }
    samples.push_back(e);
  }
  // exact additive branch
  Rng rng(cfg.seed);
  RVec x = random_algebra(model, rng), y = random_algebra(model, rng);
  GPoint z = mult_map(zero_fiber_point(model, x), zero_fiber_point(model, y));
  bool t0_exact = (z.x - (x + y)).norm() == 0.0 && z.t == 0.0;
  out["samples"] = samples;
  out["slope_min"] = all_flat ? json() : json(slope_min);
  out["abelian_flat"] = all_flat;
  out["t0_branch_exact"] = t0_exact;
  out["pass"] = t0_exact && (all_flat || slope_min >= cfg.tolerance("mult_slope"));
  return out;
}

namespace {

json face_to_json(const Face& f) {
  return json{{"ambient", f.ambient == FaceAmbient::Alcove ? "alcove" : "chamber"},
              {"id", f.id},
              {"dim", f.dim},
              {"stabilizer_type", f.stabilizer_type},
              {"dim_stabilizer", f.dim_stabilizer},
              {"dim_commutator", f.dim_commutator},
              {"contains_origin_in_closure", f.contains_origin_in_closure},
              {"representative_torus", std::vector<double>(f.rep_torus.data(),
                                                           f.rep_torus.data() + f.rep_torus.size())}};
}

}  // namespace

json implode_faces_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "implode.faces";
  out["group"] = model.name();
  out["alcove_normalization"] = "simple roots >= 0, highest root <= 2*pi (basis orthonormal for -tr)";
  json af = json::array(), cf = json::array();
  int n_origin = 0;
  for (const Face& f : alcove_faces(model)) {
    af.push_back(face_to_json(f));
    n_origin += f.contains_origin_in_closure;
  }
  for (const Face& f : chamber_faces(model)) cf.push_back(face_to_json(f));
  out["alcove"] = af;
  out["chamber"] = cf;
  out["origin_faces"] = n_origin;
  bool bijection = n_origin == int(cf.size());
  // G_sigma = G_{tau_sigma} at the dimension level
  bool stab_match = true;
  for (const Face& f : alcove_faces(model))
    if (f.contains_origin_in_closure) {
      Face tau = tau_of(model, f);
      stab_match &= (tau.dim_stabilizer == f.dim_stabilizer);
    }
  out["bijection_counts_match"] = bijection;
  out["stabilizer_dims_match"] = stab_match;
  out["pass"] = bijection && stab_match;
  return out;
}

json implode_strata_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "implode.strata";
  out["group"] = model.name();
  bool formulas = true;
  json mult = json::array(), add = json::array();
  for (const Stratum& s : stratum_inventory(model, ImplodedSpace::DoubleImplosion)) {
    mult.push_back({{"face", s.face.id},
                    {"dim", s.dim},
                    {"deformation_target", s.deformation_target}});
    formulas &= (s.dim == model.dim() - s.face.dim_commutator + s.face.dim);
  }
  for (const Stratum& s : stratum_inventory(model, ImplodedSpace::CotangentImplosion)) {
    add.push_back({{"face", s.face.id}, {"dim", s.dim}});
    formulas &= (s.dim == model.dim() - s.face.dim_commutator + s.face.dim);
  }
  out["double_implosion"] = mult;
  out["cotangent_implosion"] = add;
  out["dimension_formulas_hold"] = formulas;
  out["pass"] = formulas;
  return out;
}

json implode_family_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "implode.family";
  out["group"] = model.name();
  json faces = json::array();
  bool pass = true;
  int idx = 0;
  for (const Face& sigma : alcove_faces(model)) {
    if (!sigma.contains_origin_in_closure) continue;
    Face tau = tau_of(model, sigma);
    RVec x = tau.representative;
    Rng rng(cfg.seed ^ 0x515ULL, std::uint64_t(idx++));
    RVec y1 = random_algebra(model, rng), y2 = random_algebra(model, rng);
    RVec z1 = torus_to_full(model, RVec(rng.normal_vec(int(tau.rep_torus.size()))));
    RVec z2 = torus_to_full(model, RVec(rng.normal_vec(int(tau.rep_torus.size()))));
    double f0 = stratum_family_form(model, sigma, x, 0.0, y1, z1, y2, z2);
    double om = omega_tau(model, tau, x, y1, z1, y2, z2);
    std::vector<double> diffs;
    for (double t : cfg.t_grid)
      diffs.push_back(std::abs(stratum_family_form(model, sigma, x, t, y1, z1, y2, z2) - f0));
    double slope = loglog_slope(cfg.t_grid, diffs);
    bool flat = *std::max_element(diffs.begin(), diffs.end()) < 1e-13;
    bool ok = (f0 == om) && (flat || slope >= cfg.tolerance("family_form_slope"));
    pass &= ok;
    faces.push_back({{"sigma", sigma.id},
                     {"tau", tau.id},
                     {"interval_bound", family_interval_bound(model, sigma)},
                     {"t0_equals_omega_tau", f0 == om},
                     {"diffs", diffs},
                     {"slope", flat ? json() : json(slope)},
                     {"pass", ok}});
  }
  out["faces"] = faces;
  out["pass"] = pass;
  return out;
}

json implode_master_section(const RunConfig& cfg, int genus, int r) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  MasterInventory inv = master_moduli_dims(model, genus, r);
  json strata = json::array(), add = json::array();
  for (const auto& s : inv.strata) strata.push_back({{"faces", s.faces}, {"dim", s.dim}});
  for (const auto& s : inv.additive_strata) add.push_back({{"faces", s.faces}, {"dim", s.dim}});
  return json{{"name", "implode.master"},
              {"group", model.name()},
              {"genus", genus},
              {"r", r},
              {"strata", strata},
              {"top_dim", inv.top_dim},
              {"additive_strata", add},
              {"additive_top_dim", inv.additive_top_dim},
              {"pass", true}};
}

json quiver_info_section(const Quiver& q, const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  QuiverInvariants inv = validate(q);
  BoundarySplit bs = boundary_split(q);
  return json{{"name", "quiver.info"},
              {"quiver", quiver_to_json_obj(q)},
              {"n_edges", inv.n_edges},
              {"n_interior", inv.n_interior},
              {"m", inv.m},
              {"n", inv.n},
              {"genus", inv.genus},
              {"components", inv.components},
              {"dim_N_units", inv.dim_units},
              {"dim_N", inv.dim_units * model.dim()},
              {"incoming", bs.incoming},
              {"outgoing", bs.outgoing},
              {"interior", bs.interior},
              {"pass", true}};
}

json quiver_sample_section(const Quiver& q, const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "quiver.sample";
  double worst = 0;
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed, std::uint64_t(s));
    QuiverPoint p = sample_level_set(q, model, rng);
    worst = std::max(worst, level_set_residual(q, model, p));
  }
  out["n_samples"] = cfg.n_samples;
  out["max_moment_residual"] = worst;
  out["tolerance"] = cfg.tolerance("moment_residual");
  out["pass"] = worst < cfg.tolerance("moment_residual");
  return out;
}

json quiver_freeness_section(const Quiver& q, const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "quiver.freeness";
  double worst_eq = 0, worst_id = 0;
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed, std::uint64_t(s));
    QuiverPoint p = sample_level_set(q, model, rng);
    StabilizerResult r = stabilizer_propagate(q, model, p);
    worst_eq = std::max(worst_eq, r.max_equation_residual);
    worst_id = std::max(worst_id, r.max_identity_distance);
  }
  out["n_samples"] = cfg.n_samples;
  out["max_equation_residual"] = worst_eq;
  out["max_identity_distance"] = worst_id;
  out["pass"] = worst_eq < cfg.tolerance("freeness_residual") &&
                worst_id < cfg.tolerance("freeness_residual");
  return out;
}

json quiver_rank_section(const Quiver& q, const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  QuiverInvariants inv = validate(q);
  json out;
  out["name"] = "quiver.rank";
  int expected = inv.n_interior * model.dim();
  bool ok = true;
  json ranks = json::array();
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed, std::uint64_t(s));
    QuiverPoint p = sample_level_set(q, model, rng);
    int r = moment_jacobian_rank(q, model, p);
    ranks.push_back(r);
    ok &= (r == expected);
  }
  out["expected"] = expected;
  out["ranks"] = ranks;
  out["pass"] = ok;
  return out;
}

json cob_parse_section(const std::string& expr, const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  CobMorphism m = parse_expression(expr);
  QHamRecord rec = n_functor(m, model);
  json comps = json::array();
  for (const auto& c : rec.components) {
    json jc = {{"genus", c.genus}, {"in", c.m}, {"out", c.n}, {"closed", c.closed}};
    if (!c.closed) {
      jc["dim"] = c.dim;
      jc["point"] = c.is_point;
      if (c.realizing_quiver) jc["realizing_quiver"] = quiver_to_json_obj(*c.realizing_quiver);
    }
    comps.push_back(jc);
  }
  return json{{"name", "cob.parse"},   {"expression", expr},
              {"source", m.n_in},      {"target", m.n_out},
              {"signature", morphism_signature(m)},
              {"source_group", rec.source_group}, {"target_group", rec.target_group},
              {"components", comps},  {"pass", true}};
}

json cob_relations_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  RelationsReport rep = verify_relations(model);
  json rels = json::array();
  for (auto& [name, ok] : rep.relations) rels.push_back({{"relation", name}, {"holds", ok}});
  return json{{"name", "cob.relations"},
              {"relations", rels},
              {"failures", rep.failures},
              {"pass", rep.pass}};
}

json cob_functoriality_section(const RunConfig& cfg) {
  LieGroupModel model = LieGroupModel::make(cfg.group);
  json out;
  out["name"] = "cob.functoriality";
  bool pass = true;
  int checked = 0;
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed ^ 0xc0bULL, std::uint64_t(s));
    CobMorphism m1 = random_morphism(rng);
    CobMorphism m2 = random_morphism(rng);
    if (m2.n_in != m1.n_out) {
      // pad the smaller side with cylinders
      if (m2.n_in < m1.n_out)
        m2 = tensor(m2, identity_morphism(m1.n_out - m2.n_in));
      else
        m1 = tensor(m1, identity_morphism(m2.n_in - m1.n_out));
    }
    FunctorialityReport rep = functoriality_check(m1, m2, model);
    pass &= rep.pass;
    ++checked;
  }
  // the canonical example: pants after copants is the genus-1 cylinder
  FunctorialityReport g1 = functoriality_check(generator("copants"), generator("pants"), model);
  QHamRecord rec = g1.composite_record;
  bool genus1 = rec.components.size() == 1 && rec.components[0].genus == 1 &&
                rec.components[0].dim == 4LL * model.dim();
  out["n_random_pairs"] = checked;
  out["pants_after_copants_genus1_dim"] = rec.components.empty() ? -1 : rec.components[0].dim;
  out["pass"] = pass && g1.pass && genus1;
  return out;
}

json run_suite(const RunConfig& cfg) {
  cfg.validate_config();
  json sections = json::array();
  sections.push_back(verify_lie_section(cfg));
  sections.push_back(verify_multivector_section(cfg));
  sections.push_back(verify_qp_section(cfg));
  sections.push_back(deform_bivector_section(cfg));
  sections.push_back(deform_trivector_section(cfg));
  sections.push_back(deform_mult_section(cfg));
  LieGroupModel model = LieGroupModel::make(cfg.group);
  if (model.kind() == GroupKind::Su2 || model.kind() == GroupKind::Su3) {
    sections.push_back(implode_faces_section(cfg));
    sections.push_back(implode_strata_section(cfg));
    sections.push_back(implode_family_section(cfg));
    sections.push_back(implode_master_section(cfg, 1, 2));
  }
  sections.push_back(quiver_info_section(segment_quiver(), cfg));
  sections.push_back(quiver_sample_section(chain_quiver(), cfg));
  sections.push_back(quiver_freeness_section(pants_quiver(), cfg));
  sections.push_back(quiver_rank_section(pants_quiver(), cfg));
  sections.push_back(cob_relations_section(cfg));
  sections.push_back(cob_functoriality_section(cfg));
  bool pass = true;
  for (const auto& s : sections) pass &= s.value("pass", false);
  return json{{"schema", 1}, {"config", config_to_json(cfg)}, {"sections", sections},
              {"pass", pass}};
}

bool section_pass(const json& section) { return section.value("pass", false); }

}  // namespace qham
