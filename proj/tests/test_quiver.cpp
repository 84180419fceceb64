#include <doctest.h>

#include <set>

#include "qham/qp_structures.hpp"
#include "qham/quiver.hpp"

using namespace qham;

TEST_CASE("invariants and boundary classification") {
  auto seg = segment_quiver();
  QuiverInvariants si = validate(seg);
  CHECK(si.n_edges == 1);
  CHECK(si.n_interior == 0);
  CHECK(si.m == 1);
  CHECK(si.n == 1);
  CHECK(si.genus == 0);
  CHECK(si.dim_units == 2);

  QuiverInvariants pi = validate(pants_quiver());
  CHECK(pi.n_edges == 3);
  CHECK(pi.n_interior == 1);
  CHECK(pi.m == 2);
  CHECK(pi.n == 1);
  CHECK(pi.genus == 0);
  CHECK(pi.dim_units == 4);

  Quiver loopleg;
  loopleg.vertices = {"b", "v"};
  loopleg.edges = {{"e01", "b", "v"}, {"e02", "v", "v"}};
  QuiverInvariants li = validate(loopleg);
  CHECK(li.n_edges == 2);
  CHECK(li.n_interior == 1);
  CHECK(li.m == 1);
  CHECK(li.n == 0);
  CHECK(li.genus == 1);
  CHECK(li.dim_units == 2);
  CHECK(li.dim_units == 2 * (li.genus + li.m + li.n - 1));

  Quiver bad;
  bad.vertices = {"a", "b", "lonely"};
  bad.edges = {{"e01", "a", "b"}};
  CHECK_THROWS_AS(validate(bad), InputError);
}

TEST_CASE("fused moment") {
  auto su2 = LieGroupModel::make("su2");
  auto pants = pants_quiver();
  Rng rng(42);
  QuiverPoint p = random_quiver_point(pants, su2, rng);
  for (auto& b : p.b) b = identity_element(su2);
  auto mu = fused_moment(pants, su2, p);
  REQUIRE(mu.size() == 1);
  CHECK(group_distance(mu.at("v"), identity_element(su2)) < 1e-13);

  // chain with root at out1: b2 solved as Ad_{a1} b1
  auto chain = chain_quiver();
  Rng r2(7);
  QuiverPoint cp = sample_level_set(chain, su2, r2, std::string("out1"));
  CMat expect = cp.a[0].m * cp.b[0].m * cp.a[0].m.inverse();
  CHECK((cp.b[1].m - expect).norm() < 1e-12);
  CHECK(level_set_residual(chain, su2, cp) < 1e-12);

  // equivariance: mu(g.p)(v) = g_v mu(p)(v) g_v^-1 for interior-supported g
  for (int s = 0; s < 10; ++s) {
    Rng r3(42, s);
    QuiverPoint q = random_quiver_point(pants, su2, r3);
    GroupElement gv = random_group_element(su2, r3);
    QuiverPoint gq = vertex_action(pants, su2, {{"v", gv}}, q);
    auto m1 = fused_moment(pants, su2, q);
    auto m2 = fused_moment(pants, su2, gq);
    CHECK(group_distance(m2.at("v"), group_conj(gv, m1.at("v"))) < 1e-10);
  }
}

TEST_CASE("residual moment") {
  auto su2 = LieGroupModel::make("su2");
  auto seg = segment_quiver();
  Rng rng(11);
  QuiverPoint p = random_quiver_point(seg, su2, rng);
  auto nu = residual_moment(seg, su2, p);
  // the D(G) moment pair: b^-1 at the source leg, Ad_a b at the target leg
  QuasiHamBundle dbl = double_bundle(su2);
  auto mu = dbl.mu(point_of({p.a[0], p.b[0]}));
  CHECK(group_distance(nu.at("out1"), mu[0]) < 1e-13);
  CHECK(group_distance(nu.at("in1"), mu[1]) < 1e-13);

  QuiverPoint pb = p;
  pb.b[0] = identity_element(su2);
  auto nub = residual_moment(seg, su2, pb);
  CHECK(group_distance(nub.at("in1"), identity_element(su2)) < 1e-14);
  CHECK(group_distance(nub.at("out1"), identity_element(su2)) < 1e-14);

  // invariance under the interior action
  auto chain = chain_quiver();
  for (int s = 0; s < 10; ++s) {
    Rng r2(11, s);
    QuiverPoint q = random_quiver_point(chain, su2, r2);
    GroupElement gv = random_group_element(su2, r2);
    auto n1 = residual_moment(chain, su2, q);
    auto n2 = residual_moment(chain, su2, vertex_action(chain, su2, {{"v", gv}}, q));
    CHECK(group_distance(n1.at("in1"), n2.at("in1")) < 1e-10);
    CHECK(group_distance(n1.at("out1"), n2.at("out1")) < 1e-10);
  }
}

TEST_CASE("fused form") {
  auto su2 = LieGroupModel::make("su2");
  auto seg = segment_quiver();
  Rng rng(5);
  QuiverPoint p = random_quiver_point(seg, su2, rng);
  QuiverTangent t1 = random_quiver_tangent(seg, su2, rng);
  QuiverTangent t2 = random_quiver_tangent(seg, su2, rng);
  // single edge: the double two-form, via the independent qp_structures path
  QuasiHamBundle dbl = double_bundle(su2);
  SpacePoint sp = point_of({p.a[0], p.b[0]});
  RVec v1(6), v2(6);
  v1 << t1.xi_a[0], t1.xi_b[0];
  v2 << t2.xi_a[0], t2.xi_b[0];
  CHECK(fused_form(seg, su2, p, t1, t2) == doctest::Approx(dbl.omega(sp, v1, v2)).epsilon(1e-13));

  auto pants = pants_quiver();
  QuiverPoint pp = random_quiver_point(pants, su2, rng);
  QuiverTangent u1 = random_quiver_tangent(pants, su2, rng);
  QuiverTangent u2 = random_quiver_tangent(pants, su2, rng);
  double f12 = fused_form(pants, su2, pp, u1, u2);
  double f21 = fused_form(pants, su2, pp, u2, u1);
  CHECK(f12 + f21 == doctest::Approx(0.0).epsilon(1e-14));

  // exact bilinearity: random linear combination, no finite differences
  QuiverTangent u3 = random_quiver_tangent(pants, su2, rng);
  double al = 1.7, be = -0.6;
  QuiverTangent mix = u1;
  for (std::size_t e = 0; e < mix.xi_a.size(); ++e) {
    mix.xi_a[e] = al * u1.xi_a[e] + be * u3.xi_a[e];
    mix.xi_b[e] = al * u1.xi_b[e] + be * u3.xi_b[e];
  }
  double lhs = fused_form(pants, su2, pp, mix, u2);
  double rhs = al * f12 + be * fused_form(pants, su2, pp, u3, u2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("level set sampler") {
  auto su2 = LieGroupModel::make("su2");
  auto seg = segment_quiver();
  Rng rng(1);
  QuiverPoint sp = sample_level_set(seg, su2, rng);
  CHECK(level_set_residual(seg, su2, sp) == 0.0);  // no interior constraint

  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    Rng r2(1, k);
    Quiver q = random_quiver(r2, 8);
    QuiverPoint p = sample_level_set(q, su2, r2);
    worst = std::max(worst, level_set_residual(q, su2, p));
  }
  CHECK(worst < 1e-9);

  // re-rooting changes the solver output but not the residual
  auto pants = pants_quiver();
  for (const char* root : {"in1", "in2", "out1"}) {
    Rng r3(2);
    QuiverPoint p = sample_level_set(pants, su2, r3, std::string(root));
    CHECK(level_set_residual(pants, su2, p) < 1e-12);
  }

  Quiver closed;
  closed.vertices = {"u", "v"};
  closed.edges = {{"e01", "u", "v"}, {"e02", "v", "u"}};
  Rng r4(3);
  CHECK_THROWS_AS(sample_level_set(closed, su2, r4), DomainError);
}

TEST_CASE("stabilizer propagation") {
  auto su2 = LieGroupModel::make("su2");
  auto chain = chain_quiver();
  Rng rng(9);
  QuiverPoint p = sample_level_set(chain, su2, rng);
  StabilizerResult r = stabilizer_propagate(chain, su2, p);
  CHECK(r.assignment.size() == 1);
  CHECK(r.max_identity_distance < 1e-12);
  CHECK(r.max_equation_residual < 1e-12);

  auto seg = segment_quiver();
  QuiverPoint ps = random_quiver_point(seg, su2, rng);
  StabilizerResult rs = stabilizer_propagate(seg, su2, ps);
  CHECK(rs.assignment.empty());

  double worst_eq = 0, worst_id = 0;
  for (int k = 0; k < 100; ++k) {
    Rng r2(9, k);
    Quiver q = random_quiver(r2, 8);
    QuiverPoint lp = sample_level_set(q, su2, r2);
    StabilizerResult sr = stabilizer_propagate(q, su2, lp);
    worst_eq = std::max(worst_eq, sr.max_equation_residual);
    worst_id = std::max(worst_id, sr.max_identity_distance);
  }
  CHECK(worst_eq < 1e-9);
  CHECK(worst_id < 1e-9);

  Quiver closed;
  closed.vertices = {"u", "v"};
  closed.edges = {{"e01", "u", "v"}, {"e02", "v", "u"}};
  CHECK_THROWS_AS(stabilizer_propagate(closed, su2, random_quiver_point(closed, su2, rng)),
                  DomainError);
}

TEST_CASE("moment Jacobian rank") {
  auto su2 = LieGroupModel::make("su2");
  Rng rng(4);
  CHECK(moment_jacobian_rank(segment_quiver(), su2,
                             random_quiver_point(segment_quiver(), su2, rng)) == 0);
  auto chain = chain_quiver();
  QuiverPoint cp = sample_level_set(chain, su2, rng);
  CHECK(moment_jacobian_rank(chain, su2, cp) == 3);
  auto pants = pants_quiver();
  QuiverPoint pp = sample_level_set(pants, su2, rng);
  CHECK(moment_jacobian_rank(pants, su2, pp) == 3);
}

TEST_CASE("gluing") {
  auto seg = segment_quiver();
  Quiver chain = glue(seg, seg, {{"out1", "in1"}});
  QuiverInvariants ci = validate(chain);
  CHECK(ci.n_edges == 2);
  CHECK(ci.n_interior == 1);
  CHECK(ci.dim_units == 2);  // 2 + 2 - 2

  Quiver pc = glue(pants_quiver(), copants_quiver(), {{"out1", "in1"}});
  QuiverInvariants pci = validate(pc);
  CHECK(pci.genus == 0);
  CHECK(pci.m == 2);
  CHECK(pci.n == 2);

  Quiver cp = glue(copants_quiver(), pants_quiver(), {{"out1", "in1"}, {"out2", "in2"}});
  QuiverInvariants cpi = validate(cp);
  CHECK(cpi.genus == 1);
  CHECK(cpi.m == 1);
  CHECK(cpi.n == 1);
  CHECK(cpi.dim_units == 4);

  // dimension law on random pairs
  for (int k = 0; k < 50; ++k) {
    Rng rng(21, k);
    Quiver q1 = random_quiver(rng, 6), q2 = random_quiver(rng, 6);
    BoundarySplit b1 = boundary_split(q1), b2 = boundary_split(q2);
    if (b1.outgoing.empty() || b1.outgoing.size() > b2.incoming.size()) continue;
    std::vector<std::pair<std::string, std::string>> match;
    std::sort(b1.outgoing.begin(), b1.outgoing.end());
    std::sort(b2.incoming.begin(), b2.incoming.end());
    for (std::size_t i = 0; i < b1.outgoing.size(); ++i)
      match.emplace_back(b1.outgoing[i], b2.incoming[i]);
    Quiver g = glue(q1, q2, match);
    CHECK(validate(g).dim_units ==
          validate(q1).dim_units + validate(q2).dim_units - 2 * long(match.size()));
  }

  CHECK_THROWS_AS(glue(seg, seg, {{"in1", "in1"}}), InputError);
  CHECK_THROWS_AS(glue(seg, seg, std::vector<std::pair<std::string, std::string>>{}), InputError);
}

TEST_CASE("homotopy moves") {
  Quiver ch2;
  ch2.vertices = {"in1", "v1", "v2", "out1"};
  ch2.edges = {{"e01", "in1", "v1"}, {"e02", "v1", "v2"}, {"e03", "v2", "out1"}};
  Quiver c = contract_edge(ch2, "e02");
  QuiverInvariants ci = validate(c);
  CHECK(ci.n_edges == 2);
  CHECK(ci.n_interior == 1);
  CHECK(ci.dim_units == validate(ch2).dim_units);

  // theta quiver: contracting one double edge turns the other into a loop
  Quiver theta;
  theta.vertices = {"in1", "v1", "v2", "out1"};
  theta.edges = {{"e01", "in1", "v1"},
                 {"e02", "v1", "v2"},
                 {"e03", "v1", "v2"},
                 {"e04", "v2", "out1"}};
  QuiverInvariants ti = validate(theta);
  Quiver tc = contract_edge(theta, "e02");
  bool has_loop = false;
  for (const auto& e : tc.edges) has_loop |= (e.src == e.dst);
  CHECK(has_loop);
  QuiverInvariants tci = validate(tc);
  CHECK(tci.genus == ti.genus);
  CHECK(tci.m == ti.m);
  CHECK(tci.n == ti.n);
  CHECK(tci.dim_units == ti.dim_units);

  CHECK_THROWS_AS(contract_edge(ch2, "e01"), InputError);  // boundary endpoint
  Quiver loopy = tc;
  for (const auto& e : loopy.edges)
    if (e.src == e.dst) CHECK_THROWS_AS(contract_edge(loopy, e.id), InputError);

  // invariance over random contractions
  int done = 0;
  for (int k = 0; k < 400 && done < 200; ++k) {
    Rng rng(31, k);
    Quiver q = random_quiver(rng, 8);
    BoundarySplit bs = boundary_split(q);
    std::set<std::string> interior(bs.interior.begin(), bs.interior.end());
    std::string pick;
    for (const auto& e : q.edges)
      if (e.src != e.dst && interior.count(e.src) && interior.count(e.dst)) {
        pick = e.id;
        break;
      }
    if (pick.empty()) continue;
    QuiverInvariants before = validate(q);
    QuiverInvariants after = validate(contract_edge(q, pick));
    CHECK(after.m == before.m);
    CHECK(after.n == before.n);
    CHECK(after.genus == before.genus);
    CHECK(after.dim_units == before.dim_units);
    ++done;
  }
  CHECK(done == 200);

  // normalize terminates, preserves invariants, and is idempotent
  for (int k = 0; k < 50; ++k) {
    Rng rng(37, k);
    Quiver q = random_quiver(rng, 8);
    Quiver n1 = normalize(q);
    QuiverInvariants a = validate(q), b = validate(n1);
    CHECK(a.genus == b.genus);
    CHECK(a.dim_units == b.dim_units);
    Quiver n2 = normalize(n1);
    CHECK(n1.edges.size() == n2.edges.size());
    CHECK(n1.vertices.size() == n2.vertices.size());
    CHECK(int(q.edges.size()) - int(n1.edges.size()) <= int(q.edges.size()));
  }
}

TEST_CASE("remove boundary vertex") {
  auto seg = segment_quiver();
  Quiver empty = remove_boundary_vertex(seg, "in1");
  CHECK(empty.empty());

  Quiver star = remove_boundary_vertex(pants_quiver(), "out1");
  QuiverInvariants si = validate(star);
  CHECK(si.n_edges == 2);
  CHECK(si.m == 2);
  CHECK(si.n == 0);
  CHECK(si.n_interior == 1);
  CHECK(validate(pants_quiver()).dim_units - si.dim_units == 2);

  Quiver seg2 = remove_boundary_vertex(chain_quiver(), "in1");
  QuiverInvariants s2 = validate(seg2);
  CHECK(s2.n_edges == 1);
  CHECK(s2.n_interior == 0);

  CHECK_THROWS_AS(remove_boundary_vertex(pants_quiver(), "v"), InputError);
}

TEST_CASE("quiver JSON round trip") {
  Rng rng(77);
  for (int k = 0; k < 10; ++k) {
    Rng r2(77, k);
    Quiver q = random_quiver(r2, 6);
    Quiver back = quiver_from_json(quiver_to_json(q));
    CHECK(back.vertices == q.vertices);
    REQUIRE(back.edges.size() == q.edges.size());
    for (std::size_t i = 0; i < q.edges.size(); ++i) {
      CHECK(back.edges[i].id == q.edges[i].id);
      CHECK(back.edges[i].src == q.edges[i].src);
      CHECK(back.edges[i].dst == q.edges[i].dst);
    }
  }
  CHECK_THROWS_AS(quiver_from_json("{not json"), InputError);
  CHECK_THROWS_AS(quiver_from_json(R"({"vertices":["a"],"edges":[]})"), InputError);
}
