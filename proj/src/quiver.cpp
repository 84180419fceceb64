#include "qham/quiver.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace qham {

using nlohmann::json;

int Quiver::vertex_index(const std::string& v) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == v) return int(i);
  return -1;
}
int Quiver::degree_in(const std::string& v) const {
  int d = 0;
  for (const Edge& e : edges) d += (e.dst == v);
  return d;
}
int Quiver::degree_out(const std::string& v) const {
  int d = 0;
  for (const Edge& e : edges) d += (e.src == v);
  return d;
}

namespace {

void check_well_formed(const Quiver& q) {
  std::set<std::string> vs(q.vertices.begin(), q.vertices.end());
  if (vs.size() != q.vertices.size()) throw InputError("quiver: duplicate vertex names");
  std::set<std::string> es;
  for (const auto& e : q.edges) {
    if (!es.insert(e.id).second) throw InputError("quiver: duplicate edge id " + e.id);
    if (!vs.count(e.src) || !vs.count(e.dst))
      throw InputError("quiver: edge " + e.id + " references unknown vertex");
  }
  for (const auto& v : q.vertices)
    if (q.degree_in(v) + q.degree_out(v) == 0)
      throw InputError("quiver: isolated vertex " + v);
}

int edge_index(const Quiver& q, const std::string& id) {
  for (std::size_t i = 0; i < q.edges.size(); ++i)
    if (q.edges[i].id == id) return int(i);
  throw InputError("quiver: no edge " + id);
}

struct VertexFactor {
  int edge = 0;
  bool incoming = false;
};

// Incoming block then outgoing block, ascending edge id within each block.
std::vector<VertexFactor> vertex_factors(const Quiver& q, const std::string& v) {
  std::vector<std::pair<std::string, int>> in, out;
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    if (q.edges[i].dst == v) in.emplace_back(q.edges[i].id, int(i));
    if (q.edges[i].src == v) out.emplace_back(q.edges[i].id, int(i));
  }
  std::sort(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  std::vector<VertexFactor> f;
  for (auto& [id, i] : in) f.push_back({i, true});
  for (auto& [id, i] : out) f.push_back({i, false});
  return f;
}

CMat factor_value(const QuiverPoint& p, const VertexFactor& f) {
  const CMat& a = p.a[f.edge].m;
  const CMat& b = p.b[f.edge].m;
  if (f.incoming) return a * b * a.inverse();
  return b.inverse();
}

// d/deps of the factor under a -> a e^{eps xa}, b -> b e^{eps xb}.
CMat factor_derivative(const QuiverPoint& p, const VertexFactor& f, const CMat& xa,
                       const CMat& xb) {
  const CMat& a = p.a[f.edge].m;
  const CMat& b = p.b[f.edge].m;
  if (f.incoming) return a * (xa * b + b * xb - b * xa) * a.inverse();
  return -xb * b.inverse();
}

struct ProductDiff {
  CMat value;
  CMat deriv;
};

ProductDiff product_with_derivative(const QuiverPoint& p, const std::vector<VertexFactor>& fs,
                                    const std::vector<CMat>& xa, const std::vector<CMat>& xb,
                                    int msize) {
  ProductDiff r{CMat::Identity(msize, msize), CMat::Zero(msize, msize)};
  for (const VertexFactor& f : fs) {
    CMat m = factor_value(p, f);
    CMat dm = factor_derivative(p, f, xa[f.edge], xb[f.edge]);
    r.deriv = r.deriv * m + r.value * dm;
    r.value = r.value * m;
  }
  return r;
}

CMat product_value(const QuiverPoint& p, const std::vector<VertexFactor>& fs, int msize) {
  CMat v = CMat::Identity(msize, msize);
  for (const VertexFactor& f : fs) v = v * factor_value(p, f);
  return v;
}

std::vector<std::vector<int>> adjacency(const Quiver& q) {
  std::vector<std::vector<int>> adj(q.vertices.size());
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    int s = q.vertex_index(q.edges[i].src), t = q.vertex_index(q.edges[i].dst);
    adj[s].push_back(int(i));
    if (t != s) adj[t].push_back(int(i));
  }
  return adj;
}

int count_components(const Quiver& q) {
  int nv = int(q.vertices.size());
  if (nv == 0) return 0;
  auto adj = adjacency(q);
  std::vector<int> seen(nv, 0);
  int comps = 0;
  for (int s = 0; s < nv; ++s) {
    if (seen[s]) continue;
    ++comps;
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int ei : adj[v]) {
        for (const std::string* w : {&q.edges[ei].src, &q.edges[ei].dst}) {
          int wi = q.vertex_index(*w);
          if (!seen[wi]) {
            seen[wi] = 1;
            queue.push_back(wi);
          }
        }
      }
    }
  }
  return comps;
}

}  // namespace

BoundarySplit boundary_split(const Quiver& q) {
  check_well_formed(q);
  BoundarySplit s;
  for (const auto& v : q.vertices) {
    int din = q.degree_in(v), dout = q.degree_out(v);
    if (din + dout == 1) {
      if (dout == 1)
        s.incoming.push_back(v);
      else
        s.outgoing.push_back(v);
    } else {
      s.interior.push_back(v);
    }
  }
  return s;
}

bool is_connected(const Quiver& q) { return count_components(q) <= 1; }

QuiverInvariants validate(const Quiver& q) {
  BoundarySplit s = boundary_split(q);
  QuiverInvariants inv;
  inv.n_edges = int(q.edges.size());
  inv.n_interior = int(s.interior.size());
  inv.m = int(s.incoming.size());
  inv.n = int(s.outgoing.size());
  inv.components = count_components(q);
  inv.genus = inv.n_edges - inv.n_interior - inv.m - inv.n + inv.components;
  inv.dim_units = 2LL * (inv.n_edges - inv.n_interior);
  return inv;
}

QuiverPoint random_quiver_point(const Quiver& q, const LieGroupModel& model, Rng& rng,
                                double scale) {
  QuiverPoint p;
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    p.a.push_back(random_group_element(model, rng, scale));
    p.b.push_back(random_group_element(model, rng, scale));
  }
  return p;
}

QuiverTangent random_quiver_tangent(const Quiver& q, const LieGroupModel& model, Rng& rng) {
  QuiverTangent t;
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    t.xi_a.push_back(random_algebra(model, rng));
    t.xi_b.push_back(random_algebra(model, rng));
  }
  return t;
}

std::map<std::string, GroupElement> fused_moment(const Quiver& q, const LieGroupModel& model,
                                                 const QuiverPoint& p) {
  check_well_formed(q);
  BoundarySplit s = boundary_split(q);
  std::map<std::string, GroupElement> mu;
  for (const auto& v : s.interior)
    mu.emplace(v, GroupElement{model, product_value(p, vertex_factors(q, v), model.matrix_size())});
  return mu;
}

std::map<std::string, GroupElement> residual_moment(const Quiver& q, const LieGroupModel& model,
                                                    const QuiverPoint& p) {
  // The vertex group at s(e) pairs with the b^-1 moment component and the one
  // at t(e) with Ad_a b (the action embedding sends g to (g_{t(e)}, g_{s(e)})
  // per edge); only this assignment is invariant under the interior action.
  BoundarySplit s = boundary_split(q);
  std::map<std::string, GroupElement> nu;
  for (const auto& v : s.incoming) {
    auto fs = vertex_factors(q, v);  // unique edge, v = s(e)
    int e = fs.at(0).edge;
    nu.emplace(v, GroupElement{model, p.b[e].m.inverse()});
  }
  for (const auto& v : s.outgoing) {
    auto fs = vertex_factors(q, v);  // unique edge, v = t(e)
    int e = fs.at(0).edge;
    nu.emplace(v, GroupElement{model, p.a[e].m * p.b[e].m * p.a[e].m.inverse()});
  }
  return nu;
}

double level_set_residual(const Quiver& q, const LieGroupModel& model, const QuiverPoint& p) {
  double worst = 0;
  CMat id = CMat::Identity(model.matrix_size(), model.matrix_size());
  for (auto& [v, g] : fused_moment(q, model, p)) worst = std::max(worst, (g.m - id).norm());
  return worst;
}

double fused_form(const Quiver& q, const LieGroupModel& model, const QuiverPoint& p,
                  const QuiverTangent& t1, const QuiverTangent& t2) {
  check_well_formed(q);
  int msize = model.matrix_size();
  double total = 0;
  // per-edge double forms in left trivialization
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    RMat adb = Ad_matrix(p.b[e]);
    const RVec &xa = t1.xi_a[e], &xb = t1.xi_b[e];
    const RVec &ya = t2.xi_a[e], &yb = t2.xi_b[e];
    double term1 = (adb * xa).dot(ya) - (adb * ya).dot(xa);
    double term2 = xa.dot(yb + adb * yb) - ya.dot(xb + adb * xb);
    total += 0.5 * (term1 + term2);
  }
  // fusion correction per interior vertex (exact differentials)
  std::vector<CMat> xa1(q.edges.size()), xb1(q.edges.size()), xa2(q.edges.size()),
      xb2(q.edges.size());
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    xa1[e] = model.matrix(t1.xi_a[e]);
    xb1[e] = model.matrix(t1.xi_b[e]);
    xa2[e] = model.matrix(t2.xi_a[e]);
    xb2[e] = model.matrix(t2.xi_b[e]);
  }
  BoundarySplit s = boundary_split(q);
  for (const auto& v : s.interior) {
    auto fs = vertex_factors(q, v);
    std::vector<VertexFactor> fin, fout;
    for (const VertexFactor& f : fs) (f.incoming ? fin : fout).push_back(f);
    if (fin.empty() || fout.empty()) continue;  // one of the pullbacks vanishes
    ProductDiff in1 = product_with_derivative(p, fin, xa1, xb1, msize);
    ProductDiff in2 = product_with_derivative(p, fin, xa2, xb2, msize);
    ProductDiff out1 = product_with_derivative(p, fout, xa1, xb1, msize);
    ProductDiff out2 = product_with_derivative(p, fout, xa2, xb2, msize);
    RVec lin1 = model.coords(in1.value.inverse() * in1.deriv);
    RVec lin2 = model.coords(in2.value.inverse() * in2.deriv);
    RVec rout1 = model.coords(out1.deriv * out1.value.inverse());
    RVec rout2 = model.coords(out2.deriv * out2.value.inverse());
    total += 0.5 * (lin1.dot(rout2) - lin2.dot(rout1));
  }
  return total;
}

QuiverPoint vertex_action(const Quiver& q, const LieGroupModel& model,
                          const std::map<std::string, GroupElement>& g, const QuiverPoint& p) {
  auto lookup = [&](const std::string& v) -> CMat {
    auto it = g.find(v);
    if (it == g.end()) return CMat::Identity(model.matrix_size(), model.matrix_size());
    return it->second.m;
  };
  QuiverPoint out = p;
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    CMat gs = lookup(q.edges[e].src), gt = lookup(q.edges[e].dst);
    out.a[e].m = gt * p.a[e].m * gs.inverse();
    out.b[e].m = gs * p.b[e].m * gs.inverse();
  }
  return out;
}

namespace {

struct SpanningTree {
  std::vector<int> parent_edge;  // per vertex, -1 at root
  std::vector<int> depth;
  std::vector<int> order;        // BFS order of vertex indices
};

SpanningTree bfs_tree(const Quiver& q, int root) {
  int nv = int(q.vertices.size());
  auto adj = adjacency(q);
  SpanningTree t;
  t.parent_edge.assign(nv, -2);
  t.depth.assign(nv, -1);
  t.parent_edge[root] = -1;
  t.depth[root] = 0;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    for (int ei : adj[v]) {
      const auto& e = q.edges[ei];
      int s = q.vertex_index(e.src), d = q.vertex_index(e.dst);
      if (s == d) continue;
      int w = (s == v) ? d : s;
      if (t.depth[w] < 0) {
        t.depth[w] = t.depth[v] + 1;
        t.parent_edge[w] = ei;
        queue.push_back(w);
      }
    }
  }
  return t;
}

}  // namespace

QuiverPoint sample_level_set(const Quiver& q, const LieGroupModel& model, Rng& rng,
                             std::optional<std::string> root) {
  check_well_formed(q);
  if (!is_connected(q)) throw DomainError("sample_level_set: quiver is disconnected");
  BoundarySplit bs = boundary_split(q);
  std::vector<std::string> boundary = bs.incoming;
  boundary.insert(boundary.end(), bs.outgoing.begin(), bs.outgoing.end());
  std::sort(boundary.begin(), boundary.end());
  if (boundary.empty()) throw DomainError("sample_level_set: quiver has no boundary");
  std::string root_name = root.value_or(boundary.front());
  int root_idx = q.vertex_index(root_name);
  if (root_idx < 0) throw InputError("sample_level_set: unknown root vertex " + root_name);
  SpanningTree tree = bfs_tree(q, root_idx);
  for (int d : tree.depth)
    if (d < 0) throw DomainError("sample_level_set: quiver is disconnected");

  QuiverPoint p = random_quiver_point(q, model, rng);
  std::set<std::string> interior(bs.interior.begin(), bs.interior.end());

  // interior vertices, deepest first; the tree-parent edge is solved last
  std::vector<int> todo;
  for (int v : tree.order)
    if (interior.count(q.vertices[v])) todo.push_back(v);
  std::stable_sort(todo.begin(), todo.end(),
                   [&](int a, int b) { return tree.depth[a] > tree.depth[b]; });
  int msize = model.matrix_size();
  for (int vi : todo) {
    const std::string& v = q.vertices[vi];
    int fe = tree.parent_edge[vi];
    auto fs = vertex_factors(q, v);
    int pos = -1;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].edge == fe) {
        pos = int(i);
        break;
      }
    if (pos < 0) throw QhamError("sample_level_set: parent edge is not incident to its vertex");
    // cyclic rotation placing the parent factor last: prefix = after . before
    CMat prefix = CMat::Identity(msize, msize);
    for (std::size_t i = pos + 1; i < fs.size(); ++i) prefix = prefix * factor_value(p, fs[i]);
    for (int i = 0; i < pos; ++i) prefix = prefix * factor_value(p, fs[i]);
    if (fs[pos].incoming) {
      // Ad_{a_f} b_f = prefix^-1
      const CMat& a = p.a[fe].m;
      p.b[fe].m = a.inverse() * prefix.inverse() * a;
    } else {
      // b_f^-1 = prefix^-1
      p.b[fe].m = prefix;
    }
  }
  return p;
}

StabilizerResult stabilizer_propagate(const Quiver& q, const LieGroupModel& model,
                                      const QuiverPoint& p) {
  check_well_formed(q);
  BoundarySplit bs = boundary_split(q);
  if (bs.incoming.empty() && bs.outgoing.empty())
    throw DomainError("stabilizer_propagate: closed quiver, no boundary to seed from");
  if (!is_connected(q)) throw DomainError("stabilizer_propagate: quiver is disconnected");
  int nv = int(q.vertices.size());
  int msize = model.matrix_size();
  std::vector<CMat> g(nv);
  std::vector<int> known(nv, 0);
  for (const auto& v : bs.incoming) {
    g[q.vertex_index(v)] = CMat::Identity(msize, msize);
    known[q.vertex_index(v)] = 1;
  }
  for (const auto& v : bs.outgoing) {
    g[q.vertex_index(v)] = CMat::Identity(msize, msize);
    known[q.vertex_index(v)] = 1;
  }
  // propagate g_{t(e)} = a_e g_{s(e)} a_e^-1 until fixed
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
      int s = q.vertex_index(q.edges[e].src), d = q.vertex_index(q.edges[e].dst);
      const CMat& a = p.a[e].m;
      if (known[s] && !known[d]) {
        g[d] = a * g[s] * a.inverse();
        known[d] = 1;
        progress = true;
      } else if (known[d] && !known[s]) {
        g[s] = a.inverse() * g[d] * a;
        known[s] = 1;
        progress = true;
      }
    }
  }
  for (int v = 0; v < nv; ++v)
    if (!known[v]) throw DomainError("stabilizer_propagate: vertex unreachable from boundary");

  StabilizerResult r;
  CMat id = CMat::Identity(msize, msize);
  std::set<std::string> interior(bs.interior.begin(), bs.interior.end());
  for (int v = 0; v < nv; ++v)
    if (interior.count(q.vertices[v])) {
      r.assignment.emplace(q.vertices[v], GroupElement{model, g[v]});
      r.max_identity_distance = std::max(r.max_identity_distance, (g[v] - id).norm());
    }
  // verify (g_{t(e)} a_e g_{s(e)}^-1, Ad_{g_{s(e)}} b_e) = (a_e, b_e)
  for (std::size_t e = 0; e < q.edges.size(); ++e) {
    int s = q.vertex_index(q.edges[e].src), d = q.vertex_index(q.edges[e].dst);
    double r1 = (g[d] * p.a[e].m * g[s].inverse() - p.a[e].m).norm();
    double r2 = (g[s] * p.b[e].m * g[s].inverse() - p.b[e].m).norm();
    r.max_equation_residual = std::max({r.max_equation_residual, r1, r2});
  }
  return r;
}

int moment_jacobian_rank(const Quiver& q, const LieGroupModel& model, const QuiverPoint& p,
                         double svd_tol) {
  BoundarySplit bs = boundary_split(q);
  int d = model.dim();
  int msize = model.matrix_size();
  int rows = int(bs.interior.size()) * d;
  int cols = 2 * int(q.edges.size()) * d;
  if (rows == 0) return 0;
  RMat jac = RMat::Zero(rows, cols);
  int row0 = 0;
  for (const auto& v : bs.interior) {
    auto fs = vertex_factors(q, v);
    CMat mu_inv = product_value(p, fs, msize).inverse();
    std::set<int> touched;
    for (const VertexFactor& f : fs) touched.insert(f.edge);
    for (int e : touched)
      for (int slot = 0; slot < 2; ++slot)
        for (int i = 0; i < d; ++i) {
          CMat basis = model.basis(i);
          CMat zero = CMat::Zero(msize, msize);
          // derivative of the vertex product in this single edge-slot direction;
          // loop edges contribute through both of their factor occurrences
          CMat deriv = CMat::Zero(msize, msize);
          CMat left = CMat::Identity(msize, msize);
          for (const VertexFactor& h : fs) {
            CMat m = factor_value(p, h);
            if (h.edge == e) {
              CMat dm = slot == 0 ? factor_derivative(p, h, basis, zero)
                                  : factor_derivative(p, h, zero, basis);
              deriv = deriv * m + left * dm;
            } else {
              deriv = deriv * m;
            }
            left = left * m;
          }
          jac.block(row0, (2 * e + slot) * d + i, d, 1) = model.coords(mu_inv * deriv);
        }
    row0 += d;
  }
  return numerical_rank(jac, svd_tol);
}

namespace {
std::string unique_name(const std::set<std::string>& taken, std::string base) {
  while (taken.count(base)) base += "'";
  return base;
}
}  // namespace

Quiver glue(const Quiver& q1, const Quiver& q2,
            const std::vector<std::pair<std::string, std::string>>& matching) {
  check_well_formed(q1);
  check_well_formed(q2);
  BoundarySplit b1 = boundary_split(q1), b2 = boundary_split(q2);
  std::set<std::string> out1(b1.outgoing.begin(), b1.outgoing.end());
  std::set<std::string> in2(b2.incoming.begin(), b2.incoming.end());
  std::set<std::string> used1, used2;
  for (auto& [v1, v2] : matching) {
    if (!out1.count(v1)) throw InputError("glue: " + v1 + " is not an outgoing boundary of q1");
    if (!in2.count(v2)) throw InputError("glue: " + v2 + " is not an incoming boundary of q2");
    if (!used1.insert(v1).second || !used2.insert(v2).second)
      throw InputError("glue: matching is not a bijection");
  }
  if (used1.size() != out1.size())
    throw InputError("glue: matching must cover the whole outgoing boundary of q1");

  Quiver out;
  std::set<std::string> vtaken;
  for (const auto& v : q1.vertices) {
    out.vertices.push_back(v);
    vtaken.insert(v);
  }
  std::map<std::string, std::string> rename2;  // q2 vertex -> new name
  for (auto& [v1, v2] : matching) rename2[v2] = v1;
  for (const auto& v : q2.vertices) {
    if (rename2.count(v)) continue;
    std::string nm = unique_name(vtaken, v);
    rename2[v] = nm;
    out.vertices.push_back(nm);
    vtaken.insert(nm);
  }
  std::set<std::string> etaken;
  for (const auto& e : q1.edges) {
    out.edges.push_back(e);
    etaken.insert(e.id);
  }
  for (const auto& e : q2.edges) {
    Quiver::Edge ne;
    ne.id = unique_name(etaken, e.id);
    etaken.insert(ne.id);
    ne.src = rename2.at(e.src);
    ne.dst = rename2.at(e.dst);
    out.edges.push_back(ne);
  }
  check_well_formed(out);
  return out;
}

Quiver contract_edge(const Quiver& q, const std::string& edge_id) {
  check_well_formed(q);
  int ei = edge_index(q, edge_id);
  const auto& e0 = q.edges[ei];
  if (e0.src == e0.dst) throw InputError("contract_edge: " + edge_id + " is a loop");
  BoundarySplit bs = boundary_split(q);
  std::set<std::string> interior(bs.interior.begin(), bs.interior.end());
  if (!interior.count(e0.src) || !interior.count(e0.dst))
    throw InputError("contract_edge: endpoints of " + edge_id + " must be interior");
  std::string v1 = e0.src, v2 = e0.dst;
  Quiver out;
  for (const auto& v : q.vertices)
    if (v != v2) out.vertices.push_back(v);
  for (const auto& e : q.edges) {
    if (e.id == edge_id) continue;
    Quiver::Edge ne = e;
    if (ne.src == v2) ne.src = v1;
    if (ne.dst == v2) ne.dst = v1;
    out.edges.push_back(ne);
  }
  check_well_formed(out);
  return out;
}

Quiver normalize(const Quiver& q) {
  Quiver cur = q;
  int guard = int(q.edges.size()) + 1;
  while (guard-- > 0) {
    BoundarySplit bs = boundary_split(cur);
    std::set<std::string> interior(bs.interior.begin(), bs.interior.end());
    std::string pick;
    for (const auto& e : cur.edges)
      if (e.src != e.dst && interior.count(e.src) && interior.count(e.dst)) {
        pick = e.id;
        break;
      }
    if (pick.empty()) return cur;
    cur = contract_edge(cur, pick);
  }
  throw QhamError("normalize: did not terminate within |E| contractions");
}

Quiver remove_boundary_vertex(const Quiver& q, const std::string& v0) {
  check_well_formed(q);
  BoundarySplit bs = boundary_split(q);
  bool is_boundary = false;
  for (const auto& v : bs.incoming) is_boundary |= (v == v0);
  for (const auto& v : bs.outgoing) is_boundary |= (v == v0);
  if (!is_boundary) throw InputError("remove_boundary_vertex: " + v0 + " is not a boundary vertex");
  Quiver out;
  std::string other;
  for (const auto& e : q.edges) {
    if (e.src == v0) {
      other = e.dst;
      continue;
    }
    if (e.dst == v0) {
      other = e.src;
      continue;
    }
    out.edges.push_back(e);
  }
  for (const auto& v : q.vertices) {
    if (v == v0) continue;
    // drop vertices isolated by the removal (degenerate result)
    bool touched = false;
    for (const auto& e : out.edges) touched |= (e.src == v || e.dst == v);
    if (touched) out.vertices.push_back(v);
  }
  if (!out.vertices.empty()) check_well_formed(out);
  return out;
}

Quiver segment_quiver() {
  Quiver q;
  q.vertices = {"in1", "out1"};
  q.edges = {{"e01", "in1", "out1"}};
  return q;
}
Quiver chain_quiver() {
  Quiver q;
  q.vertices = {"in1", "v", "out1"};
  q.edges = {{"e01", "in1", "v"}, {"e02", "v", "out1"}};
  return q;
}
Quiver pants_quiver() {
  Quiver q;
  q.vertices = {"in1", "in2", "v", "out1"};
  q.edges = {{"e01", "in1", "v"}, {"e02", "in2", "v"}, {"e03", "v", "out1"}};
  return q;
}
Quiver copants_quiver() {
  Quiver q;
  q.vertices = {"in1", "v", "out1", "out2"};
  q.edges = {{"e01", "in1", "v"}, {"e02", "v", "out1"}, {"e03", "v", "out2"}};
  return q;
}

Quiver star_quiver(int m, int n, int g) {
  if (m < 0 || n < 0 || g < 0) throw InputError("star_quiver: negative parameters");
  if (m + n + 2 * g < 2) throw InputError("star_quiver: the hub vertex would be a boundary vertex");
  Quiver q;
  q.vertices.push_back("v");
  int eid = 1;
  auto id = [&eid] { return "e" + std::string(eid < 10 ? "0" : "") + std::to_string(eid); };
  for (int i = 1; i <= m; ++i) {
    q.vertices.push_back("in" + std::to_string(i));
    q.edges.push_back({id(), "in" + std::to_string(i), "v"});
    ++eid;
  }
  for (int i = 1; i <= n; ++i) {
    q.vertices.push_back("out" + std::to_string(i));
    q.edges.push_back({id(), "v", "out" + std::to_string(i)});
    ++eid;
  }
  for (int i = 1; i <= g; ++i) {
    q.edges.push_back({id(), "v", "v"});
    ++eid;
  }
  return q;
}

Quiver random_quiver(Rng& rng, int max_vertices) {
  if (max_vertices < 2) throw InputError("random_quiver: need at least 2 vertices");
  for (int attempt = 0; attempt < 400; ++attempt) {
    int nv = rng.uniform_int(2, max_vertices);
    Quiver q;
    for (int i = 0; i < nv; ++i) q.vertices.push_back("v" + std::to_string(i));
    int eid = 0;
    auto push_edge = [&](int a, int b) {
      std::string id = "e" + std::string(eid < 10 ? "0" : "") + std::to_string(eid);
      ++eid;
      q.edges.push_back({id, q.vertices[a], q.vertices[b]});
    };
    for (int i = 1; i < nv; ++i) {
      int parent = rng.uniform_int(0, i - 1);
      if (rng.uniform_int(0, 1))
        push_edge(parent, i);
      else
        push_edge(i, parent);
    }
    int extra = rng.uniform_int(0, 3);
    for (int k = 0; k < extra && nv >= 2; ++k) {
      int a = rng.uniform_int(0, nv - 1), b = rng.uniform_int(0, nv - 1);
      if (a == b) continue;
      push_edge(a, b);
    }
    BoundarySplit bs = boundary_split(q);
    if (!bs.incoming.empty() || !bs.outgoing.empty()) return q;
  }
  throw QhamError("random_quiver: failed to generate a boundary quiver");
}

std::string quiver_to_json(const Quiver& q) {
  json j;
  j["vertices"] = q.vertices;
  j["edges"] = json::array();
  for (const auto& e : q.edges) j["edges"].push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  return j.dump(2);
}

Quiver quiver_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw InputError(std::string("quiver JSON parse error: ") + ex.what());
  }
  Quiver q;
  try {
    for (const auto& v : j.at("vertices")) q.vertices.push_back(v.get<std::string>());
    for (const auto& e : j.at("edges"))
      q.edges.push_back({e.at("id").get<std::string>(), e.at("src").get<std::string>(),
                         e.at("dst").get<std::string>()});
  } catch (const json::exception& ex) {
    throw InputError(std::string("quiver JSON schema error: ") + ex.what());
  }
  check_well_formed(q);
  return q;
}

}  // namespace qham
