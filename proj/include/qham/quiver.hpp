#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qham/lie_group.hpp"

namespace qham {

// Finite oriented quiver. Vertices and edges carry string ids; edge order in
// vertex products is ascending lexicographic edge id (a recorded convention:
// the group is non-abelian, some order must be fixed).
struct Quiver {
  std::vector<std::string> vertices;
  struct Edge {
    std::string id;
    std::string src;
    std::string dst;
  };
  std::vector<Edge> edges;

  int vertex_index(const std::string& v) const;
  int degree_in(const std::string& v) const;
  int degree_out(const std::string& v) const;
  bool empty() const { return vertices.empty(); }
};

struct BoundarySplit {
  std::vector<std::string> incoming;  // degree 1, out-degree 1
  std::vector<std::string> outgoing;  // degree 1, in-degree 1
  std::vector<std::string> interior;
};

struct QuiverInvariants {
  int n_edges = 0;
  int n_interior = 0;
  int m = 0;          // |incoming boundary|
  int n = 0;          // |outgoing boundary|
  int components = 0;
  int genus = 0;      // sum over components of |E|-|int|-m-n+1
  long long dim_units = 0;  // dim N_G(Gamma) in units of dim G: 2(|E|-|int|)
};

BoundarySplit boundary_split(const Quiver& q);          // throws on isolated vertices
QuiverInvariants validate(const Quiver& q);             // throws on isolated vertices
bool is_connected(const Quiver& q);

// Group data attached to edges: a_e, b_e per edge, in edge-list order.
struct QuiverPoint {
  std::vector<GroupElement> a;
  std::vector<GroupElement> b;
};
QuiverPoint random_quiver_point(const Quiver& q, const LieGroupModel& model, Rng& rng,
                                double scale = 0.8);

// Tangent data in left trivialization, aligned with the edge list.
struct QuiverTangent {
  std::vector<RVec> xi_a;
  std::vector<RVec> xi_b;
};
QuiverTangent random_quiver_tangent(const Quiver& q, const LieGroupModel& model, Rng& rng);

// prod_{e in t^-1(v)} Ad_{a_e} b_e * prod_{e in s^-1(v)} b_e^-1 per interior
// vertex, ascending edge id within each block, incoming block first.
std::map<std::string, GroupElement> fused_moment(const Quiver& q, const LieGroupModel& model,
                                                 const QuiverPoint& p);

// Residual moment on the boundary: Ad_{a_e} b_e at incoming legs, b_e^-1 at
// outgoing legs.
std::map<std::string, GroupElement> residual_moment(const Quiver& q, const LieGroupModel& model,
                                                    const QuiverPoint& p);

double level_set_residual(const Quiver& q, const LieGroupModel& model, const QuiverPoint& p);

// Fused two-form: per-edge double forms plus the per-interior-vertex fusion
// correction 1/2 <(mu_in)^* theta^L ^ (mu_out)^* theta^R>. Differentials are
// exact (matrix product rule), so the value is exactly bilinear.
double fused_form(const Quiver& q, const LieGroupModel& model, const QuiverPoint& p,
                  const QuiverTangent& t1, const QuiverTangent& t2);

// Action of group elements at the vertices: g.(a,b)_e =
// (g_{t(e)} a_e g_{s(e)}^-1, Ad_{g_{s(e)}} b_e); boundary entries default to
// the identity.
QuiverPoint vertex_action(const Quiver& q, const LieGroupModel& model,
                          const std::map<std::string, GroupElement>& g, const QuiverPoint& p);

// Spanning-tree solver: random data except the tree-parent edges of interior
// vertices, which are solved (deepest first) to put the fused moment at the
// identity. Deterministic given (seed-derived rng, root choice).
QuiverPoint sample_level_set(const Quiver& q, const LieGroupModel& model, Rng& rng,
                             std::optional<std::string> root = std::nullopt);

// Stabilizer candidate by propagation g_{t(e)} = a_e g_{s(e)} a_e^-1 from the
// identity at the boundary; returns the assignment and the max residual of
// the full stabilizer equations.
struct StabilizerResult {
  std::map<std::string, GroupElement> assignment;  // interior vertices
  double max_equation_residual = 0;
  double max_identity_distance = 0;
};
StabilizerResult stabilizer_propagate(const Quiver& q, const LieGroupModel& model,
                                      const QuiverPoint& p);

// Rank of the exact left-trivialized Jacobian of the fused moment.
int moment_jacobian_rank(const Quiver& q, const LieGroupModel& model, const QuiverPoint& p,
                         double svd_tol = 1e-7);

Quiver glue(const Quiver& q1, const Quiver& q2,
            const std::vector<std::pair<std::string, std::string>>& matching);

Quiver contract_edge(const Quiver& q, const std::string& edge_id);
Quiver normalize(const Quiver& q);
Quiver remove_boundary_vertex(const Quiver& q, const std::string& v0);

Quiver segment_quiver();
Quiver chain_quiver();
Quiver pants_quiver();   // in1 -> v, in2 -> v, v -> out
Quiver copants_quiver(); // in -> v, v -> out1, v -> out2
// One interior vertex, m in-legs, n out-legs, g loops.
Quiver star_quiver(int m, int n, int g);

// Connected quiver with nonempty boundary, <= max_vertices vertices.
Quiver random_quiver(Rng& rng, int max_vertices = 8);

std::string quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const std::string& text);

}  // namespace qham
