#pragma once

#include <array>
#include <string>
#include <vector>

#include "qham/lie_group.hpp"

namespace qham {

enum class FaceAmbient { Alcove, Chamber };

// A face of the fundamental alcove (respectively of the Weyl chamber) of a
// simply connected rank <= 2 model, with the stabilizer data of its
// exponential (respectively linear) representative.
struct Face {
  FaceAmbient ambient = FaceAmbient::Alcove;
  std::string id;
  int dim = 0;
  std::string stabilizer_type;  // "G" | "T" | "A1xU1"
  int dim_stabilizer = 0;
  int dim_commutator = 0;
  bool contains_origin_in_closure = false;
  RVec representative;               // full algebra coordinates
  RVec rep_torus;                    // torus coordinates
  std::vector<int> active;           // indices of active constraints
  std::vector<int> vanishing_roots;  // positive-root indices in the stabilizer
  // matrix index pairs of the vanishing positive roots (su(n) blocks)
  std::vector<std::array<int, 2>> root_blocks;
};

// Torus directions, positive roots as linear functionals on torus
// coordinates, and the alcove/chamber constraint systems.
struct RootDatum {
  LieGroupModel model;
  int rank = 0;
  std::vector<int> torus_basis;          // indices into the model basis
  std::vector<RVec> positive_roots;      // functionals on torus coords
  std::vector<std::array<int, 2>> root_pairs;  // diagonal index pairs (j,k)
  std::vector<int> simple_roots;         // indices into positive_roots
  int highest_root = -1;                 // index into positive_roots
};

RootDatum root_datum(const LieGroupModel& model);  // su2 | su3 only

std::vector<Face> alcove_faces(const LieGroupModel& model);
std::vector<Face> chamber_faces(const LieGroupModel& model);

// The unique chamber face with the same active simple-root set; defined for
// alcove faces whose closure contains the origin.
Face tau_of(const LieGroupModel& model, const Face& sigma);

RVec torus_to_full(const LieGroupModel& model, const RVec& theta);

enum class ImplodedSpace { DoubleImplosion, CotangentImplosion };

struct Stratum {
  Face face;
  std::string kind;  // "multiplicative" | "additive"
  int dim = 0;
  std::string deformation_target;  // cotangent stratum id or "EMPTY"
};
std::vector<Stratum> stratum_inventory(const LieGroupModel& model, ImplodedSpace space);

// lambda^sigma evaluated on tangent data (u_i in g, eta_i in t + z(g_sigma)):
// 1/2 <(Ad_{e^x} - Ad_{e^{-x}}) u1, u2> + <u1,eta2> - <u2,eta1>.
double lambda_sigma(const LieGroupModel& model, const Face& face, const RVec& x, const RVec& u1,
                    const RVec& eta1, const RVec& u2, const RVec& eta2);

// omega^tau: <u1,v2> - <u2,v1> + <x,[u1,u2]>.
double omega_tau(const LieGroupModel& model, const Face& face, const RVec& x, const RVec& u1,
                 const RVec& v1, const RVec& u2, const RVec& v2);

// The rescaled stratum family form (1/t) lambda^sigma in the chart
// (g, x, t) -> (g, exp(tx), t); its t = 0 branch is omega^{tau_sigma}.
double stratum_family_form(const LieGroupModel& model, const Face& sigma, const RVec& x, double t,
                           const RVec& y1, const RVec& z1, const RVec& y2, const RVec& z2);

// Largest symmetric interval (-T, T) around [0,1] on which d exp_{tx} stays
// invertible at the face representative.
double family_interval_bound(const LieGroupModel& model, const Face& face);

// The implosion relation on a fixed mu_2-fiber: (a,b) ~ (a',b) iff
// a^{-1} a' lies in [G_b, G_b]; decided by the face type of b.
bool implosion_equiv(const LieGroupModel& model, const GroupElement& a, const GroupElement& b,
                     const GroupElement& a2, const GroupElement& b2, double tol = 1e-8);

struct MasterStratum {
  std::vector<std::string> faces;  // chosen alcove face per implosion factor
  long long dim = 0;
};
struct MasterInventory {
  int genus = 0;
  int r = 0;
  long long dim_g_units = 0;  // 2g dim G contribution
  std::vector<MasterStratum> strata;
  long long top_dim = 0;
  std::vector<MasterStratum> additive_strata;  // the N(Sigma)_impl counterpart
  long long additive_top_dim = 0;
};
MasterInventory master_moduli_dims(const LieGroupModel& model, int genus, int r);

}  // namespace qham
