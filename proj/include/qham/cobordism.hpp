#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qham/lie_group.hpp"
#include "qham/quiver.hpp"

namespace qham {

// Normal form of a 2D cobordism: per connected component the genus and the
// source/target circle positions it covers. Closed components (no legs) only
// arise from composition and are flagged.
struct CobComponent {
  int genus = 0;
  std::vector<int> in_legs;   // positions in the source object
  std::vector<int> out_legs;  // positions in the target object
  bool closed() const { return in_legs.empty() && out_legs.empty(); }
  int euler_characteristic() const {
    return 2 - 2 * genus - int(in_legs.size()) - int(out_legs.size());
  }
};

struct CobMorphism {
  int n_in = 0;
  int n_out = 0;
  std::vector<CobComponent> components;
};

// Canonical normal form: sorted legs, components sorted lexicographically.
CobMorphism canonical(CobMorphism m);
bool same_morphism(const CobMorphism& a, const CobMorphism& b);
std::string morphism_signature(const CobMorphism& m);

// cup: 1->0, cap: 0->1, pants: 2->1, copants: 1->2, cyl: 1->1, swap: 2->2.
CobMorphism generator(const std::string& name);
CobMorphism identity_morphism(int n);

CobMorphism tensor(const CobMorphism& m1, const CobMorphism& m2);
// compose(m2, m1) = m2 after m1; throws on boundary mismatch.
CobMorphism compose(const CobMorphism& m2, const CobMorphism& m1);

// Recursive-descent parser for
//   expr := term (';' term)*        (';' composes left to right)
//   term := factor ('*' factor)*    ('*' tensors)
//   factor := generator | 'id' NAT | '(' expr ')'
// Errors carry 1-based line/column positions.
struct ParseError : QhamError {
  int line, column;
  ParseError(const std::string& msg, int l, int c)
      : QhamError(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l),
        column(c) {}
};
CobMorphism parse_expression(const std::string& text);

struct QHamComponentRecord {
  int genus = 0;
  int m = 0;
  int n = 0;
  bool closed = false;
  bool is_point = false;     // cup/cap-type components, N = {*}
  long long dim = 0;         // 2(g+m+n-1) dim G for open components
  std::optional<Quiver> realizing_quiver;
};

struct QHamRecord {
  std::string source_group;
  std::string target_group;
  std::vector<QHamComponentRecord> components;
  std::vector<std::string> composition_log;  // nonempty only for composites
};

QHamRecord n_functor(const CobMorphism& m, const LieGroupModel& model);

// Total dimension after fusing and reducing along k glued circles.
long long reduction_dim(const QHamRecord& r1, const QHamRecord& r2, int k,
                        const LieGroupModel& model);

struct FunctorialityReport {
  bool pass = true;
  std::vector<std::string> lines;
  QHamRecord composite_record;
};
// Checks that n_functor(compose(m2,m1)) matches the fusion-then-reduction
// dimension bookkeeping componentwise along the gluing union-find.
FunctorialityReport functoriality_check(const CobMorphism& m1, const CobMorphism& m2,
                                        const LieGroupModel& model);

struct RelationsReport {
  bool pass = true;
  std::vector<std::pair<std::string, bool>> relations;
  std::vector<std::string> failures;
};
RelationsReport verify_relations(const LieGroupModel& model);

// Random normal-form morphism; every component keeps at least one leg.
CobMorphism random_morphism(Rng& rng, int max_circles = 4, int max_genus = 2);

}  // namespace qham
