#include "qham/cobordism.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qham {

namespace {

void check_morphism(const CobMorphism& m) {
  std::vector<int> in_cover(m.n_in, 0), out_cover(m.n_out, 0);
  for (const auto& c : m.components) {
    if (c.genus < 0) throw InputError("cobordism: negative genus");
    for (int i : c.in_legs) {
      if (i < 0 || i >= m.n_in) throw InputError("cobordism: source leg out of range");
      ++in_cover[i];
    }
    for (int i : c.out_legs) {
      if (i < 0 || i >= m.n_out) throw InputError("cobordism: target leg out of range");
      ++out_cover[i];
    }
  }
  for (int c : in_cover)
    if (c != 1) throw InputError("cobordism: source positions must be covered exactly once");
  for (int c : out_cover)
    if (c != 1) throw InputError("cobordism: target positions must be covered exactly once");
}

}  // namespace

CobMorphism canonical(CobMorphism m) {
  for (auto& c : m.components) {
    std::sort(c.in_legs.begin(), c.in_legs.end());
    std::sort(c.out_legs.begin(), c.out_legs.end());
  }
  std::sort(m.components.begin(), m.components.end(),
            [](const CobComponent& a, const CobComponent& b) {
              if (a.in_legs != b.in_legs) return a.in_legs < b.in_legs;
              if (a.out_legs != b.out_legs) return a.out_legs < b.out_legs;
              return a.genus < b.genus;
            });
  return m;
}

bool same_morphism(const CobMorphism& a, const CobMorphism& b) {
  CobMorphism ca = canonical(a), cb = canonical(b);
  if (ca.n_in != cb.n_in || ca.n_out != cb.n_out) return false;
  if (ca.components.size() != cb.components.size()) return false;
  for (std::size_t i = 0; i < ca.components.size(); ++i) {
    const auto &x = ca.components[i], &y = cb.components[i];
    if (x.genus != y.genus || x.in_legs != y.in_legs || x.out_legs != y.out_legs) return false;
  }
  return true;
}

std::string morphism_signature(const CobMorphism& m) {
  CobMorphism c = canonical(m);
  std::ostringstream os;
  os << c.n_in << "->" << c.n_out << "{";
  for (const auto& comp : c.components) {
    os << "(g" << comp.genus << ";in";
    for (int i : comp.in_legs) os << " " << i;
    os << ";out";
    for (int i : comp.out_legs) os << " " << i;
    os << ")";
  }
  os << "}";
  return os.str();
}

CobMorphism generator(const std::string& name) {
  CobMorphism m;
  if (name == "cup") {
    m.n_in = 1;
    m.n_out = 0;
    m.components = {{0, {0}, {}}};
  } else if (name == "cap") {
    m.n_in = 0;
    m.n_out = 1;
    m.components = {{0, {}, {0}}};
  } else if (name == "pants") {
    m.n_in = 2;
    m.n_out = 1;
    m.components = {{0, {0, 1}, {0}}};
  } else if (name == "copants") {
    m.n_in = 1;
    m.n_out = 2;
    m.components = {{0, {0}, {0, 1}}};
  } else if (name == "cyl") {
    m.n_in = 1;
    m.n_out = 1;
    m.components = {{0, {0}, {0}}};
  } else if (name == "swap") {
    m.n_in = 2;
    m.n_out = 2;
    m.components = {{0, {0}, {1}}, {0, {1}, {0}}};
  } else {
    throw InputError("unknown generator: " + name);
  }
  return m;
}

CobMorphism identity_morphism(int n) {
  if (n < 0) throw InputError("identity_morphism: negative arity");
  CobMorphism m;
  m.n_in = m.n_out = n;
  for (int i = 0; i < n; ++i) m.components.push_back({0, {i}, {i}});
  return m;
}

CobMorphism tensor(const CobMorphism& m1, const CobMorphism& m2) {
  CobMorphism m;
  m.n_in = m1.n_in + m2.n_in;
  m.n_out = m1.n_out + m2.n_out;
  m.components = m1.components;
  for (CobComponent c : m2.components) {
    for (int& i : c.in_legs) i += m1.n_in;
    for (int& i : c.out_legs) i += m1.n_out;
    m.components.push_back(std::move(c));
  }
  return m;
}

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int a) { return up[a] == a ? a : up[a] = find(up[a]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace

CobMorphism compose(const CobMorphism& m2, const CobMorphism& m1) {
  check_morphism(m1);
  check_morphism(m2);
  if (m1.n_out != m2.n_in)
    throw InputError("compose: boundary mismatch (target " + std::to_string(m1.n_out) +
                     " vs source " + std::to_string(m2.n_in) + ")");
  int n1 = int(m1.components.size()), n2 = int(m2.components.size());
  UnionFind uf(n1 + n2);
  std::vector<int> owner_out(m1.n_out, -1), owner_in(m2.n_in, -1);
  for (int i = 0; i < n1; ++i)
    for (int p : m1.components[i].out_legs) owner_out[p] = i;
  for (int j = 0; j < n2; ++j)
    for (int p : m2.components[j].in_legs) owner_in[p] = j;
  for (int p = 0; p < m1.n_out; ++p) uf.unite(owner_out[p], n1 + owner_in[p]);

  CobMorphism out;
  out.n_in = m1.n_in;
  out.n_out = m2.n_out;
  std::vector<int> chis(n1 + n2);
  for (int i = 0; i < n1; ++i) chis[i] = m1.components[i].euler_characteristic();
  for (int j = 0; j < n2; ++j) chis[n1 + j] = m2.components[j].euler_characteristic();

  std::vector<int> roots;
  for (int k = 0; k < n1 + n2; ++k)
    if (uf.find(k) == k) roots.push_back(k);
  for (int r : roots) {
    CobComponent c;
    int chi = 0;
    for (int k = 0; k < n1 + n2; ++k) {
      if (uf.find(k) != r) continue;
      chi += chis[k];
      if (k < n1)
        for (int p : m1.components[k].in_legs) c.in_legs.push_back(p);
      if (k >= n1)
        for (int p : m2.components[k - n1].out_legs) c.out_legs.push_back(p);
    }
    // gluing along circles preserves chi; genus from chi = 2 - 2g - m - n
    int mn = int(c.in_legs.size()) + int(c.out_legs.size());
    if ((chi + mn) % 2 != 0)
      throw QhamError("compose: Euler characteristic parity violation (internal bug)");
    c.genus = 1 - (chi + mn) / 2;
    if (c.genus < 0) throw QhamError("compose: negative genus (internal bug)");
    out.components.push_back(std::move(c));
  }
  return canonical(out);
}

namespace {

struct Lexer {
  std::string text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }
  bool eof() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
  void advance() {
    ++pos;
    ++col;
  }
};

struct Parser {
  Lexer lx;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lx.line, lx.col); }

  std::string word() {
    lx.skip_space();
    int l = lx.line, c = lx.col;
    std::string w;
    while (lx.pos < lx.text.size() &&
           (std::isalnum(static_cast<unsigned char>(lx.text[lx.pos])) || lx.text[lx.pos] == '_')) {
      w += lx.text[lx.pos];
      lx.advance();
    }
    if (w.empty()) throw ParseError("expected a generator name", l, c);
    return w;
  }

  CobMorphism factor() {
    char ch = lx.peek();
    if (ch == '(') {
      lx.advance();
      CobMorphism e = expr();
      if (lx.peek() != ')') fail("expected ')'");
      lx.advance();
      return e;
    }
    int l = lx.line, c = lx.col;
    std::string w = word();
    if (w == "id") {
      lx.skip_space();
      std::string num;
      while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) {
        num += lx.text[lx.pos];
        lx.advance();
      }
      if (num.empty()) fail("expected a number after 'id'");
      return identity_morphism(std::stoi(num));
    }
    try {
      return generator(w);
    } catch (const InputError&) {
      throw ParseError("unknown generator '" + w + "'", l, c);
    }
  }

  CobMorphism term() {
    CobMorphism m = factor();
    while (lx.peek() == '*') {
      lx.advance();
      m = tensor(m, factor());
    }
    return m;
  }

  CobMorphism expr() {
    CobMorphism m = term();
    while (lx.peek() == ';') {
      int l = lx.line, c = lx.col;
      lx.advance();
      CobMorphism next = term();
      try {
        m = compose(next, m);  // ';' composes left to right
      } catch (const InputError& e) {
        throw ParseError(std::string("composition mismatch: ") + e.what(), l, c);
      }
    }
    return m;
  }
};

}  // namespace

CobMorphism parse_expression(const std::string& text) {
  Parser p;
  p.lx.text = text;
  CobMorphism m = p.expr();
  if (!p.lx.eof()) p.fail("unexpected trailing input");
  check_morphism(m);
  return canonical(m);
}

QHamRecord n_functor(const CobMorphism& m, const LieGroupModel& model) {
  check_morphism(m);
  QHamRecord rec;
  rec.source_group = "G^" + std::to_string(m.n_in) + " (G=" + model.name() + ")";
  rec.target_group = "G^" + std::to_string(m.n_out) + " (G=" + model.name() + ")";
  for (const auto& c : canonical(m).components) {
    QHamComponentRecord r;
    r.genus = c.genus;
    r.m = int(c.in_legs.size());
    r.n = int(c.out_legs.size());
    r.closed = c.closed();
    if (r.closed) {
      rec.components.push_back(std::move(r));
      continue;
    }
    r.dim = 2LL * (r.genus + r.m + r.n - 1) * model.dim();
    if (r.m + r.n == 1 && r.genus == 0) {
      r.is_point = true;  // cup/cap: N = {*}, dim 0 (= 2(0+1+0-1) dim G)
    } else {
      r.realizing_quiver = star_quiver(r.m, r.n, r.genus);
    }
    rec.components.push_back(std::move(r));
  }
  return rec;
}

long long reduction_dim(const QHamRecord& r1, const QHamRecord& r2, int k,
                        const LieGroupModel& model) {
  long long total = 0;
  for (const auto& c : r1.components)
    if (!c.closed) total += c.dim;
  for (const auto& c : r2.components)
    if (!c.closed) total += c.dim;
  return total - 2LL * k * model.dim();
}

FunctorialityReport functoriality_check(const CobMorphism& m1, const CobMorphism& m2,
                                        const LieGroupModel& model) {
  FunctorialityReport rep;
  check_morphism(m1);
  check_morphism(m2);
  if (m1.n_out != m2.n_in) throw InputError("functoriality_check: records not composable");
  CobMorphism comp = compose(m2, m1);
  rep.composite_record = n_functor(comp, model);
  rep.composite_record.composition_log.push_back(
      "fuse " + morphism_signature(m1) + " with " + morphism_signature(m2) + ", reduce by G^" +
      std::to_string(m1.n_out));

  // componentwise bookkeeping along the union-find
  int n1 = int(m1.components.size()), n2 = int(m2.components.size());
  UnionFind uf(n1 + n2);
  std::vector<int> owner_out(m1.n_out, -1), owner_in(m2.n_in, -1);
  for (int i = 0; i < n1; ++i)
    for (int p : m1.components[i].out_legs) owner_out[p] = i;
  for (int j = 0; j < n2; ++j)
    for (int p : m2.components[j].in_legs) owner_in[p] = j;
  for (int p = 0; p < m1.n_out; ++p) uf.unite(owner_out[p], n1 + owner_in[p]);

  QHamRecord rec1 = n_functor(m1, model), rec2 = n_functor(m2, model);
  // map canonical component order back: recompute per union class directly
  CobMorphism cm1 = canonical(m1), cm2 = canonical(m2);
  // (canonical() sorts the same way for both callers, so indices align)
  for (int r = 0; r < n1 + n2; ++r) {
    if (uf.find(r) != r) continue;
    long long dims = 0;
    int glued = 0;
    std::vector<int> in_legs, out_legs;
    int genus_chi = 0;
    for (int k = 0; k < n1 + n2; ++k) {
      if (uf.find(k) != r) continue;
      const CobComponent& c = k < n1 ? cm1.components[k] : cm2.components[k - n1];
      genus_chi += c.euler_characteristic();
      if (k < n1) {
        dims += rec1.components[k].closed ? 0 : rec1.components[k].dim;
        glued += int(c.out_legs.size());
        for (int p : c.in_legs) in_legs.push_back(p);
      } else {
        dims += rec2.components[k - n1].closed ? 0 : rec2.components[k - n1].dim;
        for (int p : c.out_legs) out_legs.push_back(p);
      }
    }
    std::sort(in_legs.begin(), in_legs.end());
    std::sort(out_legs.begin(), out_legs.end());
    if (in_legs.empty() && out_legs.empty()) {
      rep.lines.push_back("closed composite component: no dimension claim");
      continue;
    }
    long long expected = dims - 2LL * glued * model.dim();
    // find the composite component with these legs
    long long actual = -1;
    for (std::size_t ci = 0; ci < comp.components.size(); ++ci) {
      if (comp.components[ci].in_legs == in_legs && comp.components[ci].out_legs == out_legs)
        actual = rep.composite_record.components[ci].dim;
    }
    std::ostringstream os;
    os << "class dims " << dims << " - 2*" << glued << "*dimG = " << expected << ", composite "
       << actual;
    rep.lines.push_back(os.str());
    if (expected != actual) rep.pass = false;
  }
  return rep;
}

RelationsReport verify_relations(const LieGroupModel& model) {
  (void)model;
  RelationsReport rep;
  auto pants = generator("pants"), copants = generator("copants"), cyl = generator("cyl");
  auto cup = generator("cup"), cap = generator("cap"), swp = generator("swap");
  auto id1 = identity_morphism(1), id2 = identity_morphism(2);
  auto check = [&rep](const std::string& name, const CobMorphism& lhs, const CobMorphism& rhs) {
    bool ok = same_morphism(lhs, rhs);
    rep.relations.emplace_back(name, ok);
    if (!ok) {
      rep.pass = false;
      rep.failures.push_back(name + ": " + morphism_signature(lhs) + " != " +
                             morphism_signature(rhs));
    }
  };
  check("associativity", compose(pants, tensor(pants, id1)), compose(pants, tensor(id1, pants)));
  check("coassociativity", compose(tensor(copants, id1), copants),
        compose(tensor(id1, copants), copants));
  check("unit-left", compose(pants, tensor(cap, id1)), cyl);
  check("unit-right", compose(pants, tensor(id1, cap)), cyl);
  check("counit-left", compose(tensor(cup, id1), copants), cyl);
  check("counit-right", compose(tensor(id1, cup), copants), cyl);
  check("commutativity", compose(pants, swp), pants);
  check("frobenius", compose(tensor(id1, pants), tensor(copants, id1)), compose(copants, pants));
  check("frobenius-dual", compose(tensor(pants, id1), tensor(id1, copants)),
        compose(copants, pants));
  check("swap-involution", compose(swp, swp), id2);
  check("cylinder-neutral", compose(cyl, cyl), cyl);
  return rep;
}

CobMorphism random_morphism(Rng& rng, int max_circles, int max_genus) {
  int m = rng.uniform_int(0, max_circles), n = rng.uniform_int(0, max_circles);
  if (m + n == 0) m = 1;
  CobMorphism out;
  out.n_in = m;
  out.n_out = n;
  // random partition into components, each keeping at least one leg
  int ncomp = rng.uniform_int(1, std::max(1, (m + n) / 2));
  std::vector<CobComponent> comps(ncomp);
  for (int i = 0; i < m; ++i) comps[rng.uniform_int(0, ncomp - 1)].in_legs.push_back(i);
  for (int i = 0; i < n; ++i) comps[rng.uniform_int(0, ncomp - 1)].out_legs.push_back(i);
  for (auto& c : comps) {
    c.genus = rng.uniform_int(0, max_genus);
    if (!c.closed()) out.components.push_back(c);
  }
  return canonical(out);
}

}  // namespace qham
