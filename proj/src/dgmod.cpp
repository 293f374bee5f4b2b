#include "l2a/dgmod.hpp"

#include "l2a/linalg.hpp"

#include <functional>
#include <stdexcept>

namespace l2a {

CoeffType coefficient_type(const GeneratorSet& gs, const Monomial& m) {
  CoeffType t{0, 0};
  for (int g = 0; g < gs.size(); ++g) {
    if (!m[g]) continue;
    if (gs.degree(g) == 1)
      t.first += m[g];
    else if (gs.degree(g) == 2)
      t.second += m[g];
    else
      throw std::invalid_argument("coefficient types need generators of degree 1 and 2");
  }
  return t;
}

AlgebraElement type_part(const AlgebraElement& a, CoeffType t) {
  AlgebraElement out(a.genset());
  for (const auto& [m, c] : a.terms())
    if (coefficient_type(*a.genset(), m) == t) out.add_term(m, c);
  return out;
}

ModuleElement type_part(const ModuleElement& m, CoeffType t) {
  ModuleElement out(m.genset(), m.basis());
  for (const auto& [s, c] : m.terms()) out.add(s, type_part(c, t));
  return out;
}

std::map<CoeffType, ModuleElement> type_parts(const ModuleElement& m) {
  std::map<CoeffType, ModuleElement> out;
  for (const auto& [s, c] : m.terms())
    for (const auto& [mono, p] : c.terms()) {
      CoeffType t = coefficient_type(*c.genset(), mono);
      auto it = out.find(t);
      if (it == out.end()) it = out.emplace(t, ModuleElement(m.genset(), m.basis())).first;
      it->second.add(s, AlgebraElement::monomial(c.genset(), mono, p));
    }
  return out;
}

namespace {

CoeffType add_types(CoeffType a, CoeffType b) { return {a.first + b.first, a.second + b.second}; }

std::string type_str(CoeffType t) {
  return "(" + std::to_string(t.first) + "," + std::to_string(t.second) + ")";
}

// generator type of the single generator g
CoeffType gen_type(const GeneratorSet& gs, int g) {
  Monomial m(gs.size(), 0);
  m[g] = 1;
  return coefficient_type(gs, m);
}

// terms of v whose type is t0 + shift
AlgebraElement shifted_part(const AlgebraElement& v, CoeffType t0, CoeffType shift) {
  return type_part(v, add_types(t0, shift));
}

// sum_s d(xi_s) e_s
ModuleElement act_coeffs(const Derivation& d, const ModuleElement& m) {
  ModuleElement out(m.genset(), m.basis());
  for (const auto& [s, c] : m.terms()) out.add(s, d.apply(c));
  return out;
}

// sum_s (-1)^{deg |xi_s|} xi_s X(e_s)
ModuleElement act_linear(const std::vector<ModuleElement>& vals, const ModuleElement& m, int deg,
                         const BasisPtr& target) {
  ModuleElement out(m.genset(), target);
  for (const auto& [s, c] : m.terms())
    for (const auto& [k, ck] : c.homogeneous_parts()) {
      ModuleElement t = ck * vals.at(s);
      out += ((deg * k) % 2 != 0) ? -t : t;
    }
  return out;
}

}  // namespace

SplitQ split_q(const Derivation& q) {
  const auto& gs = q.genset();
  SplitQ s{Derivation(gs, 1), Derivation(gs, 1), Derivation(gs, 1)};
  for (int i = 0; i < gs->nvars(); ++i) s.q1.set_base(i, shifted_part(q.on_base(i), {0, 0}, {1, 0}));
  for (int g = 0; g < gs->size(); ++g) {
    CoeffType t = gen_type(*gs, g);
    const AlgebraElement& v = q.on_gen(g);
    s.q1.set_gen(g, shifted_part(v, t, {1, 0}));
    s.qd.set_gen(g, shifted_part(v, t, {-1, 1}));
    s.qw.set_gen(g, shifted_part(v, t, {3, -1}));
    if (s.q1.on_gen(g) + s.qd.on_gen(g) + s.qw.on_gen(g) != v)
      throw std::invalid_argument("homological vector field has a term outside Q1 + Qd + Qw");
  }
  return s;
}

// ---------------------------------------------------------------- operators

ModuleElement RepOperator::apply(const ModuleElement& m) const {
  ModuleElement out = zero();
  for (const auto& [s, c] : m.terms()) {
    ModuleElement qe = zero();
    qe.add(s, q.apply(c));
    out += qe;
  }
  return out + act_linear(values, m, 1, basis);
}

void RepOperator::validate() const {
  if (!basis) throw std::invalid_argument("operator without a basis");
  if (static_cast<int>(values.size()) != basis->size())
    throw std::invalid_argument("operator needs one value per basis section");
  for (int i = 0; i < basis->size(); ++i) {
    const auto& v = values[i];
    if (v.is_zero()) continue;
    if (!(*v.basis() == *basis)) throw std::invalid_argument("operator value over a foreign basis");
    for (int d : v.degrees())
      if (d != (*basis)[i].degree + 1)
        throw std::invalid_argument("D(" + (*basis)[i].name + ") has degree " + std::to_string(d));
  }
}

Report d_square_check(const RepOperator& d) {
  d.validate();
  Report r;
  r.check = "d_square";
  r.clause("D^2");
  for (int i = 0; i < d.basis->size(); ++i) {
    ModuleElement v = d.apply(d.values[i]);
    if (!v.is_zero()) r.fail("D^2", (*d.basis)[i].name, v.str());
  }
  return r;
}

// ---------------------------------------------------------------- components

const std::vector<std::string>& rep3_component_names() {
  static const std::vector<std::string> names{"partial", "nabla", "omega2",
                                              "phi0",    "omega3", "phi1"};
  return names;
}

CoeffType rep3_component_type(const std::string& name) {
  static const std::map<std::string, CoeffType> types{{"partial", {0, 0}}, {"nabla", {1, 0}},
                                                      {"omega2", {2, 0}},  {"phi0", {0, 1}},
                                                      {"omega3", {3, 0}},  {"phi1", {1, 1}}};
  auto it = types.find(name);
  if (it == types.end()) throw std::invalid_argument("unknown component " + name);
  return it->second;
}

const std::vector<ModuleElement>& Rep3Data::comp(const std::string& name) const {
  auto it = comps.find(name);
  if (it == comps.end()) throw std::invalid_argument("missing component " + name);
  return it->second;
}

Rep3Data Rep3Data::zero(const Derivation& q, BasisPtr basis) {
  Rep3Data c{q, basis, {}};
  for (const auto& n : rep3_component_names())
    c.comps[n] = std::vector<ModuleElement>(basis->size(), ModuleElement(q.genset(), basis));
  return c;
}

RepOperator operator_from_components(const Rep3Data& c) {
  RepOperator d{c.q, c.basis, std::vector<ModuleElement>(c.basis->size(),
                                                       ModuleElement(c.genset(), c.basis))};
  for (const auto& n : rep3_component_names()) {
    const auto& vals = c.comp(n);
    CoeffType t = rep3_component_type(n);
    for (int i = 0; i < c.basis->size(); ++i) {
      if (type_part(vals[i], t) != vals[i])
        throw std::invalid_argument(n + "(" + (*c.basis)[i].name + ") has terms of another type");
      d.values[i] += vals[i];
    }
  }
  d.validate();
  return d;
}

Rep3Data components_from_operator(const RepOperator& d) {
  d.validate();
  Rep3Data c = Rep3Data::zero(d.q, d.basis);
  std::map<CoeffType, std::string> by_type;
  for (const auto& n : rep3_component_names()) by_type[rep3_component_type(n)] = n;
  for (int i = 0; i < d.basis->size(); ++i)
    for (const auto& [t, part] : type_parts(d.values[i])) {
      auto it = by_type.find(t);
      if (it == by_type.end())
        throw std::invalid_argument("D(" + (*d.basis)[i].name + ") has a term of coefficient type " +
                                    type_str(t) + ": " + part.str());
      c.comps[it->second][i] = part;
    }
  return c;
}

namespace {

// The pieces of D: the six components plus the coefficient parts Qd, Qw.
struct Pieces {
  const Rep3Data& c;
  SplitQ sq;

  explicit Pieces(const Rep3Data& data) : c(data), sq(split_q(data.q)) {}

  static const std::vector<std::string>& all() {
    static const std::vector<std::string> names{"partial", "nabla", "omega2", "phi0",
                                                "omega3",  "phi1",  "qd",     "qw"};
    return names;
  }
  static CoeffType type(const std::string& n) {
    if (n == "qd") return {-1, 1};
    if (n == "qw") return {3, -1};
    return rep3_component_type(n);
  }
  ModuleElement apply(const std::string& n, const ModuleElement& m) const {
    if (n == "qd") return act_coeffs(sq.qd, m);
    if (n == "qw") return act_coeffs(sq.qw, m);
    ModuleElement out = act_linear(c.comp(n), m, 1, c.basis);
    if (n == "nabla") out += act_coeffs(sq.q1, m);
    return out;
  }
};

std::string rep3_equation(CoeffType t) {
  static const std::map<CoeffType, std::string> eq{
      {{0, 0}, "d_squared"}, {{1, 0}, "nabla_commutes"}, {{2, 0}, "1"}, {{0, 1}, "2"},
      {{3, 0}, "3"},         {{1, 1}, "4"},              {{4, 0}, "5"}, {{2, 1}, "6"},
      {{0, 2}, "7"}};
  auto it = eq.find(t);
  return it == eq.end() ? "higher" : it->second;
}

}  // namespace

Report rep3_check(const Rep3Data& c) {
  Report r;
  r.check = "rep3";
  for (const char* id : {"shape", "d_squared", "nabla_commutes", "1", "2", "3", "4", "5", "6", "7",
                         "higher"})
    r.clause(id);
  for (const auto& n : rep3_component_names()) {
    const auto& vals = c.comp(n);
    if (static_cast<int>(vals.size()) != c.basis->size()) {
      r.fail("shape", n, "wrong number of values");
      return r;
    }
    for (int i = 0; i < c.basis->size(); ++i) {
      if (type_part(vals[i], rep3_component_type(n)) != vals[i])
        r.fail("shape", n + "(" + (*c.basis)[i].name + ")", vals[i].str());
      for (int d : vals[i].degrees())
        if (d != (*c.basis)[i].degree + 1)
          r.fail("shape", n + "(" + (*c.basis)[i].name + ")", "degree " + std::to_string(d));
    }
  }
  if (!r.find("shape")->pass) return r;

  Pieces p(c);
  for (int i = 0; i < c.basis->size(); ++i) {
    std::map<std::string, ModuleElement> eqs;
    for (const auto& inner : rep3_component_names()) {
      const ModuleElement& y = c.comp(inner)[i];
      if (y.is_zero()) continue;
      for (const auto& outer : Pieces::all()) {
        ModuleElement v = p.apply(outer, y);
        if (v.is_zero()) continue;
        std::string id = rep3_equation(add_types(Pieces::type(outer), Pieces::type(inner)));
        auto it = eqs.find(id);
        if (it == eqs.end()) it = eqs.emplace(id, ModuleElement(c.genset(), c.basis)).first;
        it->second += v;
      }
    }
    for (const auto& [id, v] : eqs)
      if (!v.is_zero()) r.fail(id, (*c.basis)[i].name, v.str());
  }
  return r;
}

// ---------------------------------------------------------------- 1-term reps

RepOperator trivial_rep(const Derivation& q, int k) {
  std::vector<Section> s;
  for (int i = 0; i < k; ++i) s.push_back({"1_" + std::to_string(i + 1), 0});
  BasisPtr b = make_basis(std::move(s));
  return RepOperator{q, b, std::vector<ModuleElement>(k, ModuleElement(q.genset(), b))};
}

RepOperator rep1_operator(const SplitLie2Data& d, const Connection& conn) {
  Derivation q = compile_homological_vf(d);
  const auto& gs = q.genset();
  std::vector<Section> s;
  for (int i = 0; i < conn.rank; ++i) s.push_back({"e" + std::to_string(i + 1), 0});
  BasisPtr b = make_basis(std::move(s));
  RepOperator op{q, b, std::vector<ModuleElement>(conn.rank, ModuleElement(gs, b))};
  for (int al = 0; al < conn.rank; ++al)
    for (int a = 0; a < d.rank_q(); ++a)
      for (int be = 0; be < conn.rank; ++be)
        op.values[al].add(be, conn.G[a][al][be] * AlgebraElement::generator(gs, a));
  return op;
}

Report rep1_check(const SplitLie2Data& d, const Connection& conn) {
  Report r;
  r.check = "rep1";
  r.clause("i");
  r.clause("ii");
  int m = d.nvars();
  EndForm2 curv = curvature(d.q, conn);
  for (const auto& [ab, vals] : curv)
    for (int al = 0; al < conn.rank; ++al)
      if (!is_zero(vals[al]))
        r.fail("i", "R(q" + std::to_string(ab.first + 1) + ",q" + std::to_string(ab.second + 1) +
                        ")e" + std::to_string(al + 1),
               sec_str(vals[al], "e"));
  for (int mu = 0; mu < d.rank_b; ++mu)
    for (int al = 0; al < conn.rank; ++al) {
      Sec v = covariant(d.q, conn, d.ell_of(basis_sec(d.rank_b, m, mu)), basis_sec(conn.rank, m, al));
      if (!is_zero(v))
        r.fail("ii", "nabla_{ell beta" + std::to_string(mu + 1) + "} e" + std::to_string(al + 1),
               sec_str(v, "e"));
    }
  return r;
}

// ---------------------------------------------------------------- constructions

namespace {

PairingTable delta_table(const BasisPtr& left, const BasisPtr& right, const BasisPtr& target,
                         int nvars, const std::function<int(int, int)>& image) {
  PairingTable t{left, right, target, {}};
  for (int i = 0; i < left->size(); ++i)
    for (int j = 0; j < right->size(); ++j) {
      int k = image(i, j);
      std::vector<std::pair<int, Poly>> v;
      if (k >= 0) v.push_back({k, Poly(nvars, 1)});
      t.values[{i, j}] = v;
    }
  return t;
}

BasisPtr unit_basis() {
  static BasisPtr b = make_basis({{"1", 0}});
  return b;
}

int sign_of(long e) { return e % 2 != 0 ? -1 : 1; }

}  // namespace

BuiltModule dual_module(const RepOperator& e) {
  e.validate();
  Construction c = dual_construction(*e.basis);
  const auto& gs = e.genset();
  RepOperator op{e.q, c.basis, std::vector<ModuleElement>(e.basis->size(), ModuleElement(gs, c.basis))};
  for (int i = 0; i < e.basis->size(); ++i) {
    int di = (*c.basis)[i].degree;
    for (int j = 0; j < e.basis->size(); ++j) {
      AlgebraElement z = e.values[j].coefficient(i);
      if (z.is_zero()) continue;
      int dz = z.homogeneous_degree();
      op.values[i].add(j, Rational(-sign_of(di) * sign_of(static_cast<long>(di) * dz)) * z);
    }
  }
  return {op, c};
}

AlgebraElement pair_dual(const RepOperator& dual, const RepOperator& e, const ModuleElement& psi,
                         const ModuleElement& eta) {
  PairingTable t = delta_table(dual.basis, e.basis, unit_basis(), e.genset()->nvars(),
                               [](int i, int j) { return i == j ? 0 : -1; });
  ModuleElement v = wedge_h(psi, eta, t);
  return v.coefficient(0);
}

namespace {

PairingTable tensor_table(const BuiltModule& t, const BasisPtr& e, const BasisPtr& f) {
  int nf = f->size();
  return delta_table(e, f, t.op.basis, t.op.genset()->nvars(),
                     [nf](int i, int j) { return i * nf + j; });
}

}  // namespace

BuiltModule tensor_module(const RepOperator& e, const RepOperator& f) {
  e.validate();
  f.validate();
  BuiltModule t;
  t.construction = tensor_construction(*e.basis, *f.basis);
  const auto& gs = e.genset();
  t.op = RepOperator{e.q, t.construction.basis,
                     std::vector<ModuleElement>(t.construction.basis->size(),
                                                ModuleElement(gs, t.construction.basis))};
  PairingTable h = tensor_table(t, e.basis, f.basis);
  for (int i = 0; i < e.basis->size(); ++i)
    for (int j = 0; j < f.basis->size(); ++j) {
      ModuleElement v = wedge_h(e.values[i], f.section(j), h);
      ModuleElement w = wedge_h(e.section(i), f.values[j], h);
      v += sign_of((*e.basis)[i].degree) < 0 ? -w : w;
      t.op.values[i * f.basis->size() + j] = v;
    }
  return t;
}

ModuleElement tensor_elements(const BuiltModule& t, const ModuleElement& a, const ModuleElement& b) {
  return wedge_h(a, b, tensor_table(t, a.basis(), b.basis()));
}

namespace {

PairingTable evaluation_table(const BuiltModule& h, const BasisPtr& e, const BasisPtr& f) {
  int nf = f->size();
  return delta_table(h.op.basis, e, f, h.op.genset()->nvars(), [nf](int hij, int k) {
    return hij / nf == k ? hij % nf : -1;
  });
}

}  // namespace

BuiltModule hom_module(const RepOperator& e, const RepOperator& f) {
  e.validate();
  f.validate();
  BuiltModule h;
  h.construction = hom_construction(*e.basis, *f.basis);
  const auto& gs = e.genset();
  const BasisPtr& hb = h.construction.basis;
  h.op = RepOperator{e.q, hb, std::vector<ModuleElement>(hb->size(), ModuleElement(gs, hb))};
  int ne = e.basis->size(), nf = f.basis->size();
  for (int j = 0; j < ne; ++j)
    for (int i = 0; i < nf; ++i) {
      int idx = j * nf + i;
      int dh = (*hb)[idx].degree;
      ModuleElement& out = h.op.values[idx];
      for (int k = 0; k < ne; ++k) {
        // D_Hom(h)(e_k) = D_F(h(e_k)) - (-1)^{|h|} h(D_E e_k)
        ModuleElement at_k(gs, f.basis);
        if (k == j) at_k += f.values[i];
        AlgebraElement z = e.values[k].coefficient(j);
        if (!z.is_zero()) {
          int s = -sign_of(dh) * sign_of(static_cast<long>(dh) * z.homogeneous_degree());
          at_k.add(i, Rational(s) * z);
        }
        for (const auto& [ip, c] : at_k.terms()) out.add(k * nf + ip, c);
      }
    }
  return h;
}

ModuleElement hom_evaluate(const BuiltModule& h, const RepOperator& f, const ModuleElement& psi,
                           const ModuleElement& eta) {
  return wedge_h(psi, eta, evaluation_table(h, eta.basis(), f.basis));
}

BuiltModule power_module(const RepOperator& e, int k, bool anti) {
  e.validate();
  BuiltModule p;
  p.construction = power_construction(*e.basis, k, anti);
  const auto& gs = e.genset();
  const BasisPtr& pb = p.construction.basis;
  std::map<std::vector<int>, int> index;
  for (int w = 0; w < pb->size(); ++w) index[p.construction.parts[w]] = w;
  p.op = RepOperator{e.q, pb, std::vector<ModuleElement>(pb->size(), ModuleElement(gs, pb))};
  for (int w = 0; w < pb->size(); ++w) {
    const auto& word = p.construction.parts[w];
    long prefix = 0;
    for (size_t r = 0; r < word.size(); ++r) {
      for (const auto& [l, z] : e.values[word[r]].terms()) {
        std::vector<int> nw = word;
        nw[r] = l;
        int s = power_normalize(*e.basis, nw, anti);
        if (!s) continue;
        s *= sign_of(prefix) * sign_of(prefix * z.homogeneous_degree());
        p.op.values[w].add(index.at(nw), Rational(s) * z);
      }
      prefix += (*e.basis)[word[r]].degree;
    }
  }
  return p;
}

BuiltModule shift_module(const RepOperator& e, int k) {
  e.validate();
  BuiltModule s;
  s.construction = shift_construction(*e.basis, k);
  const BasisPtr& sb = s.construction.basis;
  s.op = RepOperator{e.q, sb, {}};
  for (const auto& v : e.values) {
    ModuleElement w(e.genset(), sb);
    for (const auto& [i, c] : v.terms()) w.add(i, c);
    s.op.values.push_back(w);
  }
  return s;
}

BuiltModule direct_sum_module(const RepOperator& e, const RepOperator& f) {
  e.validate();
  f.validate();
  BuiltModule s;
  s.construction = direct_sum_construction(*e.basis, *f.basis);
  const BasisPtr& sb = s.construction.basis;
  s.op = RepOperator{e.q, sb, {}};
  int ne = e.basis->size();
  for (const auto& v : e.values) {
    ModuleElement w(e.genset(), sb);
    for (const auto& [i, c] : v.terms()) w.add(i, c);
    s.op.values.push_back(w);
  }
  for (const auto& v : f.values) {
    ModuleElement w(e.genset(), sb);
    for (const auto& [i, c] : v.terms()) w.add(ne + i, c);
    s.op.values.push_back(w);
  }
  return s;
}

// ---------------------------------------------------------------- random elements

std::vector<Monomial> monomials_of_degree(const GeneratorSet& gs, int deg) {
  std::vector<Monomial> out;
  if (deg < 0) return out;
  Monomial m(gs.size(), 0);
  std::function<void(int, int)> rec = [&](int g, int left) {
    if (g == gs.size()) {
      if (left == 0) out.push_back(m);
      return;
    }
    int maxe = gs.odd(g) ? 1 : left / gs.degree(g);
    for (int e = 0; e <= maxe && e * gs.degree(g) <= left; ++e) {
      m[g] = e;
      rec(g + 1, left - e * gs.degree(g));
    }
    m[g] = 0;
  };
  rec(0, deg);
  return out;
}

ModuleElement random_module_element(const RepOperator& e, int degree, std::mt19937_64& rng) {
  const auto& gs = e.genset();
  ModuleElement out = e.zero();
  std::uniform_int_distribution<int> coin(0, 1);
  for (int s = 0; s < e.basis->size(); ++s) {
    auto monos = monomials_of_degree(*gs, degree - (*e.basis)[s].degree);
    if (monos.empty() || coin(rng)) continue;
    std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
    for (int t = 0; t < 2; ++t) {
      Poly c(gs->nvars(), random_rational(rng));
      if (gs->nvars() > 0 && coin(rng)) {
        std::uniform_int_distribution<int> var(0, gs->nvars() - 1);
        c = c * Poly::variable(gs->nvars(), var(rng));
      }
      out.add(s, AlgebraElement::monomial(gs, monos[pick(rng)], c));
    }
  }
  return out;
}

namespace {

std::pair<int, int> degree_span(const GradedBasis& b) {
  int lo = 0, hi = 0;
  for (int i = 0; i < b.size(); ++i) {
    lo = std::min(lo, b[i].degree);
    hi = std::max(hi, b[i].degree);
  }
  return {lo, hi};
}

}  // namespace

Report dual_identity_check(const RepOperator& e, const BuiltModule& dual, std::mt19937_64& rng) {
  Report r;
  r.check = "dual_identity";
  r.clause("pairing");
  auto test = [&](const ModuleElement& psi, const ModuleElement& eta, const std::string& where) {
    int dp = psi.homogeneous_degree();
    AlgebraElement v = e.q.apply(pair_dual(dual.op, e, psi, eta)) -
                       pair_dual(dual.op, e, dual.op.apply(psi), eta);
    AlgebraElement w = pair_dual(dual.op, e, psi, e.apply(eta));
    v -= sign_of(dp) < 0 ? -w : w;
    if (!v.is_zero()) r.fail("pairing", where, v.str());
  };
  for (int i = 0; i < dual.op.basis->size(); ++i)
    for (int j = 0; j < e.basis->size(); ++j)
      test(dual.op.section(i), e.section(j), (*dual.op.basis)[i].name + "," + (*e.basis)[j].name);
  auto [lo, hi] = degree_span(*dual.op.basis);
  auto [elo, ehi] = degree_span(*e.basis);
  std::uniform_int_distribution<int> dpsi(lo, hi + 2), deta(elo, ehi + 2);
  for (int t = 0; t < 10; ++t)
    test(random_module_element(dual.op, dpsi(rng), rng), random_module_element(e, deta(rng), rng),
         "random " + std::to_string(t));
  return r;
}

Report tensor_identity_check(const RepOperator& e, const RepOperator& f, const BuiltModule& t,
                             std::mt19937_64& rng) {
  Report r;
  r.check = "tensor_identity";
  r.clause("leibniz");
  auto [elo, ehi] = degree_span(*e.basis);
  auto [flo, fhi] = degree_span(*f.basis);
  std::uniform_int_distribution<int> da(elo, ehi + 2), db(flo, fhi + 2);
  for (int k = 0; k < 10; ++k) {
    ModuleElement a = random_module_element(e, da(rng), rng);
    ModuleElement b = random_module_element(f, db(rng), rng);
    ModuleElement v = t.op.apply(tensor_elements(t, a, b)) - tensor_elements(t, e.apply(a), b);
    ModuleElement w = tensor_elements(t, a, f.apply(b));
    v -= sign_of(a.homogeneous_degree()) < 0 ? -w : w;
    if (!v.is_zero()) r.fail("leibniz", "random " + std::to_string(k), v.str());
  }
  return r;
}

Report hom_identity_check(const RepOperator& e, const RepOperator& f, const BuiltModule& h,
                          std::mt19937_64& rng) {
  Report r;
  r.check = "hom_identity";
  r.clause("evaluation");
  auto test = [&](const ModuleElement& psi, const ModuleElement& eta, const std::string& where) {
    ModuleElement v = f.apply(hom_evaluate(h, f, psi, eta)) -
                      hom_evaluate(h, f, h.op.apply(psi), eta);
    ModuleElement w = hom_evaluate(h, f, psi, e.apply(eta));
    v -= sign_of(psi.homogeneous_degree()) < 0 ? -w : w;
    if (!v.is_zero()) r.fail("evaluation", where, v.str());
  };
  for (int i = 0; i < h.op.basis->size(); ++i)
    for (int j = 0; j < e.basis->size(); ++j)
      test(h.op.section(i), e.section(j), (*h.op.basis)[i].name + "," + (*e.basis)[j].name);
  auto [lo, hi] = degree_span(*h.op.basis);
  auto [elo, ehi] = degree_span(*e.basis);
  std::uniform_int_distribution<int> dpsi(lo, hi + 2), deta(elo, ehi + 2);
  for (int t = 0; t < 10; ++t)
    test(random_module_element(h.op, dpsi(rng), rng), random_module_element(e, deta(rng), rng),
         "random " + std::to_string(t));
  return r;
}

// ---------------------------------------------------------------- morphisms

ModuleElement ModuleMap::apply(const ModuleElement& m) const {
  ModuleElement out(m.genset(), target);
  for (const auto& [s, c] : m.terms()) {
    AlgebraElement img = twist ? substitute(c, *twist) : c;
    out += img * values.at(s);
  }
  return out;
}

ModuleMap identity_map(const RepOperator& e) {
  ModuleMap m{e.basis, e.basis, {}, std::nullopt};
  for (int i = 0; i < e.basis->size(); ++i) m.values.push_back(e.section(i));
  return m;
}

ModuleMap compose_maps(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap out{f.source, g.target, {}, std::nullopt};
  for (const auto& v : f.values) out.values.push_back(g.apply(v));
  if (f.twist && g.twist) {
    std::vector<AlgebraElement> t;
    for (const auto& x : *f.twist) t.push_back(substitute(x, *g.twist));
    out.twist = t;
  } else if (f.twist) {
    out.twist = f.twist;
  } else if (g.twist) {
    out.twist = g.twist;
  }
  return out;
}

Report morphism_operator_check(const ModuleMap& mu, const RepOperator& src, const RepOperator& dst) {
  Report r;
  r.check = "morphism_operator";
  r.clause("commutes");
  if (static_cast<int>(mu.values.size()) != src.basis->size()) {
    r.fail("commutes", "shape", "one value per source section needed");
    return r;
  }
  for (int i = 0; i < src.basis->size(); ++i) {
    ModuleElement v = mu.apply(src.values[i]) - dst.apply(mu.values[i]);
    if (!v.is_zero()) r.fail("commutes", (*src.basis)[i].name, v.str());
  }
  return r;
}

const std::vector<std::string>& morphism_component_names() {
  static const std::vector<std::string> names{"mu0", "mu1", "mu2", "mub"};
  return names;
}

namespace {

CoeffType morphism_type(const std::string& n) {
  if (n == "mu0") return {0, 0};
  if (n == "mu1") return {1, 0};
  if (n == "mu2") return {2, 0};
  if (n == "mub") return {0, 1};
  throw std::invalid_argument("unknown morphism component " + n);
}

}  // namespace

ModuleMap map_from_components(const RepMorphismData& m) {
  ModuleMap out{m.source, m.target, {}, std::nullopt};
  GenSetPtr gs;
  for (const auto& [n, vals] : m.comps)
    if (!vals.empty()) gs = vals[0].genset();
  for (int i = 0; i < m.source->size(); ++i) {
    ModuleElement v(gs, m.target);
    for (const auto& n : morphism_component_names()) {
      auto it = m.comps.find(n);
      if (it == m.comps.end()) continue;
      if (type_part(it->second.at(i), morphism_type(n)) != it->second.at(i))
        throw std::invalid_argument(n + " has terms of another type");
      v += it->second.at(i);
    }
    out.values.push_back(v);
  }
  return out;
}

RepMorphismData components_from_map(const ModuleMap& m) {
  if (m.twist) throw std::invalid_argument("twisted maps have no component form");
  RepMorphismData out{m.source, m.target, {}};
  std::map<CoeffType, std::string> by_type;
  for (const auto& n : morphism_component_names()) {
    by_type[morphism_type(n)] = n;
    out.comps[n] = std::vector<ModuleElement>(m.source->size(),
                                              ModuleElement(m.values.empty() ? nullptr
                                                                             : m.values[0].genset(),
                                                            m.target));
  }
  for (int i = 0; i < m.source->size(); ++i)
    for (const auto& [t, part] : type_parts(m.values[i])) {
      auto it = by_type.find(t);
      if (it == by_type.end())
        throw std::invalid_argument("mu(" + (*m.source)[i].name + ") has a term of type " +
                                    type_str(t));
      out.comps[it->second][i] = part;
    }
  return out;
}

Report morphism_check(const RepMorphismData& mu, const Rep3Data& src, const Rep3Data& dst) {
  Report r;
  r.check = "morphism";
  for (const char* id : {"1.0", "1.1", "1.2", "1.3", "2", "3", "higher"}) r.clause(id);
  Pieces pd(dst);
  auto id_of = [](CoeffType t) {
    if (t.second == 0) return "1." + std::to_string(t.first);
    if (t == CoeffType{0, 1}) return std::string("2");
    if (t == CoeffType{1, 1}) return std::string("3");
    return std::string("higher");
  };
  for (int i = 0; i < src.basis->size(); ++i) {
    std::map<std::string, ModuleElement> eqs;
    auto add = [&](CoeffType t, const ModuleElement& v) {
      if (v.is_zero()) return;
      std::string id = id_of(t);
      auto it = eqs.find(id);
      if (it == eqs.end()) it = eqs.emplace(id, ModuleElement(dst.genset(), dst.basis)).first;
      it->second += v;
    };
    for (const auto& [n, vals] : mu.comps) {
      CoeffType tm = morphism_type(n);
      // D_F after mu
      for (const auto& outer : Pieces::all())
        add(add_types(Pieces::type(outer), tm), pd.apply(outer, vals.at(i)));
      // mu after D_E
      for (const auto& inner : rep3_component_names())
        add(add_types(tm, rep3_component_type(inner)),
            -act_linear(vals, src.comp(inner)[i], 0, dst.basis));
    }
    for (const auto& [id, v] : eqs)
      if (!v.is_zero()) r.fail(id, (*src.basis)[i].name, v.str());
  }
  return r;
}

ModuleMap shift_isomorphism(const RepOperator& e, const BuiltModule& shifted) {
  ModuleMap m{e.basis, shifted.op.basis, {}, std::nullopt};
  for (int i = 0; i < e.basis->size(); ++i) m.values.push_back(shifted.op.section(i));
  return m;
}

// ---------------------------------------------------------------- examples

RepOperator q_closed_rep(const Derivation& q, const AlgebraElement& xi, int k) {
  if (!q.apply(xi).is_zero()) throw std::invalid_argument("xi is not Q-closed");
  if (k < 0) k = xi.homogeneous_degree();
  if (k < 0 || (!xi.is_zero() && xi.homogeneous_degree() != k))
    throw std::invalid_argument("xi is not homogeneous of degree k");
  BasisPtr b = make_basis({{"e0", 0}, {"e1", k - 1}});
  RepOperator op{q, b, {ModuleElement(q.genset(), b), ModuleElement(q.genset(), b)}};
  op.values[1].add(0, xi);
  return op;
}

ModuleMap q_closed_iso(const RepOperator& e_xi, const AlgebraElement& xi2) {
  ModuleMap m = identity_map(e_xi);
  m.values[1].add(0, xi2);
  return m;
}

// ---------------------------------------------------------------- cohomology

std::vector<int> cohomology_dims(const RepOperator& d, int lo, int hi) {
  const auto& gs = d.genset();
  if (gs->nvars() != 0) throw std::invalid_argument("cohomology needs a point base");
  d.validate();
  // basis of the degree-n component: (section, monomial)
  auto component = [&](int n) {
    std::vector<std::pair<int, Monomial>> out;
    for (int s = 0; s < d.basis->size(); ++s)
      for (const auto& m : monomials_of_degree(*gs, n - (*d.basis)[s].degree)) out.push_back({s, m});
    return out;
  };
  auto differential_rank = [&](int n) {
    auto src = component(n), dst = component(n + 1);
    if (src.empty() || dst.empty()) return 0;
    std::map<std::pair<int, Monomial>, int> row;
    for (size_t k = 0; k < dst.size(); ++k) row[dst[k]] = static_cast<int>(k);
    Matrix a = zero_matrix(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t c = 0; c < src.size(); ++c) {
      ModuleElement x = d.zero();
      x.add(src[c].first, AlgebraElement::monomial(gs, src[c].second, Poly(0, 1)));
      ModuleElement y = d.apply(x);
      for (const auto& [s, coeff] : y.terms())
        for (const auto& [m, p] : coeff.terms()) a[row.at({s, m})][c] = p.constant_term();
    }
    return rank(a, static_cast<int>(src.size()));
  };
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n)
    out.push_back(static_cast<int>(component(n).size()) - differential_rank(n) -
                  differential_rank(n - 1));
  return out;
}

// ---------------------------------------------------------------- mutations

Rep3Data mutate_rep3(const Rep3Data& c, std::mt19937_64& rng, std::string* description) {
  const auto& gs = c.genset();
  const auto& names = rep3_component_names();
  int n = c.basis->size();
  std::uniform_int_distribution<int> pick_name(0, static_cast<int>(names.size()) - 1),
      pick_sec(0, n - 1), coin(0, 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    const std::string& name = names[pick_name(rng)];
    int i = pick_sec(rng), j = pick_sec(rng);
    CoeffType t = rep3_component_type(name);
    int cd = (*c.basis)[i].degree + 1 - (*c.basis)[j].degree;
    if (cd != t.first + 2 * t.second) continue;
    std::vector<Monomial> monos;
    for (const auto& m : monomials_of_degree(*gs, cd))
      if (coefficient_type(*gs, m) == t) monos.push_back(m);
    if (monos.empty()) continue;
    std::uniform_int_distribution<size_t> pm(0, monos.size() - 1);
    Poly p(gs->nvars(), random_rational(rng));
    if (gs->nvars() > 0 && coin(rng)) {
      std::uniform_int_distribution<int> var(0, gs->nvars() - 1);
      p = p * Poly::variable(gs->nvars(), var(rng));
    }
    const Monomial& m = monos[pm(rng)];
    Rep3Data out = c;
    out.comps[name][i].add(j, AlgebraElement::monomial(gs, m, p));
    if (description)
      *description = name + "(" + (*c.basis)[i].name + ") += (" + p.str() + ")" +
                     monomial_str(*gs, m) + " " + (*c.basis)[j].name;
    return out;
  }
  if (description) *description = "none";
  return c;
}

}  // namespace l2a
