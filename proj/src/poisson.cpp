#include "l2a/poisson.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace l2a {

namespace {

int parity(int x) { return ((x % 2) + 2) % 2; }
int sgn(int x) { return parity(x) ? -1 : 1; }

// -(-1)^{(|a|+k)(|b|+k)}
int skew_sign(int da, int db, int k) { return -sgn((da + k) * (db + k)); }

void require_same(const GeneratorSet& a, const GeneratorSet& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": generator sets differ");
}

}  // namespace

int atom_count(const GeneratorSet& gs) { return gs.nvars() + gs.size(); }

int atom_degree(const GeneratorSet& gs, int atom) { return atom < gs.nvars() ? 0 : gs.degree(atom - gs.nvars()); }

std::string atom_name(const GeneratorSet& gs, int atom) {
  return atom < gs.nvars() ? "x" + std::to_string(atom + 1) : gs.gen(atom - gs.nvars()).name;
}

AlgebraElement atom_element(const GenSetPtr& gs, int atom) {
  return atom < gs->nvars() ? AlgebraElement::base_variable(gs, atom)
                            : AlgebraElement::generator(gs, atom - gs->nvars());
}

GradedPoissonData::GradedPoissonData(GenSetPtr gs, int degree,
                                     const std::map<std::pair<int, int>, AlgebraElement>& entries)
    : gs_(std::move(gs)), k_(degree) {
  int n = atom_count(*gs_);
  for (const auto& [ab, v] : entries) {
    auto [a, b] = ab;
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("bracket entry on an unknown atom");
    std::string where = "{" + atom_name(*gs_, a) + "," + atom_name(*gs_, b) + "}";
    int da = atom_degree(*gs_, a), db = atom_degree(*gs_, b);
    int want = da + db + k_;
    if (!v.is_zero() && (want < 0 || v.homogeneous_degree() != want))
      throw std::invalid_argument("bracket " + where + " = " + v.str() + " should have degree " +
                                  std::to_string(want));
    AlgebraElement t = v;
    t *= Rational(skew_sign(da, db, k_));
    if (a == b && t != v) throw std::invalid_argument("skew symmetry forces " + where + " = 0");
    auto other = entries.find({b, a});
    if (other != entries.end() && other->second != t)
      throw std::invalid_argument("skew symmetry violated by " + where);
    if (v.is_zero()) continue;
    table_[{a, b}] = v;
    table_[{b, a}] = t;
  }
}

AlgebraElement GradedPoissonData::at(int a, int b) const {
  auto it = table_.find({a, b});
  return it == table_.end() ? AlgebraElement(gs_) : it->second;
}

namespace {

Derivation ham_atom(const GradedPoissonData& p, int a) {
  const auto& gs = p.genset();
  Derivation d(gs, atom_degree(*gs, a) + p.degree());
  for (int i = 0; i < gs->nvars(); ++i) d.set_base(i, p.at(a, i));
  for (int j = 0; j < gs->size(); ++j) d.set_gen(j, p.at(a, gs->nvars() + j));
  return d;
}

}  // namespace

Derivation hamiltonian(const GradedPoissonData& p, const AlgebraElement& xi) {
  const auto& gs = p.genset();
  int k = p.degree();
  if (xi.is_zero()) return Derivation(gs, k);
  int e = xi.homogeneous_degree();
  if (e < 0) throw std::invalid_argument("hamiltonian needs a homogeneous function: " + xi.str());
  Derivation d(gs, e + k);
  for (int c = 0; c < atom_count(*gs); ++c) {
    AlgebraElement v = ham_atom(p, c).apply(xi);
    v *= Rational(skew_sign(e, atom_degree(*gs, c), k));
    if (c < gs->nvars())
      d.set_base(c, v);
    else
      d.set_gen(c - gs->nvars(), v);
  }
  return d;
}

AlgebraElement poisson_bracket(const GradedPoissonData& p, const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out(p.genset());
  for (const auto& [deg, part] : a.homogeneous_parts()) out += hamiltonian(p, part).apply(b);
  return out;
}

Report poisson_axioms_check(const GradedPoissonData& p) {
  const auto& gs = p.genset();
  int n = atom_count(*gs), k = p.degree();
  Report r;
  r.check = "poisson_axioms";
  r.clause("skew");
  r.clause("jacobi");
  std::vector<AlgebraElement> atoms;
  for (int a = 0; a < n; ++a) atoms.push_back(atom_element(gs, a));
  auto br = [&](const AlgebraElement& x, const AlgebraElement& y) { return poisson_bracket(p, x, y); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int da = atom_degree(*gs, a), db = atom_degree(*gs, b);
      AlgebraElement v = br(atoms[a], atoms[b]) - Rational(skew_sign(da, db, k)) * br(atoms[b], atoms[a]);
      if (!v.is_zero()) r.fail("skew", "(" + atom_name(*gs, a) + "," + atom_name(*gs, b) + ")", v.str());
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int da = atom_degree(*gs, a), db = atom_degree(*gs, b);
        AlgebraElement lhs = br(atoms[a], br(atoms[b], atoms[c]));
        AlgebraElement rhs = br(br(atoms[a], atoms[b]), atoms[c]) +
                             Rational(sgn((da + k) * (db + k))) * br(atoms[b], br(atoms[a], atoms[c]));
        if (lhs != rhs)
          r.fail("jacobi", "(" + atom_name(*gs, a) + "," + atom_name(*gs, b) + "," + atom_name(*gs, c) + ")",
                 (lhs - rhs).str());
      }
  return r;
}

Report compatibility_check(const GradedPoissonData& p, const Derivation& q) {
  const auto& gs = p.genset();
  require_same(*gs, *q.genset(), "compatibility_check");
  int n = atom_count(*gs), k = p.degree();
  Report r;
  r.check = "poisson_compatibility";
  r.clause("compat");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      AlgebraElement xg = atom_element(gs, g), xh = atom_element(gs, h);
      AlgebraElement t = q.apply(p.at(g, h)) - poisson_bracket(p, q.apply(xg), xh) -
                         Rational(sgn(atom_degree(*gs, g) + k)) * poisson_bracket(p, xg, q.apply(xh));
      if (!t.is_zero()) r.fail("compat", "(" + atom_name(*gs, g) + "," + atom_name(*gs, h) + ")", t.str());
    }
  return r;
}

// ---------------------------------------------------------------- constructions

GradedPoissonData poisson_from_bivector(int nvars, const std::vector<std::vector<Poly>>& pi) {
  GenSetPtr gs = make_genset(nvars, {});
  std::map<std::pair<int, int>, AlgebraElement> e;
  for (int i = 0; i < nvars; ++i)
    for (int j = 0; j < nvars; ++j) e[{i, j}] = AlgebraElement::scalar(gs, pi.at(i).at(j));
  return GradedPoissonData(gs, 0, e);
}

GradedPoissonData poisson_from_dual_algebroid(const DullAlgebroidData& astar) {
  astar.validate();
  int m = astar.nvars, r = astar.rank;
  GenSetPtr gs = lie2_genset(m, r, 0);
  std::map<std::pair<int, int>, AlgebraElement> e;
  for (int a = 0; a < r; ++a) {
    for (int i = 0; i < m; ++i) e[{m + a, i}] = AlgebraElement::scalar(gs, astar.rho[a][i]);
    for (int c = a + 1; c < r; ++c) {
      AlgebraElement v(gs);
      for (int f = 0; f < r; ++f) v += astar.C[a][c][f] * AlgebraElement::generator(gs, f);
      e[{m + a, m + c}] = v;
    }
  }
  return GradedPoissonData(gs, -1, e);
}

DullAlgebroidData dual_algebroid_from_poisson(const GradedPoissonData& p) {
  const auto& gs = p.genset();
  int m = gs->nvars(), r = gs->size();
  if (p.degree() != -1) throw std::invalid_argument("a Lie bialgebroid bracket has degree -1");
  for (int g = 0; g < r; ++g)
    if (gs->degree(g) != 1) throw std::invalid_argument("a Lie bialgebroid lives on A[1]");
  DullAlgebroidData out = DullAlgebroidData::zero(m, r);
  Monomial none(r, 0);
  for (int a = 0; a < r; ++a) {
    for (int i = 0; i < m; ++i) out.rho[a][i] = p.at(m + a, i).coefficient(none);
    for (int c = 0; c < r; ++c)
      for (int f = 0; f < r; ++f) {
        Monomial one(r, 0);
        one[f] = 1;
        out.C[a][c][f] = p.at(m + a, m + c).coefficient(one);
      }
  }
  if (!(poisson_from_dual_algebroid(out).table() == p.table()))
    throw std::invalid_argument("bracket is not of Lie bialgebroid form");
  return out;
}

GradedPoissonData pairing_poisson(int dim, const Matrix& m) {
  GenSetPtr gs = lie2_genset(0, dim, 0);
  std::map<std::pair<int, int>, AlgebraElement> e;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) e[{a, b}] = AlgebraElement::scalar(gs, m.at(a).at(b));
  return GradedPoissonData(gs, -2, e);
}

Matrix killing_form(const StructureConstants& g) {
  int n = static_cast<int>(g.size());
  Matrix k = zero_matrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) k[a][b] += g[a][e][c] * g[b][c][e];
  return k;
}

PairingPoisson build_pairing_poisson_point(const StructureConstants& g, const Matrix& pairing) {
  int n = static_cast<int>(g.size());
  if (!lie_jacobi_holds(g)) throw std::invalid_argument("structure constants fail Jacobi");
  if (static_cast<int>(pairing.size()) != n) throw std::invalid_argument("pairing has the wrong size");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (pairing[a][b] != pairing[b][a]) throw std::invalid_argument("pairing is not symmetric");
  auto inv = inverse(pairing);
  if (!inv) throw std::invalid_argument("pairing is degenerate");
  // <[x,y],z> + <y,[x,z]> = 0
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Rational s = 0;
        for (int e = 0; e < n; ++e) s += g[a][b][e] * pairing[e][c] + g[a][c][e] * pairing[b][e];
        if (s != 0)
          throw std::invalid_argument("pairing is not invariant on (e" + std::to_string(a + 1) + ",e" +
                                      std::to_string(b + 1) + ",e" + std::to_string(c + 1) + ")");
      }
  PairingPoisson out;
  out.algebra = Lie2AlgebraData::zero(0, n);
  out.algebra.br = g;
  out.data = embed_lie2_algebra(out.algebra, "pairing");
  out.poisson = pairing_poisson(n, *inv);
  return out;
}

PairingPoisson fx_so3_pair() {
  auto g = so3_constants();
  auto out = build_pairing_poisson_point(g, killing_form(g));
  out.data.name = "FX-SO3-PAIR";
  return out;
}

// ---------------------------------------------------------------- self-dual 2-representations

SelfDual2RepData SelfDual2RepData::zero(int nvars, int rank_b, int rank_q) {
  SelfDual2RepData s;
  s.b = DullAlgebroidData::zero(nvars, rank_b);
  s.rank_q = rank_q;
  s.partial.assign(rank_q, std::vector<Poly>(rank_q, Poly(nvars)));
  s.nabla_qdual = Connection::zero(rank_b, rank_q, nvars);
  return s;
}

void SelfDual2RepData::validate() const {
  b.validate();
  int rq = rank_q, rb = b.rank;
  if (static_cast<int>(partial.size()) != rq) throw std::invalid_argument("partial has the wrong size");
  for (int a = 0; a < rq; ++a) {
    if (static_cast<int>(partial[a].size()) != rq) throw std::invalid_argument("partial has the wrong size");
    for (int c = 0; c < rq; ++c)
      if (partial[a][c] != partial[c][a]) throw std::invalid_argument("partial_Q is not self dual");
  }
  if (nabla_qdual.source_rank != rb || nabla_qdual.rank != rq ||
      static_cast<int>(nabla_qdual.G.size()) != rb)
    throw std::invalid_argument("connection on Q* has the wrong shape");
  for (const auto& [k, m] : r) {
    if (k.first < 0 || k.first >= k.second || k.second >= rb)
      throw std::invalid_argument("R must be keyed by increasing pairs of B indices");
    if (static_cast<int>(m.size()) != rq) throw std::invalid_argument("R has the wrong size");
    for (int a = 0; a < rq; ++a)
      for (int c = 0; c < rq; ++c)
        if (m[a][c] != -m[c][a]) throw std::invalid_argument("R is not skew (R* = -R fails)");
  }
}

Poly SelfDual2RepData::r_at(int mu, int nu, int a, int c) const {
  if (mu == nu) return Poly(b.nvars);
  bool flip = mu > nu;
  auto it = r.find(flip ? std::make_pair(nu, mu) : std::make_pair(mu, nu));
  if (it == r.end()) return Poly(b.nvars);
  return flip ? -it->second[a][c] : it->second[a][c];
}

GradedPoissonData poisson_from_selfdual2rep(const SelfDual2RepData& s) {
  s.validate();
  int m = s.b.nvars, rq = s.rank_q, rb = s.b.rank;
  GenSetPtr gs = lie2_genset(m, rq, rb);
  auto tau = [&](int a) { return AlgebraElement::generator(gs, a); };
  auto bg = [&](int mu) { return AlgebraElement::generator(gs, rq + mu); };
  int t0 = m, b0 = m + rq;
  std::map<std::pair<int, int>, AlgebraElement> e;
  for (int mu = 0; mu < rb; ++mu)
    for (int i = 0; i < m; ++i) e[{b0 + mu, i}] = AlgebraElement::scalar(gs, s.b.rho[mu][i]);
  for (int a = 0; a < rq; ++a)
    for (int c = a; c < rq; ++c) e[{t0 + a, t0 + c}] = AlgebraElement::scalar(gs, s.partial[a][c]);
  for (int mu = 0; mu < rb; ++mu)
    for (int a = 0; a < rq; ++a) {
      AlgebraElement v(gs);
      for (int c = 0; c < rq; ++c) v += s.nabla_qdual.G[mu][a][c] * tau(c);
      e[{b0 + mu, t0 + a}] = v;
    }
  for (int mu = 0; mu < rb; ++mu)
    for (int nu = mu + 1; nu < rb; ++nu) {
      AlgebraElement v(gs);
      for (int l = 0; l < rb; ++l) v += s.b.C[mu][nu][l] * bg(l);
      for (int a = 0; a < rq; ++a)
        for (int c = a + 1; c < rq; ++c) v -= s.r_at(mu, nu, a, c) * (tau(a) * tau(c));
      e[{b0 + mu, b0 + nu}] = v;
    }
  return GradedPoissonData(gs, -2, e);
}

SelfDual2RepData selfdual2rep_from_poisson(const GradedPoissonData& p, int rank_q, int rank_b) {
  const auto& gs = p.genset();
  int m = gs->nvars();
  require_same(*gs, *lie2_genset(m, rank_q, rank_b), "selfdual2rep_from_poisson");
  if (p.degree() != -2) throw std::invalid_argument("a self-dual 2-representation needs a degree -2 bracket");
  SelfDual2RepData s = SelfDual2RepData::zero(m, rank_b, rank_q);
  int n = gs->size(), t0 = m, b0 = m + rank_q;
  auto mono = [&](std::vector<int> at) {
    Monomial e(n, 0);
    for (int g : at) e[g] += 1;
    return e;
  };
  for (int mu = 0; mu < rank_b; ++mu)
    for (int i = 0; i < m; ++i) s.b.rho[mu][i] = p.at(b0 + mu, i).coefficient(mono({}));
  for (int a = 0; a < rank_q; ++a)
    for (int c = 0; c < rank_q; ++c) s.partial[a][c] = p.at(t0 + a, t0 + c).coefficient(mono({}));
  for (int mu = 0; mu < rank_b; ++mu)
    for (int a = 0; a < rank_q; ++a)
      for (int c = 0; c < rank_q; ++c) s.nabla_qdual.G[mu][a][c] = p.at(b0 + mu, t0 + a).coefficient(mono({c}));
  for (int mu = 0; mu < rank_b; ++mu)
    for (int nu = mu + 1; nu < rank_b; ++nu) {
      AlgebraElement v = p.at(b0 + mu, b0 + nu);
      for (int l = 0; l < rank_b; ++l) {
        s.b.C[mu][nu][l] = v.coefficient(mono({rank_q + l}));
        s.b.C[nu][mu][l] = -s.b.C[mu][nu][l];
      }
      std::vector<std::vector<Poly>> rm(rank_q, std::vector<Poly>(rank_q, Poly(m)));
      bool any = false;
      for (int a = 0; a < rank_q; ++a)
        for (int c = a + 1; c < rank_q; ++c) {
          rm[a][c] = -v.coefficient(mono({a, c}));
          rm[c][a] = -rm[a][c];
          any = any || !rm[a][c].is_zero();
        }
      if (any) s.r[{mu, nu}] = rm;
    }
  if (!(poisson_from_selfdual2rep(s).table() == p.table()))
    throw std::invalid_argument("bracket is not of self-dual 2-representation form");
  return s;
}

RepOperator selfdual2rep_operator(const SelfDual2RepData& s) {
  s.validate();
  int m = s.b.nvars, rq = s.rank_q, rb = s.b.rank;
  SplitLie2Data db = SplitLie2Data::zero(m, rb, 0);
  db.q = s.b;
  Derivation q = compile_homological_vf(db);
  GenSetPtr gs = q.genset();
  std::vector<Section> sec;
  for (int a = 0; a < rq; ++a) sec.push_back({"t" + std::to_string(a + 1), -1});
  for (int c = 0; c < rq; ++c) sec.push_back({"p" + std::to_string(c + 1), 0});
  RepOperator op{q, make_basis(std::move(sec)), {}};
  auto xi = [&](int mu) { return AlgebraElement::generator(gs, mu); };
  auto cst = [&](const Poly& f) { return AlgebraElement::scalar(gs, f); };
  for (int a = 0; a < rq; ++a) {
    ModuleElement v = op.zero();
    for (int c = 0; c < rq; ++c) v.add(rq + c, cst(s.partial[a][c]));
    for (int mu = 0; mu < rb; ++mu)
      for (int e = 0; e < rq; ++e) v.add(e, cst(s.nabla_qdual.G[mu][a][e]) * xi(mu));
    op.values.push_back(v);
  }
  for (int c = 0; c < rq; ++c) {
    ModuleElement v = op.zero();
    // dual connection on Q: nabla q_c = -sum_a G[mu][a][c] q_a
    for (int mu = 0; mu < rb; ++mu)
      for (int a = 0; a < rq; ++a) v.add(rq + a, -cst(s.nabla_qdual.G[mu][a][c]) * xi(mu));
    // R(b,b') p_c = sum_a R(b,b')(q_c,q_a) t_a, entering with a minus sign
    for (int mu = 0; mu < rb; ++mu)
      for (int nu = mu + 1; nu < rb; ++nu)
        for (int a = 0; a < rq; ++a) v.add(a, -cst(s.r_at(mu, nu, c, a)) * (xi(mu) * xi(nu)));
    op.values.push_back(v);
  }
  return op;
}

// ---------------------------------------------------------------- sharp

ModuleElement SharpMap::apply(const ModuleElement& m) const {
  ModuleElement out(m.genset(), target);
  for (const auto& [k, c] : m.terms())
    for (const auto& [deg, part] : c.homogeneous_parts()) out += Rational(sgn(deg)) * (part * values.at(k));
  return out;
}

Derivation sharp_of_form(const GradedPoissonData& p, const WeilAlgebra& w, const AlgebraElement& form) {
  const auto& gs = p.genset();
  int m = w.nvars, rq = w.rank_q, rb = w.rank_b;
  require_same(*gs, *lie2_genset(m, rq, rb), "sharp_of_form");
  std::map<int, Derivation> by_degree;
  for (const auto& [mono, coef] : form.terms()) {
    if (monomial_weight(*w.gs, mono) != 1) throw std::invalid_argument("sharp needs a 1-form: " + form.str());
    int atom = -1;
    Monomial c(gs->size(), 0);
    int dx0 = rq + rb, dt0 = dx0 + m, db0 = dt0 + rq;
    for (int g = 0; g < w.gs->size(); ++g) {
      if (!mono[g]) continue;
      if (g < dx0)
        c[g] = mono[g];
      else if (g < dt0)
        atom = g - dx0;
      else if (g < db0)
        atom = m + (g - dt0);
      else
        atom = m + rq + (g - db0);
    }
    if (atom < 0) throw std::logic_error("weight-1 monomial without a differential");
    AlgebraElement cf = AlgebraElement::monomial(gs, c, coef);
    int deg = monomial_degree(*gs, c);
    Derivation v = left_multiply(cf, ham_atom(p, atom));
    if (parity(deg)) v = -v;
    auto it = by_degree.find(v.degree());
    if (it == by_degree.end())
      by_degree.emplace(v.degree(), v);
    else
      it->second += v;
  }
  if (by_degree.empty()) return Derivation(gs, p.degree());
  if (by_degree.size() > 1) throw std::invalid_argument("sharp_of_form needs a homogeneous 1-form");
  return by_degree.begin()->second;
}

SharpBuild sharp_build(const GradedPoissonData& p, const SplitLie2Data& d, const TMConnections& tm) {
  require_same(*p.genset(), *lie2_genset(d.nvars(), d.rank_q(), d.rank_b), "sharp_build");
  SharpBuild out{{}, build_adjoint_rep(d, tm), {}};
  out.co = build_coadjoint_rep(out.ad);
  WeilAlgebra w = build_weil(d);
  const RepOperator& co = out.co.dual.op;
  out.map.source = co.basis;
  out.map.target = out.ad.rep.basis;
  out.map.degree = p.degree();
  for (int k = 0; k < co.basis->size(); ++k) {
    AlgebraElement form = coadjoint_to_weil(w, d, tm, co.section(k));
    ModuleElement v = adjoint_coordinates(d, tm, sharp_of_form(p, w, form));
    out.map.values.push_back(ModuleElement(p.genset(), out.map.target) + v);
  }
  return out;
}

const std::vector<std::string>& sharp_component_names() {
  static const std::vector<std::string> n{"sharp0", "sharp1", "sharp2", "sharpb"};
  return n;
}

namespace {

const std::map<CoeffType, std::string>& sharp_types() {
  static const std::map<CoeffType, std::string> t{
      {{0, 0}, "sharp0"}, {{1, 0}, "sharp1"}, {{2, 0}, "sharp2"}, {{0, 1}, "sharpb"}};
  return t;
}

}  // namespace

SharpComponents sharp_components(const SharpMap& s) {
  SharpComponents c;
  GenSetPtr gs = s.values.empty() ? GenSetPtr() : s.values.front().genset();
  for (const auto& n : sharp_component_names())
    c[n].assign(s.values.size(), ModuleElement(gs, s.target));
  for (size_t k = 0; k < s.values.size(); ++k)
    for (const auto& [t, part] : type_parts(s.values[k])) {
      auto it = sharp_types().find(t);
      if (it == sharp_types().end())
        throw std::invalid_argument("sharp(" + (*s.source)[static_cast<int>(k)].name +
                                    ") has a term outside the four component types: " + part.str());
      c[it->second][k] = part;
    }
  return c;
}

SharpMap sharp_from_components(const SharpComponents& c, BasisPtr source, BasisPtr target, int degree) {
  SharpMap s{source, target, degree, {}};
  for (int k = 0; k < source->size(); ++k) {
    ModuleElement v = c.at("sharp0").at(k);
    for (const auto& n : sharp_component_names()) {
      if (n == "sharp0") continue;
      v += c.at(n).at(k);
    }
    s.values.push_back(v);
  }
  for (const auto& v : s.values)
    for (const auto& [t, part] : type_parts(v))
      if (!sharp_types().count(t)) throw std::invalid_argument("component of unknown type: " + part.str());
  return s;
}

namespace {

// Helpers for the explicit formulas: elements of the adjoint module over the
// Lie 2-algebroid genset.
struct Explicit {
  const SplitLie2Data& d;
  GenSetPtr gs;
  BasisPtr target;
  int m, rq, rb;
  DullAlgebroidData tangent;

  explicit Explicit(const SplitLie2Data& data)
      : d(data), gs(lie2_genset(data.nvars(), data.rank_q(), data.rank_b)), target(adjoint_basis(data)),
        m(data.nvars()), rq(data.rank_q()), rb(data.rank_b), tangent(DullAlgebroidData::tangent(data.nvars())) {}

  ModuleElement zero() const { return ModuleElement(gs, target); }
  AlgebraElement cst(const Poly& f) const { return AlgebraElement::scalar(gs, f); }
  AlgebraElement tau(int a) const { return AlgebraElement::generator(gs, a); }
  AlgebraElement b(int mu) const { return AlgebraElement::generator(gs, rq + mu); }
};

SharpComponents empty_components(const Explicit& x, int n) {
  SharpComponents c;
  for (const auto& name : sharp_component_names()) c[name].assign(n, x.zero());
  return c;
}

}  // namespace

SharpComponents sharp_components_bialgebroid(const DullAlgebroidData& astar, const SplitLie2Data& d,
                                             const TMConnections& tm) {
  if (d.rank_b != 0 || astar.rank != d.rank_q() || astar.nvars != d.nvars())
    throw std::invalid_argument("sharp_components_bialgebroid: shapes do not match a Lie algebroid A");
  Explicit x(d);
  int m = x.m, r = x.rq;
  SharpComponents c = empty_components(x, m + r);
  Connection nstar = dual_connection(tm.q);  // TM-connection on A*
  auto cov = [&](const Sec& X, const Sec& s) { return covariant(x.tangent, nstar, X, s); };
  auto t = [&](int a) { return basis_sec(r, m, a); };
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < r; ++a) c["sharp0"][i].add(adjoint_q(d, a), x.cst(-astar.rho[a][i]));
  for (int a = 0; a < r; ++a) {
    Sec rho_a = astar.rho[a];
    for (int i = 0; i < m; ++i) c["sharp0"][m + a].add(adjoint_x(d, i), x.cst(rho_a[i]));
    for (int e = 0; e < r; ++e) {
      // (nabla*)^bas_{tau^a} tau^e - nabla*_{rho(tau^a)} tau^e
      Sec u = astar.bracket(t(a), t(e)) + cov(astar.rho[e], t(a)) - cov(rho_a, t(e));
      for (int cc = 0; cc < r; ++cc)
        if (!u[cc].is_zero()) c["sharp1"][m + a].add(adjoint_q(d, e), x.cst(u[cc]) * x.tau(cc));
    }
  }
  return c;
}

SharpComponents sharp_components_selfdual(const SelfDual2RepData& s, const SplitLie2Data& d,
                                          const TMConnections& tm) {
  s.validate();
  if (s.rank_q != d.rank_q() || s.b.rank != d.rank_b || s.b.nvars != d.nvars())
    throw std::invalid_argument("sharp_components_selfdual: shapes do not match");
  Explicit x(d);
  int m = x.m, rq = x.rq, rb = x.rb;
  SharpComponents c = empty_components(x, m + rq + rb);
  Connection nq = dual_connection(s.nabla_qdual);  // B-connection on Q
  Connection nb = dual_connection(tm.bdual);       // TM-connection on B
  auto q = [&](int a) { return basis_sec(rq, m, a); };
  auto bs = [&](int mu) { return basis_sec(rb, m, mu); };
  // nabla^Q_{b^mu} q_c - nabla_{rho_B(b^mu)} q_c
  auto v = [&](int mu, int cc) {
    return covariant(s.b, nq, bs(mu), q(cc)) - covariant(x.tangent, tm.q, s.b.rho[mu], q(cc));
  };
  for (int i = 0; i < m; ++i)
    for (int mu = 0; mu < rb; ++mu) c["sharp0"][i].add(adjoint_beta(d, mu), x.cst(-s.b.rho[mu][i]));
  for (int a = 0; a < rq; ++a) {
    int k = m + a;
    for (int cc = 0; cc < rq; ++cc) c["sharp0"][k].add(adjoint_q(d, cc), x.cst(s.partial[a][cc]));
    for (int cc = 0; cc < rq; ++cc)
      for (int mu = 0; mu < rb; ++mu) {
        Poly f = v(mu, cc)[a];
        if (!f.is_zero()) c["sharp1"][k].add(adjoint_beta(d, mu), x.cst(f) * x.tau(cc));
      }
  }
  for (int mu = 0; mu < rb; ++mu) {
    int k = m + rq + mu;
    for (int i = 0; i < m; ++i) c["sharp0"][k].add(adjoint_x(d, i), x.cst(s.b.rho[mu][i]));
    for (int cc = 0; cc < rq; ++cc) {
      Sec w = v(mu, cc);
      for (int a = 0; a < rq; ++a)
        if (!w[a].is_zero()) c["sharp1"][k].add(adjoint_q(d, a), x.cst(-w[a]) * x.tau(cc));
    }
    for (int a = 0; a < rq; ++a)
      for (int cc = a + 1; cc < rq; ++cc)
        for (int nu = 0; nu < rb; ++nu) {
          Poly f = s.r_at(mu, nu, a, cc);
          if (!f.is_zero()) c["sharp2"][k].add(adjoint_beta(d, nu), x.cst(-f) * (x.tau(a) * x.tau(cc)));
        }
    for (int nu = 0; nu < rb; ++nu) {
      // nabla^bas_{b^mu} b^nu - nabla_{rho_B(b^mu)} b^nu
      Sec w = s.b.bracket(bs(mu), bs(nu)) + covariant(x.tangent, nb, s.b.rho[nu], bs(mu)) -
              covariant(x.tangent, nb, s.b.rho[mu], bs(nu));
      for (int l = 0; l < rb; ++l)
        if (!w[l].is_zero()) c["sharpb"][k].add(adjoint_beta(d, nu), x.cst(w[l]) * x.b(l));
    }
  }
  return c;
}

Report sharp_components_agreement(const SharpComponents& a, const SharpComponents& b) {
  Report r;
  r.check = "sharp_agreement";
  for (const auto& n : sharp_component_names()) {
    r.clause(n);
    const auto& va = a.at(n);
    const auto& vb = b.at(n);
    if (va.size() != vb.size()) {
      r.fail(n, "shape", "different sizes");
      continue;
    }
    for (size_t k = 0; k < va.size(); ++k)
      if (va[k] != vb[k]) r.fail(n, "section " + std::to_string(k + 1), (va[k] - vb[k]).str());
  }
  return r;
}

Report sharp_antimorphism_check(const GradedPoissonData& p, const SplitLie2Data& d) {
  const auto& gs = p.genset();
  require_same(*gs, *lie2_genset(d.nvars(), d.rank_q(), d.rank_b), "sharp_antimorphism_check");
  WeilAlgebra w = build_weil(d);
  Derivation q = compile_homological_vf(d);
  Report r;
  r.check = "sharp_antimorphism";
  r.clause("antimorphism");
  int n = atom_count(*gs);
  for (int g = 0; g < n; ++g) {
    AlgebraElement xg = atom_element(gs, g);
    Derivation lhs = graded_commutator(q, ham_atom(p, g));
    AlgebraElement lq_dg = w.lie_q.apply(w.dee.apply(weil_lift(w.gs, xg)));
    Derivation rhs = sharp_of_form(p, w, lq_dg);
    if (!rhs.is_zero()) {
      if (lhs.is_zero()) lhs = Derivation(gs, rhs.degree());
      lhs += rhs;
    }
    for (int h = 0; h < n; ++h) {
      AlgebraElement v = lhs.apply(atom_element(gs, h));
      if (!v.is_zero()) r.fail("antimorphism", "(" + atom_name(*gs, g) + "," + atom_name(*gs, h) + ")", v.str());
    }
  }
  return r;
}

Report sharp_module_check(const GradedPoissonData& p, const SplitLie2Data& d, const TMConnections& tm) {
  SharpBuild b = sharp_build(p, d, tm);
  RepOperator dad = operator_from_components(b.ad.rep);
  const RepOperator& dco = b.co.dual.op;
  Report r;
  r.check = "sharp_module";
  r.clause("module");
  for (int k = 0; k < dco.basis->size(); ++k) {
    ModuleElement v = b.map.apply(dco.values[k]) + dad.apply(b.map.values[k]);
    if (!v.is_zero()) r.fail("module", (*dco.basis)[k].name, v.str());
  }
  return r;
}

namespace {

// coefficient of a monomial-free term of c
Poly constant_part(const AlgebraElement& c) {
  if (!c.genset()) return Poly();
  return c.coefficient(Monomial(c.genset()->size(), 0));
}

// sharp0 as a matrix: rows target sections, columns source sections
std::vector<std::vector<Poly>> sharp0_matrix(const SharpMap& s, int nvars) {
  int rows = s.target->size(), cols = s.source->size();
  std::vector<std::vector<Poly>> a(rows, std::vector<Poly>(cols, Poly(nvars)));
  for (int k = 0; k < cols; ++k)
    for (const auto& [j, c] : s.values[k].terms()) a[j][k] = constant_part(c);
  return a;
}

Poly poly_det(const std::vector<std::vector<Poly>>& a, int nvars) {
  int n = static_cast<int>(a.size());
  if (n == 0) return Poly(nvars, 1);
  // Laplace along the first row, skipping zeros
  Poly out(nvars);
  for (int j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (int i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (int c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(row);
    }
    Poly t = a[0][j] * poly_det(minor, nvars);
    if (j % 2) t = -t;
    out += t;
  }
  return out;
}

ModuleElement linear_apply(const std::vector<ModuleElement>& vals, const ModuleElement& m, BasisPtr target) {
  ModuleElement out(m.genset(), target);
  for (const auto& [k, c] : m.terms()) out += c * vals.at(k);
  return out;
}

}  // namespace

SharpMap sharp_inverse(const SharpMap& s) {
  if (s.values.empty()) return {s.target, s.source, -s.degree, {}};
  GenSetPtr gs = s.values.front().genset();
  if (gs->nvars() != 0) throw std::invalid_argument("sharp_inverse is implemented over a point");
  int n = s.source->size();
  if (s.target->size() != n) throw std::invalid_argument("sharp is not square");
  auto a0 = sharp0_matrix(s, 0);
  Matrix a = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = a0[i][j].constant_term();
  auto inv = inverse(a);
  if (!inv) throw std::invalid_argument("sharp0 is singular");
  SharpMap ainv{s.target, s.source, -s.degree, {}};
  for (int j = 0; j < n; ++j) {
    ModuleElement v(gs, s.source);
    for (int k = 0; k < n; ++k)
      if ((*inv)[k][j] != 0) v.add(k, AlgebraElement::scalar(gs, (*inv)[k][j]));
    ainv.values.push_back(v);
  }
  // sharp = A + N, A^{-1} sharp = id + M, sharp^{-1} = (sum (-M)^j) A^{-1}
  std::vector<ModuleElement> mvals;
  for (int k = 0; k < n; ++k) {
    ModuleElement nk = s.values[k];
    for (const auto& [j, c] : s.values[k].terms()) {
      Poly f = constant_part(c);
      if (!f.is_zero()) nk.add(j, AlgebraElement::scalar(gs, -f));
    }
    mvals.push_back(ainv.apply(nk));
  }
  SharpMap out{s.target, s.source, -s.degree, {}};
  for (int j = 0; j < n; ++j) {
    ModuleElement term = ainv.values[j], sum = term;
    int steps = 0;
    while (!term.is_zero()) {
      if (++steps > 64) throw std::logic_error("sharp_inverse: Neumann series does not terminate");
      term = -linear_apply(mvals, term, s.source);
      sum += term;
    }
    out.values.push_back(sum);
  }
  return out;
}

Report symplectic_check(const GradedPoissonData& p, const SplitLie2Data& d, const TMConnections& tm) {
  SharpBuild b = sharp_build(p, d, tm);
  const SharpMap& s = b.map;
  int m = d.nvars(), n = s.source->size();
  Report r;
  r.check = "symplectic";
  r.clause("invertible");
  auto a = sharp0_matrix(s, m);
  bool invertible;
  if (m == 0) {
    Matrix c = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c[i][j] = a[i][j].constant_term();
    auto ker = nullspace(c, n);
    invertible = ker.empty();
    if (!invertible) {
      std::string v;
      for (int k = 0; k < n; ++k)
        if (ker[0][k] != 0) v += (v.empty() ? "" : " + ") + to_string(ker[0][k]) + "*" + (*s.source)[k].name;
      r.fail("invertible", "kernel", v);
    }
  } else {
    Poly det = poly_det(a, m);
    invertible = det.is_constant() && !det.is_zero();
    if (!invertible) r.fail("invertible", "det sharp0", det.str());
  }
  if (m == 0) {
    r.clause("inverse");
    if (!invertible) {
      r.fail("inverse", "sharp0", "singular");
    } else {
      SharpMap inv = sharp_inverse(s);
      for (int k = 0; k < n; ++k) {
        ModuleElement v = inv.apply(s.values[k]) - ModuleElement::basis_element(s.values[k].genset(), s.source, k);
        if (!v.is_zero()) r.fail("inverse", "inv o sharp on " + (*s.source)[k].name, v.str());
        ModuleElement u = s.apply(inv.values[k]) - ModuleElement::basis_element(s.values[k].genset(), s.target, k);
        if (!u.is_zero()) r.fail("inverse", "sharp o inv on " + (*s.target)[k].name, u.str());
      }
    }
  }
  return r;
}

}  // namespace l2a
