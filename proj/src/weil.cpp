#include "l2a/weil.hpp"

#include <stdexcept>
#include <string>

namespace l2a {

GenSetPtr weil_genset(int nvars, int rank_q, int rank_b) {
  std::vector<Generator> g;
  for (int a = 0; a < rank_q; ++a) g.push_back({"tau" + std::to_string(a + 1), 1, 0});
  for (int mu = 0; mu < rank_b; ++mu) g.push_back({"b" + std::to_string(mu + 1), 2, 0});
  for (int i = 0; i < nvars; ++i) g.push_back({"dx" + std::to_string(i + 1), 1, 1});
  for (int a = 0; a < rank_q; ++a) g.push_back({"dtau" + std::to_string(a + 1), 2, 1});
  for (int mu = 0; mu < rank_b; ++mu) g.push_back({"db" + std::to_string(mu + 1), 3, 1});
  return make_genset(nvars, std::move(g));
}

AlgebraElement weil_lift(const GenSetPtr& weil, const AlgebraElement& a) {
  AlgebraElement out(weil);
  for (const auto& [m, c] : a.terms()) {
    Monomial w(weil->size(), 0);
    for (size_t g = 0; g < m.size(); ++g) w[g] = m[g];
    out.add_term(w, c);
  }
  return out;
}

WeilAlgebra build_weil_from_q(const Derivation& q, int rank_q, int rank_b) {
  const auto& src = q.genset();
  if (src->size() != rank_q + rank_b || q.degree() != 1)
    throw std::invalid_argument("build_weil: expected a degree-1 vector field on Q[1] + B*[2]");
  WeilAlgebra w;
  w.nvars = src->nvars();
  w.rank_q = rank_q;
  w.rank_b = rank_b;
  w.gs = weil_genset(w.nvars, rank_q, rank_b);
  w.q = Derivation(w.gs, 1);
  w.dee = Derivation(w.gs, 1);
  w.iq = Derivation(w.gs, 0);
  for (int i = 0; i < w.nvars; ++i) {
    AlgebraElement qx = weil_lift(w.gs, q.on_base(i));
    w.q.set_base(i, qx);
    w.dee.set_base(i, AlgebraElement::generator(w.gs, w.dx(i)));
    w.iq.set_gen(w.dx(i), qx);
  }
  for (int g = 0; g < rank_q + rank_b; ++g) {
    AlgebraElement qg = weil_lift(w.gs, q.on_gen(g));
    int dg = g < rank_q ? w.dtau(g) : w.db(g - rank_q);
    w.q.set_gen(g, qg);
    w.dee.set_gen(g, AlgebraElement::generator(w.gs, dg));
    w.iq.set_gen(dg, qg);
  }
  w.lie_q = graded_commutator(w.iq, w.dee);
  return w;
}

WeilAlgebra build_weil(const SplitLie2Data& d) {
  return build_weil_from_q(compile_homological_vf(d), d.rank_q(), d.rank_b);
}

Report weil_double_complex_check(const WeilAlgebra& w) {
  Report r;
  r.check = "weil_double_complex";
  auto put = [&](const std::string& id, const SquareReport& s) {
    r.clause(id);
    for (const auto& [g, v] : s.failures) r.fail(id, g, v.str());
  };
  put("dee^2", derivation_square_check(w.dee));
  put("lieQ^2", derivation_square_check(w.lie_q));
  r.clause("[lieQ,dee]");
  Derivation c = graded_commutator(w.lie_q, w.dee);
  for (int i = 0; i < w.nvars; ++i)
    if (!c.on_base(i).is_zero()) r.fail("[lieQ,dee]", "x" + std::to_string(i + 1), c.on_base(i).str());
  for (int g = 0; g < w.gs->size(); ++g)
    if (!c.on_gen(g).is_zero()) r.fail("[lieQ,dee]", w.gs->gen(g).name, c.on_gen(g).str());
  return r;
}

namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// dim S^k of an n-dimensional space
long sym(long n, long k) { return n == 0 ? (k == 0 ? 1 : 0) : binom(n + k - 1, k); }

}  // namespace

long split_weil_dims(int nvars, int rank_q, int rank_b, int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("split_weil_dims: negative bidegree");
  long total = 0;
  // p = r + 2s + v + 2w, q = u + w + v
  for (int u = 0; u <= q; ++u)
    for (int w = 0; u + w <= q; ++w) {
      int v = q - u - w;
      int rest = p - v - 2 * w;
      for (int s = 0; 2 * s <= rest; ++s) {
        int r = rest - 2 * s;
        total += binom(nvars, u) * binom(rank_q, r) * sym(rank_q, v) * binom(rank_b, w) * sym(rank_b, s);
      }
    }
  return total;
}

long weil_monomial_count(const WeilAlgebra& w, int p, int q) {
  long n = 0;
  for (const auto& m : monomials_of_degree(*w.gs, p + q))
    if (monomial_weight(*w.gs, m) == q) ++n;
  return n;
}

namespace {

// sum_i dx_i * (nabla_{d/dx_i} g) for the degree-1 or degree-2 generator g
AlgebraElement d_nabla(const WeilAlgebra& w, const TMConnections& tm, int g) {
  AlgebraElement out(w.gs);
  for (int i = 0; i < w.nvars; ++i) {
    AlgebraElement nab(w.gs);
    if (g < w.rank_q) {
      for (int c = 0; c < w.rank_q; ++c) nab -= tm.q.G[i][c][g] * AlgebraElement::generator(w.gs, w.tau(c));
    } else {
      int mu = g - w.rank_q;
      for (int nu = 0; nu < w.rank_b; ++nu)
        nab -= tm.bdual.G[i][nu][mu] * AlgebraElement::generator(w.gs, w.b(nu));
    }
    out += AlgebraElement::generator(w.gs, w.dx(i)) * nab;
  }
  return out;
}

AlgebraElement phi_basis(const WeilAlgebra& w, const SplitLie2Data& d, const TMConnections& tm, int k) {
  int m = d.nvars(), rq = d.rank_q();
  if (k < m) return AlgebraElement::generator(w.gs, w.dx(k));
  if (k < m + rq) return AlgebraElement::generator(w.gs, w.dtau(k - m)) - d_nabla(w, tm, w.tau(k - m));
  int mu = k - m - rq;
  return AlgebraElement::generator(w.gs, w.db(mu)) - d_nabla(w, tm, w.b(mu));
}

}  // namespace

AlgebraElement coadjoint_to_weil(const WeilAlgebra& w, const SplitLie2Data& d, const TMConnections& tm,
                                 const ModuleElement& psi) {
  AlgebraElement out(w.gs);
  for (const auto& [k, c] : psi.terms()) out += weil_lift(w.gs, c) * phi_basis(w, d, tm, k);
  return out;
}

Report weil_row_vs_coadjoint_check(const SplitLie2Data& d, const TMConnections& tm) {
  WeilAlgebra w = build_weil(d);
  AdjointRep ad = build_adjoint_rep(d, tm);
  CoadjointRep co = build_coadjoint_rep(ad);
  RepOperator op = operator_from_components(co.rep);
  Report r;
  r.check = "weil_row_vs_coadjoint";
  r.clause("row");
  r.clause("dee");
  const auto& basis = *op.basis;
  for (int k = 0; k < basis.size(); ++k) {
    AlgebraElement lhs = w.lie_q.apply(phi_basis(w, d, tm, k));
    AlgebraElement rhs = coadjoint_to_weil(w, d, tm, op.values[k]);
    if (lhs != rhs) r.fail("row", basis[k].name, (lhs - rhs).str());
  }
  for (int g = 0; g < d.rank_q() + d.rank_b; ++g) {
    AlgebraElement x = AlgebraElement::generator(w.gs, g);
    int k = d.nvars() + g;
    AlgebraElement v = w.dee.apply(x) - phi_basis(w, d, tm, k) - d_nabla(w, tm, g);
    if (!v.is_zero()) r.fail("dee", w.gs->gen(g).name, v.str());
  }
  return r;
}

}  // namespace l2a
