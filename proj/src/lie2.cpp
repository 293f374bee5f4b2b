#include "l2a/lie2.hpp"

#include <sstream>
#include <stdexcept>

namespace l2a {

namespace {

std::string tuple_str(const std::vector<int>& t) {
  std::string s = "(";
  for (size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k] + 1);
  return s + ")";
}

}  // namespace

SplitLie2Data SplitLie2Data::zero(int nvars, int rank_q, int rank_b) {
  SplitLie2Data d;
  d.q = DullAlgebroidData::zero(nvars, rank_q);
  d.rank_b = rank_b;
  d.ell.assign(rank_b, std::vector<Poly>(rank_q, Poly(nvars)));
  d.nabla = Connection::zero(rank_q, rank_b, nvars);
  d.omega = FormValued::zero(3, rank_b, nvars);
  d.tm = zero_tm(nvars, rank_q, rank_b);
  return d;
}

TMConnections SplitLie2Data::zero_tm(int nvars, int rank_q, int rank_b) {
  return {Connection::zero(nvars, rank_q, nvars), Connection::zero(nvars, rank_b, nvars)};
}

void SplitLie2Data::validate() const {
  q.validate();
  int m = nvars(), rq = rank_q();
  if (static_cast<int>(ell.size()) != rank_b) throw std::invalid_argument("ell has wrong shape");
  for (const auto& row : ell)
    if (static_cast<int>(row.size()) != rq) throw std::invalid_argument("ell has wrong shape");
  auto check_conn = [](const Connection& c, int src, int rank, const std::string& what) {
    if (c.source_rank != src || c.rank != rank || static_cast<int>(c.G.size()) != src)
      throw std::invalid_argument(what + " has wrong shape");
    for (const auto& row : c.G) {
      if (static_cast<int>(row.size()) != rank) throw std::invalid_argument(what + " has wrong shape");
      for (const auto& s : row)
        if (static_cast<int>(s.size()) != rank)
          throw std::invalid_argument(what + " has wrong shape");
    }
  };
  check_conn(nabla, rq, rank_b, "nabla");
  check_conn(tm.q, m, rq, "TM-connection on Q");
  check_conn(tm.bdual, m, rank_b, "TM-connection on B*");
  if (omega.degree != 3 || omega.rank != rank_b) throw std::invalid_argument("omega has wrong shape");
  for (const auto& [t, v] : omega.values) {
    if (t.size() != 3 || !(t[0] < t[1] && t[1] < t[2]) || t[2] >= rq || t[0] < 0)
      throw std::invalid_argument("omega must be stored on increasing index triples");
    if (static_cast<int>(v.size()) != rank_b) throw std::invalid_argument("omega has wrong shape");
  }
}

Sec SplitLie2Data::ell_of(const Sec& beta) const {
  Sec out = zero_sec(rank_q(), nvars());
  for (int mu = 0; mu < rank_b; ++mu) {
    if (beta[mu].is_zero()) continue;
    for (int c = 0; c < rank_q(); ++c) out[c] += beta[mu] * ell[mu][c];
  }
  return out;
}

Sec SplitLie2Data::ell_dual(const Sec& tau) const {
  Sec out = zero_sec(rank_b, nvars());
  for (int mu = 0; mu < rank_b; ++mu)
    for (int c = 0; c < rank_q(); ++c) out[mu] += tau[c] * ell[mu][c];
  return out;
}

Sec SplitLie2Data::omega_of(const Sec& q1, const Sec& q2, const Sec& q3) const {
  return omega.eval({q1, q2, q3});
}

bool same_structure(const SplitLie2Data& a, const SplitLie2Data& b) {
  if (a.nvars() != b.nvars() || a.rank_q() != b.rank_q() || a.rank_b != b.rank_b) return false;
  return a.q.rho == b.q.rho && a.q.C == b.q.C && a.ell == b.ell && a.nabla.G == b.nabla.G &&
         a.omega.values == b.omega.values;
}

GenSetPtr lie2_genset(int nvars, int rank_q, int rank_b) {
  std::vector<Generator> g;
  for (int a = 0; a < rank_q; ++a) g.push_back({"tau" + std::to_string(a + 1), 1});
  for (int mu = 0; mu < rank_b; ++mu) g.push_back({"b" + std::to_string(mu + 1), 2});
  return make_genset(nvars, std::move(g));
}

Report lie2_axioms_check(const SplitLie2Data& d) {
  d.validate();
  int m = d.nvars(), rq = d.rank_q(), rb = d.rank_b;
  Report r;
  r.check = "lie2_axioms";
  r.absorb(anchor_compat_check(d.q), "dull");
  for (const char* id : {"i", "ii", "iii", "iv", "v"}) r.clause(id);
  Connection ns = d.nabla_dual();
  auto q = [&](int a) { return basis_sec(rq, m, a); };
  auto beta = [&](int mu) { return basis_sec(rb, m, mu); };
  auto nstar = [&](const Sec& s, const Sec& b) { return covariant(d.q, ns, s, b); };

  for (int mu = 0; mu < rb; ++mu) {
    Sec x = d.q.anchor(d.ell_of(beta(mu)));
    if (!is_zero(x)) r.fail("i", "rho(ell(beta" + std::to_string(mu + 1) + "))", sec_str(x, "dx"));
    for (int nu = mu; nu < rb; ++nu) {
      Sec v = nstar(d.ell_of(beta(mu)), beta(nu)) + nstar(d.ell_of(beta(nu)), beta(mu));
      if (!is_zero(v)) r.fail("i", "beta" + tuple_str({mu, nu}), sec_str(v, "beta"));
    }
  }
  for (int a = 0; a < rq; ++a)
    for (int mu = 0; mu < rb; ++mu) {
      Sec v = d.q.bracket(q(a), d.ell_of(beta(mu))) - d.ell_of(nstar(q(a), beta(mu)));
      if (!is_zero(v))
        r.fail("ii", "q" + std::to_string(a + 1) + " beta" + std::to_string(mu + 1), sec_str(v, "q"));
    }
  for (int a = 0; a < rq; ++a)
    for (int b = 0; b < rq; ++b)
      for (int c = 0; c < rq; ++c) {
        Sec v = d.q.jacobiator(q(a), q(b), q(c)) - d.ell_of(d.omega_of(q(a), q(b), q(c)));
        if (!is_zero(v)) r.fail("iii", "q" + tuple_str({a, b, c}), sec_str(v, "q"));
      }
  EndForm2 curv = curvature(d.q, ns);
  for (int a = 0; a < rq; ++a)
    for (int b = a + 1; b < rq; ++b)
      for (int mu = 0; mu < rb; ++mu) {
        Sec v = curvature_apply(curv, a, b, beta(mu), m, rb) -
                d.omega_of(q(a), q(b), d.ell_of(beta(mu)));
        if (!is_zero(v))
          r.fail("iv", "q" + tuple_str({a, b}) + " beta" + std::to_string(mu + 1),
                 sec_str(v, "beta"));
      }
  FormValued dw = koszul_d(d.q, ns, d.omega);
  for (const auto& [t, v] : dw.values) r.fail("v", "q" + tuple_str(t), sec_str(v, "beta"));
  return r;
}

Derivation compile_homological_vf(const SplitLie2Data& d) {
  d.validate();
  int m = d.nvars(), rq = d.rank_q(), rb = d.rank_b;
  GenSetPtr gs = lie2_genset(m, rq, rb);
  Derivation Q(gs, 1);
  auto mono = [&](std::initializer_list<int> gens, const Poly& c) {
    Monomial mo(gs->size(), 0);
    for (int g : gens) mo[g] += 1;
    return AlgebraElement::monomial(gs, mo, c);
  };
  auto tau = [](int a) { return a; };
  auto b = [&](int mu) { return rq + mu; };
  for (int i = 0; i < m; ++i) {
    AlgebraElement v(gs);
    for (int a = 0; a < rq; ++a) v += mono({tau(a)}, d.q.rho[a][i]);
    Q.set_base(i, v);
  }
  for (int c = 0; c < rq; ++c) {
    AlgebraElement v(gs);
    for (int a = 0; a < rq; ++a)
      for (int bb = a + 1; bb < rq; ++bb) v += mono({tau(a), tau(bb)}, -d.q.C[a][bb][c]);
    for (int mu = 0; mu < rb; ++mu) v += mono({b(mu)}, d.ell[mu][c]);
    Q.set_gen(tau(c), v);
  }
  for (int mu = 0; mu < rb; ++mu) {
    AlgebraElement v(gs);
    for (int a = 0; a < rq; ++a)
      for (int nu = 0; nu < rb; ++nu) v += mono({tau(a), b(nu)}, d.nabla.G[a][mu][nu]);
    for (const auto& [t, w] : d.omega.values)
      v += mono({tau(t[0]), tau(t[1]), tau(t[2])}, Rational(kOmegaSign) * w[mu]);
    Q.set_gen(b(mu), v);
  }
  return Q;
}

Report q_square_check(const SplitLie2Data& d) {
  Report r;
  r.check = "q_square";
  r.clause("Q^2");
  auto sq = derivation_square_check(compile_homological_vf(d));
  for (const auto& [g, v] : sq.failures) r.fail("Q^2", g, v.str());
  return r;
}

SplitLie2Data extract_data_from_vf(const Derivation& Q, int rank_q, int rank_b) {
  const auto& gs = Q.genset();
  int m = gs->nvars();
  if (Q.degree() != 1) throw std::invalid_argument("homological vector field must have degree 1");
  if (gs->size() != rank_q + rank_b) throw std::invalid_argument("generator count mismatch");
  for (int a = 0; a < rank_q; ++a)
    if (gs->degree(a) != 1) throw std::invalid_argument("expected degree-1 generators first");
  for (int mu = 0; mu < rank_b; ++mu)
    if (gs->degree(rank_q + mu) != 2) throw std::invalid_argument("expected degree-2 generators last");
  SplitLie2Data d = SplitLie2Data::zero(m, rank_q, rank_b);
  auto shape_error = [&](const std::string& where, const Monomial& mo) {
    return std::invalid_argument("Q(" + where + ") has a term " + monomial_str(*gs, mo) +
                                 " outside the split Lie 2-algebroid shape");
  };
  auto split = [&](const Monomial& mo, std::vector<int>& taus, std::vector<int>& bs) {
    for (int g = 0; g < gs->size(); ++g)
      for (int k = 0; k < mo[g]; ++k) (g < rank_q ? taus : bs).push_back(g < rank_q ? g : g - rank_q);
  };
  for (int i = 0; i < m; ++i)
    for (const auto& [mo, c] : Q.on_base(i).terms()) {
      std::vector<int> t, b;
      split(mo, t, b);
      if (t.size() != 1 || !b.empty()) throw shape_error("x" + std::to_string(i + 1), mo);
      d.q.rho[t[0]][i] = c;
    }
  for (int c = 0; c < rank_q; ++c)
    for (const auto& [mo, v] : Q.on_gen(c).terms()) {
      std::vector<int> t, b;
      split(mo, t, b);
      if (t.size() == 2 && b.empty()) {
        d.q.C[t[0]][t[1]][c] = -v;
        d.q.C[t[1]][t[0]][c] = v;
      } else if (t.empty() && b.size() == 1) {
        d.ell[b[0]][c] = v;
      } else {
        throw shape_error(gs->gen(c).name, mo);
      }
    }
  for (int mu = 0; mu < rank_b; ++mu)
    for (const auto& [mo, v] : Q.on_gen(rank_q + mu).terms()) {
      std::vector<int> t, b;
      split(mo, t, b);
      if (t.size() == 1 && b.size() == 1) {
        d.nabla.G[t[0]][mu][b[0]] = v;
      } else if (t.size() == 3 && b.empty()) {
        Sec w = d.omega.at(t);
        w[mu] = Rational(kOmegaSign) * v;
        d.omega.set(t, w);
      } else {
        throw shape_error(gs->gen(rank_q + mu).name, mo);
      }
    }
  return d;
}

// ------------------------------------------------------------ Lie 2-algebras

Lie2AlgebraData Lie2AlgebraData::zero(int dim0, int dim1) {
  Lie2AlgebraData a;
  a.dim0 = dim0;
  a.dim1 = dim1;
  Rational z(0);
  a.ell.assign(dim0, std::vector<Rational>(dim1, z));
  a.br.assign(dim1, std::vector<std::vector<Rational>>(dim1, std::vector<Rational>(dim1, z)));
  a.act.assign(dim1, std::vector<std::vector<Rational>>(dim0, std::vector<Rational>(dim0, z)));
  a.tri.assign(dim1, std::vector<std::vector<std::vector<Rational>>>(
                         dim1, std::vector<std::vector<Rational>>(dim1, std::vector<Rational>(dim0, z))));
  return a;
}

void Lie2AlgebraData::validate() const {
  for (int a = 0; a < dim1; ++a)
    for (int b = 0; b < dim1; ++b)
      for (int c = 0; c < dim1; ++c)
        if (br[a][b][c] != -br[b][a][c])
          throw std::invalid_argument("binary bracket is not antisymmetric");
  for (int a = 0; a < dim1; ++a)
    for (int b = 0; b < dim1; ++b)
      for (int c = 0; c < dim1; ++c)
        for (int mu = 0; mu < dim0; ++mu) {
          const Rational& v = tri[a][b][c][mu];
          if (v != -tri[b][a][c][mu] || v != -tri[a][c][b][mu])
            throw std::invalid_argument("ternary bracket is not antisymmetric");
        }
}

namespace {

using RVec = std::vector<Rational>;

RVec rzero(int n) { return RVec(n, Rational(0)); }

RVec runit(int n, int i) {
  RVec v = rzero(n);
  v[i] = 1;
  return v;
}

RVec radd(RVec a, const RVec& b, const Rational& s = 1) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

bool rzero_p(const RVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::string rvec_str(const RVec& v, const std::string& prefix) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << to_string(v[i]) << "*" << prefix << (i + 1);
  }
  return first ? "0" : os.str();
}

struct L2Ops {
  const Lie2AlgebraData& a;
  RVec br(const RVec& u, const RVec& v) const {
    RVec out = rzero(a.dim1);
    for (int i = 0; i < a.dim1; ++i)
      for (int j = 0; j < a.dim1; ++j) {
        if (u[i] == 0 || v[j] == 0) continue;
        for (int k = 0; k < a.dim1; ++k) out[k] += u[i] * v[j] * a.br[i][j][k];
      }
    return out;
  }
  RVec act(const RVec& x, const RVec& y) const {
    RVec out = rzero(a.dim0);
    for (int i = 0; i < a.dim1; ++i)
      for (int mu = 0; mu < a.dim0; ++mu) {
        if (x[i] == 0 || y[mu] == 0) continue;
        for (int nu = 0; nu < a.dim0; ++nu) out[nu] += x[i] * y[mu] * a.act[i][mu][nu];
      }
    return out;
  }
  RVec ell(const RVec& y) const {
    RVec out = rzero(a.dim1);
    for (int mu = 0; mu < a.dim0; ++mu)
      for (int c = 0; c < a.dim1; ++c) out[c] += y[mu] * a.ell[mu][c];
    return out;
  }
  RVec tri(const RVec& u, const RVec& v, const RVec& w) const {
    RVec out = rzero(a.dim0);
    for (int i = 0; i < a.dim1; ++i)
      for (int j = 0; j < a.dim1; ++j)
        for (int k = 0; k < a.dim1; ++k) {
          Rational f = u[i] * v[j] * w[k];
          if (f == 0) continue;
          for (int mu = 0; mu < a.dim0; ++mu) out[mu] += f * a.tri[i][j][k][mu];
        }
    return out;
  }
};

}  // namespace

Report lie2_algebra_axioms_check(const Lie2AlgebraData& a) {
  a.validate();
  L2Ops op{a};
  int n0 = a.dim0, n1 = a.dim1;
  auto x = [&](int i) { return runit(n1, i); };
  auto y = [&](int mu) { return runit(n0, mu); };
  Report r;
  r.check = "lie2_algebra";
  for (const char* id : {"1", "2", "3", "4", "5"}) r.clause(id);
  for (int mu = 0; mu < n0; ++mu)
    for (int nu = mu; nu < n0; ++nu) {
      RVec v = radd(op.act(op.ell(y(mu)), y(nu)), op.act(op.ell(y(nu)), y(mu)));
      if (!rzero_p(v)) r.fail("1", "y" + tuple_str({mu, nu}), rvec_str(v, "y"));
    }
  for (int i = 0; i < n1; ++i)
    for (int mu = 0; mu < n0; ++mu) {
      RVec v = radd(op.br(x(i), op.ell(y(mu))), op.ell(op.act(x(i), y(mu))), -1);
      if (!rzero_p(v)) r.fail("2", "x" + std::to_string(i + 1) + " y" + std::to_string(mu + 1), rvec_str(v, "x"));
    }
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n1; ++k) {
        RVec jac = radd(radd(op.br(x(i), op.br(x(j), x(k))), op.br(op.br(x(i), x(j)), x(k)), -1),
                        op.br(x(j), op.br(x(i), x(k))), -1);
        RVec v = radd(jac, op.ell(op.tri(x(i), x(j), x(k))), -1);
        if (!rzero_p(v)) r.fail("3", "x" + tuple_str({i, j, k}), rvec_str(v, "x"));
      }
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int mu = 0; mu < n0; ++mu) {
        RVec v = op.act(x(i), op.act(x(j), y(mu)));
        v = radd(v, op.act(x(j), op.act(x(i), y(mu))), -1);
        v = radd(v, op.act(op.br(x(i), x(j)), y(mu)), -1);
        v = radd(v, op.tri(x(i), x(j), op.ell(y(mu))));
        if (!rzero_p(v)) r.fail("4", "x" + tuple_str({i, j}) + " y" + std::to_string(mu + 1), rvec_str(v, "y"));
      }
  for (const auto& t : increasing_tuples(n1, 4)) {
    std::vector<RVec> xs;
    for (int i : t) xs.push_back(x(i));
    RVec v = rzero(n0);
    for (int i = 0; i < 4; ++i) {
      std::vector<RVec> rest;
      for (int j = 0; j < 4; ++j)
        if (j != i) rest.push_back(xs[j]);
      v = radd(v, op.act(xs[i], op.tri(rest[0], rest[1], rest[2])), i % 2 ? -1 : 1);
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        std::vector<RVec> rest;
        for (int k = 0; k < 4; ++k)
          if (k != i && k != j) rest.push_back(xs[k]);
        v = radd(v, op.tri(op.br(xs[i], xs[j]), rest[0], rest[1]), (i + j) % 2 ? -1 : 1);
      }
    if (!rzero_p(v)) r.fail("5", "x" + tuple_str(t), rvec_str(v, "y"));
  }
  return r;
}

SplitLie2Data embed_lie2_algebra(const Lie2AlgebraData& a, const std::string& name) {
  a.validate();
  SplitLie2Data d = SplitLie2Data::zero(0, a.dim1, a.dim0);
  d.name = name;
  for (int i = 0; i < a.dim1; ++i)
    for (int j = 0; j < a.dim1; ++j)
      for (int k = 0; k < a.dim1; ++k) d.q.C[i][j][k] = Poly(0, a.br[i][j][k]);
  for (int mu = 0; mu < a.dim0; ++mu)
    for (int c = 0; c < a.dim1; ++c) d.ell[mu][c] = Poly(0, a.ell[mu][c]);
  // nabla*_{x_a} y_nu = sum_mu act[a][nu][mu] y_mu, so nabla on B is minus the transpose
  for (int i = 0; i < a.dim1; ++i)
    for (int mu = 0; mu < a.dim0; ++mu)
      for (int nu = 0; nu < a.dim0; ++nu) d.nabla.G[i][mu][nu] = Poly(0, -a.act[i][nu][mu]);
  for (const auto& t : increasing_tuples(a.dim1, 3)) {
    Sec w = zero_sec(a.dim0, 0);
    for (int mu = 0; mu < a.dim0; ++mu) w[mu] = Poly(0, a.tri[t[0]][t[1]][t[2]][mu]);
    d.omega.set(t, w);
  }
  return d;
}

bool lie_jacobi_holds(const StructureConstants& c) {
  Lie2AlgebraData a = Lie2AlgebraData::zero(0, static_cast<int>(c.size()));
  a.br = c;
  return lie2_algebra_axioms_check(a).pass();
}

StructureConstants abelian_constants(int n) {
  return StructureConstants(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
}

StructureConstants aff1_constants() {
  auto c = abelian_constants(2);
  c[0][1][1] = 1;  // [u, v] = v
  c[1][0][1] = -1;
  return c;
}

StructureConstants so3_constants() {
  auto c = abelian_constants(3);
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, k = (a + 2) % 3;
    c[a][b][k] = 1;
    c[b][a][k] = -1;
  }
  return c;
}

DerivationLie2 build_derivation_lie2(const StructureConstants& c) {
  int n = static_cast<int>(c.size());
  if (!lie_jacobi_holds(c)) throw std::invalid_argument("structure constants violate Jacobi");
  // unknown D[i][j] (D e_j = sum_i D[i][j] e_i) at column i*n + j
  Matrix sys;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        std::vector<Rational> row(n * n, Rational(0));
        for (int cc = 0; cc < n; ++cc) row[k * n + cc] += c[a][b][cc];
        for (int i = 0; i < n; ++i) {
          row[i * n + a] -= c[i][b][k];
          row[i * n + b] -= c[a][i][k];
        }
        sys.push_back(std::move(row));
      }
  auto null = nullspace(sys, n * n);
  DerivationLie2 out;
  for (const auto& v : null) {
    Matrix d = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = v[i * n + j];
    out.derivations.push_back(d);
  }
  int dim = static_cast<int>(out.derivations.size());
  // coordinates of a matrix in the derivation basis
  Matrix basis_cols = zero_matrix(n * n, dim);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) basis_cols[i * n + j][k] = out.derivations[k][i][j];
  auto coords = [&](const Matrix& mtx) {
    std::vector<Rational> rhs(n * n, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rhs[i * n + j] = mtx[i][j];
    auto sol = solve(basis_cols, rhs, dim);
    if (!sol) throw std::logic_error("matrix is not a derivation");
    return *sol;
  };
  Lie2AlgebraData& a = out.algebra;
  a = Lie2AlgebraData::zero(n, dim);
  for (int mu = 0; mu < n; ++mu) {
    Matrix ad = zero_matrix(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) ad[i][j] = c[mu][j][i];
    a.ell[mu] = coords(ad);
  }
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) {
      Matrix ab = matmul(out.derivations[p], out.derivations[q]);
      Matrix ba = matmul(out.derivations[q], out.derivations[p]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ab[i][j] -= ba[i][j];
      a.br[p][q] = coords(ab);
    }
  for (int p = 0; p < dim; ++p)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) a.act[p][mu][nu] = out.derivations[p][nu][mu];
  return out;
}

SplitLie2Data change_splitting(const SplitLie2Data& d, const FormValued& sigma) {
  d.validate();
  int m = d.nvars(), rq = d.rank_q(), rb = d.rank_b;
  if (sigma.degree != 2 || sigma.rank != rb) throw std::invalid_argument("sigma must be a B*-valued 2-form");
  for (const auto& [t, v] : sigma.values)
    if (t.size() != 2 || t[0] >= t[1]) throw std::invalid_argument("sigma must be stored on increasing pairs");
  SplitLie2Data out = d;
  for (int a = 0; a < rq; ++a)
    for (int b = 0; b < rq; ++b) {
      Sec s = sigma.at({a, b});
      Sec ls = d.ell_of(s);
      for (int c = 0; c < rq; ++c) out.q.C[a][b][c] -= ls[c];
    }
  Connection ns = d.nabla_dual();
  for (int a = 0; a < rq; ++a)
    for (int nu = 0; nu < rb; ++nu) {
      Sec lb = d.ell_of(basis_sec(rb, m, nu));
      Sec corr = sigma.eval({basis_sec(rq, m, a), lb});
      ns.G[a][nu] = ns.G[a][nu] - corr;
    }
  out.nabla = dual_connection(ns);
  FormValued ds = koszul_d(out.q, d.nabla_dual(), sigma);
  for (const auto& t : increasing_tuples(rq, 3)) out.omega.set(t, d.omega.at(t) - ds.at(t));
  return out;
}

std::vector<AlgebraElement> splitting_substitution(const SplitLie2Data& d, const FormValued& sigma,
                                                   int sign) {
  GenSetPtr gs = lie2_genset(d.nvars(), d.rank_q(), d.rank_b);
  int rq = d.rank_q();
  std::vector<AlgebraElement> out;
  for (int a = 0; a < rq; ++a) out.push_back(AlgebraElement::generator(gs, a));
  for (int mu = 0; mu < d.rank_b; ++mu) {
    AlgebraElement e = AlgebraElement::generator(gs, rq + mu);
    for (const auto& [t, v] : sigma.values) {
      Monomial m(gs->size(), 0);
      m[t[0]] = 1;
      m[t[1]] = 1;
      e += AlgebraElement::monomial(gs, m, sign < 0 ? -v[mu] : v[mu]);
    }
    out.push_back(e);
  }
  return out;
}

FormValued random_sigma(const SplitLie2Data& d, std::mt19937_64& rng) {
  FormValued s = FormValued::zero(2, d.rank_b, d.nvars());
  std::uniform_int_distribution<int> coin(0, 2);
  for (const auto& t : increasing_tuples(d.rank_q(), 2)) {
    Sec v = zero_sec(d.rank_b, d.nvars());
    for (int mu = 0; mu < d.rank_b; ++mu)
      if (coin(rng)) v[mu] = Poly(d.nvars(), random_rational(rng));
    s.set(t, v);
  }
  return s;
}

// ----------------------------------------------------------------- fixtures

SplitLie2Data fx_abelian() {
  SplitLie2Data d = SplitLie2Data::zero(1, 2, 1);
  d.name = "FX-ABELIAN";
  return d;
}

SplitLie2Data fx_aff1der() {
  return embed_lie2_algebra(build_derivation_lie2(aff1_constants()).algebra, "FX-AFF1DER");
}

SplitLie2Data fx_string_so3() {
  SplitLie2Data d = SplitLie2Data::zero(0, 3, 1);
  d.name = "FX-STRING-SO3";
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) d.q.C[a][b][c] = Poly(0, so3_constants()[a][b][c]);
  // Killing form of so(3) is -2 delta, so <[e1,e2],e3> = -2
  d.omega.set({0, 1, 2}, {Poly(0, -2)});
  return d;
}

SplitLie2Data fx_tangent_r2() {
  SplitLie2Data d = SplitLie2Data::zero(2, 2, 0);
  d.name = "FX-TANGENT-R2";
  d.q = DullAlgebroidData::tangent(2);
  d.tm.q.G[0][1][0] = Poly::parse("x1", 2);
  return d;
}

TMConnections fx_tangent_r2_alt() { return SplitLie2Data::zero_tm(2, 2, 0); }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 3), den(1, 3), sgn(0, 1);
  Rational r(num(rng), den(rng));
  return sgn(rng) ? -r : r;
}

SplitLie2Data mutate(const SplitLie2Data& d, std::mt19937_64& rng, std::string* description) {
  int m = d.nvars(), rq = d.rank_q(), rb = d.rank_b;
  std::vector<std::string> kinds;
  if (m > 0 && rq > 0) kinds.push_back("anchor");
  if (rq >= 2) kinds.push_back("bracket");
  if (rq > 0 && rb > 0) kinds.push_back("ell");
  if (rq > 0 && rb > 0) kinds.push_back("nabla");
  if (rq >= 3 && rb > 0) kinds.push_back("omega");
  if (kinds.empty()) throw std::invalid_argument("nothing to mutate");
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::string kind = kinds[pick(static_cast<int>(kinds.size()))];
  Poly delta(m, random_rational(rng));
  if (m > 0 && pick(2)) delta = delta * Poly::variable(m, pick(m));
  SplitLie2Data out = d;
  std::ostringstream os;
  if (kind == "anchor") {
    int a = pick(rq), i = pick(m);
    out.q.rho[a][i] += delta;
    os << "anchor[" << a + 1 << "][" << i + 1 << "]";
  } else if (kind == "bracket") {
    int a = pick(rq), b = pick(rq - 1), c = pick(rq);
    if (b >= a) ++b;
    out.q.C[a][b][c] += delta;
    out.q.C[b][a][c] -= delta;
    os << "bracket[" << a + 1 << "][" << b + 1 << "][" << c + 1 << "]";
  } else if (kind == "ell") {
    int mu = pick(rb), c = pick(rq);
    out.ell[mu][c] += delta;
    os << "ell[" << mu + 1 << "][" << c + 1 << "]";
  } else if (kind == "nabla") {
    int a = pick(rq), mu = pick(rb), nu = pick(rb);
    out.nabla.G[a][mu][nu] += delta;
    os << "nabla[" << a + 1 << "][" << mu + 1 << "][" << nu + 1 << "]";
  } else {
    auto triples = increasing_tuples(rq, 3);
    auto t = triples[pick(static_cast<int>(triples.size()))];
    int mu = pick(rb);
    Sec w = out.omega.at(t);
    w[mu] += delta;
    out.omega.set(t, w);
    os << "omega[" << t[0] + 1 << "][" << t[1] + 1 << "][" << t[2] + 1 << "][" << mu + 1 << "]";
  }
  os << " += " << delta.str();
  if (description) *description = os.str();
  return out;
}

}  // namespace l2a
