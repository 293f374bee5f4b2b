#include "l2a/algebroid.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace l2a {

Sec zero_sec(int rank, int nvars) { return Sec(rank, Poly(nvars)); }

Sec basis_sec(int rank, int nvars, int a) {
  Sec s = zero_sec(rank, nvars);
  s.at(a) = Poly(nvars, 1);
  return s;
}

Sec operator+(Sec a, const Sec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("section rank mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Sec operator-(Sec a, const Sec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("section rank mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Sec operator-(Sec a) {
  for (auto& p : a) p = -p;
  return a;
}

Sec operator*(const Poly& f, Sec s) {
  for (auto& p : s) p = f * p;
  return s;
}

bool is_zero(const Sec& s) {
  for (const auto& p : s)
    if (!p.is_zero()) return false;
  return true;
}

std::string sec_str(const Sec& s, const std::string& prefix) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << s[i].str() << ")*" << prefix << (i + 1);
  }
  return first ? "0" : os.str();
}

Poly vf_apply(const Sec& x, const Poly& f) {
  Poly out(f.nvars());
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out += x[i] * f.partial(static_cast<int>(i));
  return out;
}

Sec vf_bracket(const Sec& x, const Sec& y) {
  Sec out(x.size());
  for (size_t j = 0; j < x.size(); ++j) out[j] = vf_apply(x, y[j]) - vf_apply(y, x[j]);
  return out;
}

DullAlgebroidData DullAlgebroidData::zero(int nvars, int rank) {
  DullAlgebroidData d;
  d.nvars = nvars;
  d.rank = rank;
  d.rho.assign(rank, std::vector<Poly>(nvars, Poly(nvars)));
  d.C.assign(rank, std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, Poly(nvars))));
  return d;
}

DullAlgebroidData DullAlgebroidData::tangent(int nvars) {
  DullAlgebroidData d = zero(nvars, nvars);
  for (int i = 0; i < nvars; ++i) d.rho[i][i] = Poly(nvars, 1);
  return d;
}

void DullAlgebroidData::validate() const {
  if (static_cast<int>(rho.size()) != rank) throw std::invalid_argument("anchor has wrong shape");
  for (const auto& r : rho)
    if (static_cast<int>(r.size()) != nvars) throw std::invalid_argument("anchor has wrong shape");
  if (static_cast<int>(C.size()) != rank) throw std::invalid_argument("bracket has wrong shape");
  for (int a = 0; a < rank; ++a) {
    if (static_cast<int>(C[a].size()) != rank) throw std::invalid_argument("bracket has wrong shape");
    for (int b = 0; b < rank; ++b) {
      if (static_cast<int>(C[a][b].size()) != rank)
        throw std::invalid_argument("bracket has wrong shape");
      for (int c = 0; c < rank; ++c)
        if (C[a][b][c] != -C[b][a][c])
          throw std::invalid_argument("bracket is not skew-symmetric at (" + std::to_string(a + 1) +
                                      "," + std::to_string(b + 1) + ")");
    }
  }
}

Sec DullAlgebroidData::anchor(const Sec& s) const {
  Sec out = zero_sec(nvars, nvars);
  for (int a = 0; a < rank; ++a) {
    if (s[a].is_zero()) continue;
    for (int i = 0; i < nvars; ++i) out[i] += s[a] * rho[a][i];
  }
  return out;
}

Poly DullAlgebroidData::act(const Sec& s, const Poly& f) const { return vf_apply(anchor(s), f); }

Sec DullAlgebroidData::bracket(const Sec& s1, const Sec& s2) const {
  Sec out = zero_sec(rank, nvars);
  for (int a = 0; a < rank; ++a) {
    if (s1[a].is_zero()) continue;
    for (int b = 0; b < rank; ++b) {
      if (s2[b].is_zero()) continue;
      Poly f = s1[a] * s2[b];
      for (int c = 0; c < rank; ++c)
        if (!C[a][b][c].is_zero()) out[c] += f * C[a][b][c];
    }
  }
  // Leibniz parts: rho(s1) s2 - rho(s2) s1
  Sec x1 = anchor(s1), x2 = anchor(s2);
  for (int c = 0; c < rank; ++c) out[c] += vf_apply(x1, s2[c]) - vf_apply(x2, s1[c]);
  return out;
}

Sec DullAlgebroidData::jacobiator(const Sec& s1, const Sec& s2, const Sec& s3) const {
  return bracket(s1, bracket(s2, s3)) - bracket(bracket(s1, s2), s3) -
         bracket(s2, bracket(s1, s3));
}

Sec jacobiator(const DullAlgebroidData& d, int a, int b, int c) {
  return d.jacobiator(basis_sec(d.rank, d.nvars, a), basis_sec(d.rank, d.nvars, b),
                      basis_sec(d.rank, d.nvars, c));
}

namespace {

std::string tuple_str(const std::vector<int>& t) {
  std::string s = "(";
  for (size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k] + 1);
  return s + ")";
}

}  // namespace

Report anchor_compat_check(const DullAlgebroidData& d) {
  d.validate();
  Report r;
  r.check = "anchor";
  r.clause("anchor_bracket");
  for (int a = 0; a < d.rank; ++a)
    for (int b = a + 1; b < d.rank; ++b) {
      Sec ea = basis_sec(d.rank, d.nvars, a), eb = basis_sec(d.rank, d.nvars, b);
      Sec defect = d.anchor(d.bracket(ea, eb)) - vf_bracket(d.anchor(ea), d.anchor(eb));
      if (!is_zero(defect)) r.fail("anchor_bracket", "q" + tuple_str({a, b}), sec_str(defect, "dx"));
    }
  return r;
}

Connection Connection::zero(int source_rank, int rank, int nvars) {
  Connection c;
  c.source_rank = source_rank;
  c.rank = rank;
  c.G.assign(source_rank, std::vector<Sec>(rank, zero_sec(rank, nvars)));
  return c;
}

Sec covariant(const DullAlgebroidData& src, const Connection& c, const Sec& s, const Sec& e) {
  if (static_cast<int>(s.size()) != c.source_rank || static_cast<int>(e.size()) != c.rank)
    throw std::invalid_argument("covariant: rank mismatch");
  Sec x = src.anchor(s);
  Sec out(c.rank);
  for (int beta = 0; beta < c.rank; ++beta) out[beta] = vf_apply(x, e[beta]);
  for (int a = 0; a < c.source_rank; ++a) {
    if (s[a].is_zero()) continue;
    for (int alpha = 0; alpha < c.rank; ++alpha) {
      if (e[alpha].is_zero()) continue;
      Poly f = s[a] * e[alpha];
      for (int beta = 0; beta < c.rank; ++beta)
        if (!c.G[a][alpha][beta].is_zero()) out[beta] += f * c.G[a][alpha][beta];
    }
  }
  return out;
}

Connection dual_connection(const Connection& c) {
  Connection d = c;
  for (int a = 0; a < c.source_rank; ++a)
    for (int beta = 0; beta < c.rank; ++beta)
      for (int alpha = 0; alpha < c.rank; ++alpha) d.G[a][beta][alpha] = -c.G[a][alpha][beta];
  return d;
}

FormValued FormValued::zero(int degree, int rank, int nvars) {
  FormValued f;
  f.degree = degree;
  f.rank = rank;
  f.nvars = nvars;
  return f;
}

Sec FormValued::at(const std::vector<int>& args) const {
  std::vector<int> t = args;
  int sign = 1;
  for (size_t p = 0; p < t.size(); ++p)
    for (size_t k = 0; k + 1 < t.size(); ++k)
      if (t[k] > t[k + 1]) {
        std::swap(t[k], t[k + 1]);
        sign = -sign;
      }
  for (size_t k = 0; k + 1 < t.size(); ++k)
    if (t[k] == t[k + 1]) return zero_sec(rank, nvars);
  auto it = values.find(t);
  if (it == values.end()) return zero_sec(rank, nvars);
  return sign > 0 ? it->second : -it->second;
}

void FormValued::set(const std::vector<int>& sorted_args, Sec v) {
  if (is_zero(v))
    values.erase(sorted_args);
  else
    values[sorted_args] = std::move(v);
}

Sec FormValued::eval(const std::vector<Sec>& args) const {
  if (static_cast<int>(args.size()) != degree) throw std::invalid_argument("form arity mismatch");
  Sec out = zero_sec(rank, nvars);
  std::vector<int> idx;
  std::function<void(size_t, Poly)> rec = [&](size_t k, Poly coeff) {
    if (k == args.size()) {
      Sec v = at(idx);
      if (!is_zero(v)) out = out + coeff * v;
      return;
    }
    for (size_t a = 0; a < args[k].size(); ++a) {
      if (args[k][a].is_zero()) continue;
      idx.push_back(static_cast<int>(a));
      rec(k + 1, coeff * args[k][a]);
      idx.pop_back();
    }
  };
  rec(0, Poly(nvars, 1));
  return out;
}

bool FormValued::operator==(const FormValued& o) const {
  return degree == o.degree && rank == o.rank && values == o.values;
}

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> t;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(t.size()) == k) {
      out.push_back(t);
      return;
    }
    for (int i = start; i < n; ++i) {
      t.push_back(i);
      rec(i + 1);
      t.pop_back();
    }
  };
  rec(0);
  return out;
}

FormValued koszul_d(const DullAlgebroidData& src, const Connection& conn, const FormValued& tau) {
  if (tau.rank != conn.rank) throw std::invalid_argument("koszul_d: value bundle mismatch");
  int k = tau.degree;
  int n = src.rank;
  FormValued out = FormValued::zero(k + 1, tau.rank, src.nvars);
  for (const auto& t : increasing_tuples(n, k + 1)) {
    std::vector<Sec> s;
    for (int a : t) s.push_back(basis_sec(n, src.nvars, a));
    Sec v = zero_sec(tau.rank, src.nvars);
    for (int i = 0; i <= k; ++i) {
      std::vector<Sec> rest;
      for (int j = 0; j <= k; ++j)
        if (j != i) rest.push_back(s[j]);
      Sec term = covariant(src, conn, s[i], tau.eval(rest));
      v = (i % 2 == 0) ? v + term : v - term;
    }
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        std::vector<Sec> rest{src.bracket(s[i], s[j])};
        for (int l = 0; l <= k; ++l)
          if (l != i && l != j) rest.push_back(s[l]);
        Sec term = tau.eval(rest);
        v = ((i + j) % 2 == 0) ? v + term : v - term;
      }
    out.set(t, v);
  }
  return out;
}

FormValued wedge_forms(int n, const FormValued& scalar, const FormValued& tau) {
  if (scalar.rank != 1) throw std::invalid_argument("wedge_forms: first factor must be scalar");
  int k = scalar.degree, l = tau.degree;
  FormValued out = FormValued::zero(k + l, tau.rank, tau.nvars);
  for (const auto& t : increasing_tuples(n, k + l)) {
    Sec v = zero_sec(tau.rank, tau.nvars);
    // shuffles: choose the positions fed to the scalar factor
    for (const auto& pos : increasing_tuples(k + l, k)) {
      std::vector<int> first, second;
      std::vector<bool> used(k + l, false);
      int inversions = 0;
      for (size_t p = 0; p < pos.size(); ++p) {
        first.push_back(t[pos[p]]);
        used[pos[p]] = true;
        inversions += pos[p] - static_cast<int>(p);
      }
      for (int q = 0; q < k + l; ++q)
        if (!used[q]) second.push_back(t[q]);
      Poly a = scalar.at(first)[0];
      if (a.is_zero()) continue;
      Sec term = a * tau.at(second);
      v = inversions % 2 ? v - term : v + term;
    }
    out.set(t, v);
  }
  return out;
}

EndForm2 curvature(const DullAlgebroidData& src, const Connection& conn) {
  EndForm2 r;
  int n = src.rank, nv = src.nvars;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Sec sa = basis_sec(n, nv, a), sb = basis_sec(n, nv, b);
      Sec sab = src.bracket(sa, sb);
      std::vector<Sec> col;
      for (int alpha = 0; alpha < conn.rank; ++alpha) {
        Sec e = basis_sec(conn.rank, nv, alpha);
        col.push_back(covariant(src, conn, sa, covariant(src, conn, sb, e)) -
                      covariant(src, conn, sb, covariant(src, conn, sa, e)) -
                      covariant(src, conn, sab, e));
      }
      r[{a, b}] = std::move(col);
    }
  return r;
}

Sec curvature_apply(const EndForm2& r, int a, int b, const Sec& e, int nvars, int rank) {
  if (a == b) return zero_sec(rank, nvars);
  int sign = 1;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  Sec out = zero_sec(rank, nvars);
  auto it = r.find({a, b});
  if (it == r.end()) return out;
  for (size_t alpha = 0; alpha < e.size(); ++alpha)
    if (!e[alpha].is_zero()) out = out + e[alpha] * it->second[alpha];
  return sign > 0 ? out : -out;
}

BasicData basic_data(const DullAlgebroidData& d, const Connection& conn) {
  d.validate();
  int r = d.rank, m = d.nvars;
  if (conn.source_rank != m || conn.rank != r)
    throw std::invalid_argument("basic_data: need a TM-connection on Q");
  DullAlgebroidData tm = DullAlgebroidData::tangent(m);
  auto nab = [&](const Sec& x, const Sec& q) { return covariant(tm, conn, x, q); };
  BasicData out;
  out.on_q = Connection::zero(r, r, m);
  out.on_tm = Connection::zero(r, m, m);
  for (int a = 0; a < r; ++a) {
    Sec qa = basis_sec(r, m, a);
    for (int b = 0; b < r; ++b) {
      Sec qb = basis_sec(r, m, b);
      out.on_q.G[a][b] = d.bracket(qa, qb) + nab(d.anchor(qb), qa);
    }
    for (int j = 0; j < m; ++j) {
      Sec dj = basis_sec(m, m, j);
      out.on_tm.G[a][j] = vf_bracket(d.anchor(qa), dj) + d.anchor(nab(dj, qa));
    }
  }
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      Sec qa = basis_sec(r, m, a), qb = basis_sec(r, m, b);
      std::vector<Sec> col;
      for (int j = 0; j < m; ++j) {
        Sec x = basis_sec(m, m, j);
        Sec bas_b_x = covariant(d, out.on_tm, qb, x);
        Sec bas_a_x = covariant(d, out.on_tm, qa, x);
        col.push_back(-nab(x, d.bracket(qa, qb)) + d.bracket(nab(x, qa), qb) +
                      d.bracket(qa, nab(x, qb)) + nab(bas_b_x, qa) - nab(bas_a_x, qb));
      }
      out.curvature[{a, b}] = std::move(col);
    }
  return out;
}

Report basic_identity_check(const DullAlgebroidData& d, const Connection& conn) {
  BasicData bd = basic_data(d, conn);
  int r = d.rank, m = d.nvars;
  Report rep;
  rep.check = "basic";
  rep.clause("anchor_intertwines");
  rep.clause("curvature_tm");
  rep.clause("curvature_q");
  EndForm2 rtm = curvature(d, bd.on_tm);
  EndForm2 rq = curvature(d, bd.on_q);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Sec qa = basis_sec(r, m, a), qb = basis_sec(r, m, b);
      Sec lhs = covariant(d, bd.on_tm, qa, d.anchor(qb));
      Sec rhs = d.anchor(covariant(d, bd.on_q, qa, qb));
      if (lhs != rhs)
        rep.fail("anchor_intertwines", "q" + tuple_str({a, b}), sec_str(lhs - rhs, "dx"));
    }
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      const auto& rb = bd.curvature.at({a, b});
      for (int j = 0; j < m; ++j) {
        Sec lhs = d.anchor(rb[j]);
        Sec rhs = rtm.at({a, b})[j];
        if (lhs != rhs)
          rep.fail("curvature_tm", "q" + tuple_str({a, b}) + " dx" + std::to_string(j + 1),
                   sec_str(lhs - rhs, "dx"));
      }
      for (int c = 0; c < r; ++c) {
        Sec x = d.anchor(basis_sec(r, m, c));
        Sec lhs = zero_sec(r, m);
        for (int j = 0; j < m; ++j)
          if (!x[j].is_zero()) lhs = lhs + x[j] * rb[j];
        lhs = lhs + jacobiator(d, a, b, c);
        Sec rhs = rq.at({a, b})[c];
        if (lhs != rhs)
          rep.fail("curvature_q", "q" + tuple_str({a, b, c}), sec_str(lhs - rhs, "q"));
      }
    }
  return rep;
}

}  // namespace l2a
