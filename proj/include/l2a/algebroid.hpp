#pragma once

#include "l2a/report.hpp"
#include "l2a/scalars.hpp"

#include <map>
#include <string>
#include <vector>

namespace l2a {

// section of a trivialized bundle: one Poly per basis element
using Sec = std::vector<Poly>;

Sec zero_sec(int rank, int nvars);
Sec basis_sec(int rank, int nvars, int a);
Sec operator+(Sec a, const Sec& b);
Sec operator-(Sec a, const Sec& b);
Sec operator-(Sec a);
Sec operator*(const Poly& f, Sec s);
bool is_zero(const Sec& s);
std::string sec_str(const Sec& s, const std::string& prefix);

// vector fields on the chart are sections of TM in the basis d/dx_i
Poly vf_apply(const Sec& x, const Poly& f);
Sec vf_bracket(const Sec& x, const Sec& y);

// Anchored bundle with skew bracket [e_a, e_b] = sum_c C[a][b][c] e_c.
struct DullAlgebroidData {
  int nvars = 0;
  int rank = 0;
  std::vector<std::vector<Poly>> rho;            // rho[a][i]
  std::vector<std::vector<std::vector<Poly>>> C;  // C[a][b][c]

  static DullAlgebroidData zero(int nvars, int rank);
  // TM with the identity anchor and the coordinate bracket
  static DullAlgebroidData tangent(int nvars);
  // shapes and skew-symmetry; throws
  void validate() const;

  Sec anchor(const Sec& s) const;
  Poly act(const Sec& s, const Poly& f) const;
  Sec bracket(const Sec& s1, const Sec& s2) const;
  Sec jacobiator(const Sec& s1, const Sec& s2, const Sec& s3) const;
};

Report anchor_compat_check(const DullAlgebroidData& d);
Sec jacobiator(const DullAlgebroidData& d, int a, int b, int c);

// S-connection on a rank-r bundle E: G[a][alpha] = nabla_{s_a} e_alpha.
struct Connection {
  int source_rank = 0;
  int rank = 0;
  std::vector<std::vector<Sec>> G;

  static Connection zero(int source_rank, int rank, int nvars);
};

Sec covariant(const DullAlgebroidData& src, const Connection& c, const Sec& s, const Sec& e);
// nabla*_{s_a} eps^beta = -sum_alpha G[a][alpha][beta] eps^alpha
Connection dual_connection(const Connection& c);

// k-form on S with values in a rank-r bundle, stored on increasing index tuples
struct FormValued {
  int degree = 0;
  int rank = 0;
  int nvars = 0;
  std::map<std::vector<int>, Sec> values;

  static FormValued zero(int degree, int rank, int nvars);
  // value on basis arguments in any order (antisymmetry applied)
  Sec at(const std::vector<int>& args) const;
  void set(const std::vector<int>& sorted_args, Sec v);
  // multilinear evaluation on arbitrary sections of the source
  Sec eval(const std::vector<Sec>& args) const;
  bool operator==(const FormValued& o) const;
};

// all increasing k-tuples from {0..n-1}
std::vector<std::vector<int>> increasing_tuples(int n, int k);

// Koszul differential; a zero connection on a rank-1 bundle gives plain d_Q
FormValued koszul_d(const DullAlgebroidData& src, const Connection& conn, const FormValued& tau);
// scalar k-form wedge vector-valued l-form
FormValued wedge_forms(int n, const FormValued& scalar, const FormValued& tau);

// R(s_a, s_b) e_alpha on a < b
using EndForm2 = std::map<std::pair<int, int>, std::vector<Sec>>;
EndForm2 curvature(const DullAlgebroidData& src, const Connection& conn);
Sec curvature_apply(const EndForm2& r, int a, int b, const Sec& e, int nvars, int rank);

struct BasicData {
  Connection on_q;   // nabla^bas on Q
  Connection on_tm;  // nabla^bas on TM
  // R^bas(q_a, q_b) d/dx_j in Q, keyed (a,b) with a < b; entry [j]
  std::map<std::pair<int, int>, std::vector<Sec>> curvature;
};

// conn is a TM-connection on Q: conn.G[i][a] = nabla_{d/dx_i} q_a
BasicData basic_data(const DullAlgebroidData& d, const Connection& conn);
Report basic_identity_check(const DullAlgebroidData& d, const Connection& conn);

}  // namespace l2a
