#pragma once

#include "l2a/algebroid.hpp"
#include "l2a/gca.hpp"
#include "l2a/linalg.hpp"
#include "l2a/report.hpp"

#include <random>
#include <string>
#include <vector>

namespace l2a {

// TM-connections on Q (G[i][a] = nabla_{d/dx_i} q_a) and on B*
// (G[i][nu] = nabla_{d/dx_i} beta_nu).
struct TMConnections {
  Connection q;
  Connection bdual;
};

// Split Lie 2-algebroid Q[1] + B*[2]. Sections: q_a of Q, beta_mu of B*,
// b^mu of B (dual to beta_mu).
struct SplitLie2Data {
  std::string name;
  DullAlgebroidData q;
  int rank_b = 0;
  std::vector<std::vector<Poly>> ell;  // ell(beta_mu) = sum_c ell[mu][c] q_c
  Connection nabla;                    // Q-connection on B: G[a][mu] = nabla_{q_a} b^mu
  FormValued omega;                    // 3-form, value component mu on beta_mu
  TMConnections tm;

  int nvars() const { return q.nvars; }
  int rank_q() const { return q.rank; }

  static SplitLie2Data zero(int nvars, int rank_q, int rank_b);
  static TMConnections zero_tm(int nvars, int rank_q, int rank_b);
  // shapes, skew bracket, antisymmetric omega; throws
  void validate() const;

  Connection nabla_dual() const { return dual_connection(nabla); }
  Sec ell_of(const Sec& beta) const;
  // ell^*: Q* -> B on components
  Sec ell_dual(const Sec& tau) const;
  Sec omega_of(const Sec& q1, const Sec& q2, const Sec& q3) const;
};

// equality of the structure (tm connections ignored)
bool same_structure(const SplitLie2Data& a, const SplitLie2Data& b);

// generators tau1.. (degree 1), b1.. (degree 2) over x1..xm
GenSetPtr lie2_genset(int nvars, int rank_q, int rank_b);

// sign with which the 3-form enters Q(b), relative to the plain contraction
// sum_{a<b<c} omega^mu_abc tau^a tau^b tau^c
constexpr int kOmegaSign = 1;

Report lie2_axioms_check(const SplitLie2Data& d);
Derivation compile_homological_vf(const SplitLie2Data& d);
Report q_square_check(const SplitLie2Data& d);
SplitLie2Data extract_data_from_vf(const Derivation& q, int rank_q, int rank_b);

// Lie 2-algebra g0 -> g1 with constant tensors; x_a span g1, y_mu span g0.
struct Lie2AlgebraData {
  int dim0 = 0, dim1 = 0;
  std::vector<std::vector<Rational>> ell;                           // ell(y_mu) = sum ell[mu][c] x_c
  std::vector<std::vector<std::vector<Rational>>> br;               // [x_a,x_b] = sum br[a][b][c] x_c
  std::vector<std::vector<std::vector<Rational>>> act;              // [x_a,y_mu] = sum act[a][mu][nu] y_nu
  std::vector<std::vector<std::vector<std::vector<Rational>>>> tri;  // [x_a,x_b,x_c] = sum tri[..][mu] y_mu

  static Lie2AlgebraData zero(int dim0, int dim1);
  // antisymmetry of br and tri; throws
  void validate() const;
};

Report lie2_algebra_axioms_check(const Lie2AlgebraData& a);
// point-base split Lie 2-algebroid: Q = g1, B* = g0, nabla*_x y = [x,y], omega = [.,.,.]
SplitLie2Data embed_lie2_algebra(const Lie2AlgebraData& a, const std::string& name);

// Lie algebra structure constants [e_a,e_b] = sum_c c[a][b][c] e_c
using StructureConstants = std::vector<std::vector<std::vector<Rational>>>;
bool lie_jacobi_holds(const StructureConstants& c);
StructureConstants abelian_constants(int n);
StructureConstants aff1_constants();
StructureConstants so3_constants();

struct DerivationLie2 {
  Lie2AlgebraData algebra;
  std::vector<Matrix> derivations;  // basis of Der(g), matrices acting on columns
};
DerivationLie2 build_derivation_lie2(const StructureConstants& c);

// New splitting from sigma in Omega^2(Q,B*): [.,.]_2 = [.,.]_1 - ell sigma,
// nabla2* = nabla1* - sigma(., ell .), omega2 = omega1 - d_{2,nabla1*} sigma
// (the sign that makes this the conjugation of Q by b -> b + sigma^* b).
SplitLie2Data change_splitting(const SplitLie2Data& d, const FormValued& sigma);
// generator images tau -> tau, b -> b + sign * sigma^* b
std::vector<AlgebraElement> splitting_substitution(const SplitLie2Data& d, const FormValued& sigma,
                                                   int sign);
FormValued random_sigma(const SplitLie2Data& d, std::mt19937_64& rng);

SplitLie2Data fx_abelian();
SplitLie2Data fx_aff1der();
SplitLie2Data fx_string_so3();
SplitLie2Data fx_tangent_r2();
// the second connection used for change-of-connection checks on FX-TANGENT-R2
TMConnections fx_tangent_r2_alt();

// One random single-entry change; the description names the entry.
SplitLie2Data mutate(const SplitLie2Data& d, std::mt19937_64& rng, std::string* description);
Rational random_rational(std::mt19937_64& rng);

}  // namespace l2a
