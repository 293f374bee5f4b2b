#pragma once

#include "l2a/adjoint.hpp"
#include "l2a/algebroid.hpp"
#include "l2a/gca.hpp"
#include "l2a/lie2.hpp"
#include "l2a/report.hpp"
#include "l2a/weil.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace l2a {

// Atoms are the base coordinates x1..xm (indices 0..m-1, degree 0) followed by
// the generators (index m + j).
int atom_count(const GeneratorSet& gs);
int atom_degree(const GeneratorSet& gs, int atom);
std::string atom_name(const GeneratorSet& gs, int atom);
AlgebraElement atom_element(const GenSetPtr& gs, int atom);

// Degree k bracket stored on atom pairs and extended as a biderivation:
//   {a,b} = -(-1)^{(|a|+k)(|b|+k)} {b,a}
//   {a,bc} = {a,b}c + (-1)^{(|a|+k)|b|} b{a,c}
class GradedPoissonData {
 public:
  GradedPoissonData() = default;
  // entries may be given in either order; the constructor rejects wrong degrees
  // and skew violations, and fills in the transposes
  GradedPoissonData(GenSetPtr gs, int degree, const std::map<std::pair<int, int>, AlgebraElement>& entries);

  const GenSetPtr& genset() const { return gs_; }
  int degree() const { return k_; }
  AlgebraElement at(int a, int b) const;
  const std::map<std::pair<int, int>, AlgebraElement>& table() const { return table_; }

 private:
  GenSetPtr gs_;
  int k_ = 0;
  std::map<std::pair<int, int>, AlgebraElement> table_;  // both orders, nonzero only
};

// X_xi = {xi, .}, of degree |xi| + k (xi homogeneous)
Derivation hamiltonian(const GradedPoissonData& p, const AlgebraElement& xi);
AlgebraElement poisson_bracket(const GradedPoissonData& p, const AlgebraElement& a, const AlgebraElement& b);

// clauses "skew" (of the extension, on atom pairs) and "jacobi" (atom triples)
Report poisson_axioms_check(const GradedPoissonData& p);
// clause "compat": T(g,h) = Q{g,h} - {Qg,h} - (-1)^{|g|+k}{g,Qh} on atom pairs,
// witness location "(g,h)"
Report compatibility_check(const GradedPoissonData& p, const Derivation& q);

// degree 0 bracket {x_i, x_j} = pi[i][j] on a chart without generators
GradedPoissonData poisson_from_bivector(int nvars, const std::vector<std::vector<Poly>>& pi);
// degree -1 bracket on A[1] from a dull algebroid structure on A*:
// {tau^a, tau^c} = [tau^a, tau^c]_*, {tau^a, x_i} = rho_*(tau^a) x_i
GradedPoissonData poisson_from_dual_algebroid(const DullAlgebroidData& astar);
DullAlgebroidData dual_algebroid_from_poisson(const GradedPoissonData& p);
// degree -2 bracket {tau^a, tau^b} = m[a][b] on g[1] (point base, B = 0); no checks
GradedPoissonData pairing_poisson(int dim, const Matrix& m);

// point-base quadratic Lie algebra: the CE Lie 2-algebra with B = 0 and the bracket
// given by the inverse of the pairing; throws if the pairing is not symmetric,
// invertible and invariant
struct PairingPoisson {
  Lie2AlgebraData algebra;
  SplitLie2Data data;
  GradedPoissonData poisson;
};
PairingPoisson build_pairing_poisson_point(const StructureConstants& g, const Matrix& pairing);
Matrix killing_form(const StructureConstants& g);

// 2-representation of the Lie algebroid B on Q*[1] + Q[0], self dual.
// b.C / b.rho give the bracket and anchor of B on the basis b^mu.
struct SelfDual2RepData {
  DullAlgebroidData b;
  int rank_q = 0;
  std::vector<std::vector<Poly>> partial;             // <partial tau^a, tau^c>, symmetric
  Connection nabla_qdual;                             // G[mu][a] = nabla_{b^mu} tau^a
  std::map<std::pair<int, int>, std::vector<std::vector<Poly>>> r;  // mu < nu: R(b^mu,b^nu)(q_a,q_c)

  static SelfDual2RepData zero(int nvars, int rank_b, int rank_q);
  // symmetric partial, skew R, shapes; throws
  void validate() const;
  Poly r_at(int mu, int nu, int a, int c) const;
};

// {b,f} = rho_B(b) f, {tau,tau'} = <partial tau, tau'>, {b,tau} = nabla^{Q*}_b tau,
// {b1,b2} = [b1,b2] - R(b1,b2)
GradedPoissonData poisson_from_selfdual2rep(const SelfDual2RepData& s);
SelfDual2RepData selfdual2rep_from_poisson(const GradedPoissonData& p, int rank_q, int rank_b);
// the 2-representation as a DG module over B[1]: t_a (Q*, degree -1), p_c (Q, degree 0),
// D t = partial t + d_nabla t, D p = d_nabla p - R p
RepOperator selfdual2rep_operator(const SelfDual2RepData& s);

// ---------------------------------------------------------------- sharp
// Degree -n map coadjoint -> adjoint with sharp(xi e) = (-1)^{|xi|} xi sharp(e).
struct SharpMap {
  BasisPtr source, target;
  int degree = 0;
  std::vector<ModuleElement> values;

  ModuleElement apply(const ModuleElement& m) const;
};

// sharp(c da) = (-1)^{|c|} c X_a on a Weil element of weight 1
Derivation sharp_of_form(const GradedPoissonData& p, const WeilAlgebra& w, const AlgebraElement& form);

struct SharpBuild {
  SharpMap map;
  AdjointRep ad;
  CoadjointRep co;
};
// sharp on the coadjoint basis through the Weil 1-forms Phi(e) and mu_nabla^{-1}
SharpBuild sharp_build(const GradedPoissonData& p, const SplitLie2Data& d, const TMConnections& tm);

// components by coefficient type: sharp0 (0,0), sharp1 (1,0), sharp2 (2,0), sharpb (0,1)
using SharpComponents = std::map<std::string, std::vector<ModuleElement>>;
const std::vector<std::string>& sharp_component_names();
SharpComponents sharp_components(const SharpMap& s);
// throws on a term outside the four types
SharpMap sharp_from_components(const SharpComponents& c, BasisPtr source, BasisPtr target, int degree);

// Explicit component formulas.
//  n = 1: sharp0(df) = -rho_*^* df, sharp0(beta) = rho_*(beta),
//         <sharp1(a)beta, alpha> = <(nabla*)^bas_beta alpha - nabla*_{rho_* beta} alpha, a>
//  n = 2: sharp0 = (-rho_B^*, partial_Q, rho_B),
//         sharp1(q)tau = <tau, nabla^Q_. q - nabla_{rho_B(.)} q>,
//         sharp1(q)b = -(nabla^Q_b q - nabla_{rho_B(b)} q),
//         sharp2(q1,q2)b = -<R(b,.)q1,q2>,
//         sharpb(beta)b = <beta, nabla^bas_b(.) - nabla_{rho_B(b)}(.)>
SharpComponents sharp_components_bialgebroid(const DullAlgebroidData& astar, const SplitLie2Data& d,
                                             const TMConnections& tm);
SharpComponents sharp_components_selfdual(const SelfDual2RepData& s, const SplitLie2Data& d,
                                          const TMConnections& tm);
// one clause per component name
Report sharp_components_agreement(const SharpComponents& a, const SharpComponents& b);

// clause "antimorphism": ([Q, sharp(dg)] + sharp(L_Q dg))(h) on atom pairs, with L_Q the
// Weil Lie derivative; witness location "(g,h)" as in compatibility_check
Report sharp_antimorphism_check(const GradedPoissonData& p, const SplitLie2Data& d);
// clause "module": sharp D_{ad*} + D_ad sharp = 0 on the coadjoint basis
Report sharp_module_check(const GradedPoissonData& p, const SplitLie2Data& d, const TMConnections& tm);

// clause "invertible": sharp0 has a unit determinant (kernel vector as witness at a
// point base); clause "inverse" (point base only): the inverse built by a Neumann
// series composes to the identity on both sides
Report symplectic_check(const GradedPoissonData& p, const SplitLie2Data& d, const TMConnections& tm);
// the inverse, point base; throws if sharp0 is singular
SharpMap sharp_inverse(const SharpMap& s);

// FX-SO3-PAIR: so(3), Killing form
PairingPoisson fx_so3_pair();

}  // namespace l2a
