#pragma once

#include "l2a/dgmod.hpp"
#include "l2a/lie2.hpp"

#include <map>
#include <vector>

namespace l2a {

// Sections X1..Xm (degree 0), q1.. (degree -1), beta1.. (degree -2).
BasisPtr adjoint_basis(const SplitLie2Data& d);
int adjoint_x(const SplitLie2Data& d, int i);
int adjoint_q(const SplitLie2Data& d, int a);
int adjoint_beta(const SplitLie2Data& d, int mu);

// The structure objects on basis arguments. Pairs and triples are increasing.
struct AdjointObjects {
  std::vector<Sec> ell, rho;                     // -ell is the differential on B*
  std::vector<std::vector<Sec>> bas_q, bas_tm;   // nabla^bas_{q_a} q_c, nabla^bas_{q_a} X_i
  std::vector<std::vector<Sec>> nstar;           // nabla*_{q_a} beta_mu
  std::map<std::vector<int>, std::vector<Sec>> w2q;  // omega2(q_a,q_b) q_c = omega(q_a,q_b,q_c)
  std::map<std::vector<int>, std::vector<Sec>> w2x;  // omega2(q_a,q_b) X_i in Q
  std::map<std::vector<int>, std::vector<Sec>> w3;   // omega3(q_a,q_b,q_c) X_i in B*
  std::vector<std::vector<Sec>> p0x;             // phi0(beta_mu) X_i in Q
  std::vector<std::vector<Sec>> p0q;             // phi0(beta_mu) q_a in B*
  std::vector<std::vector<std::vector<Sec>>> p1;  // phi1(beta_mu, q_a) X_i in B*
};

AdjointObjects adjoint_objects(const SplitLie2Data& d, const TMConnections& tm);

struct AdjointRep {
  SplitLie2Data data;
  TMConnections tm;
  Rep3Data rep;
};

// from the explicit formulas
AdjointRep build_adjoint_rep(const SplitLie2Data& d, const TMConnections& tm);
inline AdjointRep build_adjoint_rep(const SplitLie2Data& d) { return build_adjoint_rep(d, d.tm); }

// mu_nabla on a basis section: X_i -> nabla_{d/dx_i} on C(M), q_a -> d/dtau^a,
// beta_mu -> d/db^mu
Derivation adjoint_vector_field(const SplitLie2Data& d, const TMConnections& tm, int section);
// mu_nabla^{-1}; throws if the derivation is not in the image (cannot happen)
ModuleElement adjoint_coordinates(const SplitLie2Data& d, const TMConnections& tm, const Derivation& v);
// D = mu^{-1} [Q, .] mu
AdjointRep adjoint_via_lie_derivative(const SplitLie2Data& d, const TMConnections& tm);
inline AdjointRep adjoint_via_lie_derivative(const SplitLie2Data& d) {
  return adjoint_via_lie_derivative(d, d.tm);
}

// one clause per component name
Report rep3_agreement_check(const Rep3Data& a, const Rep3Data& b);

// Coadjoint representation on the basis of dual_module(ad): complex -rho^*, -ell^*,
// dual connections, and the transposed higher objects with sign + on Q* and - on B.
// With these signs it coincides with the generic dual module.
struct CoadjointRep {
  Rep3Data rep;
  BuiltModule dual;  // dual_module of the adjoint operator
};
CoadjointRep build_coadjoint_rep(const AdjointRep& ad);
// the coadjoint table against the generic dual, one clause per component
Report coadjoint_dual_check(const CoadjointRep& co);

// mu = id + (nabla' - nabla); twistless morphism ad_nabla -> ad_nabla'
RepMorphismData change_of_connection(const AdjointRep& ad, const TMConnections& tm2);
// mu_{nabla'}^{-1} mu_nabla, computed on vector fields
ModuleMap connection_transport(const SplitLie2Data& d, const TMConnections& tm,
                               const TMConnections& tm2);

struct SplittingChange {
  SplitLie2Data data;  // second splitting
  ModuleMap mu;        // ad^1 -> ad^2, twisted by b -> b + sigma^* b
};
// mu0 = id, mu1(q1)q2 = sigma(q1,q2), mu2(q1,q2)X = -(nabla_X sigma)(q1,q2)
SplittingChange change_of_splitting(const SplitLie2Data& d, const FormValued& sigma,
                                    const TMConnections& tm);
// mu^{-1} F mu with F the algebra automorphism b -> b + sigma^* b
ModuleMap splitting_transport(const SplitLie2Data& d, const FormValued& sigma, const TMConnections& tm);
// the identities (i)..(vi) between the adjoint objects of both splittings;
// (iii) and (vi) carry the signs forced by omega2 = +omega, omega2 X = -R^bas X and
// nabla2* = nabla1* - sigma(., ell .):
//   omega2^2(q1,q2)q3 = omega2^1(q1,q2)q3 - d_{2,nabla^1}sigma(q1,q2,q3)
//   omega2^2(q1,q2)X = omega2^1(q1,q2)X - nabla_X(ell sigma(q1,q2)) + ell sigma(q1,nabla_X q2)
//                      - ell sigma(q2,nabla_X q1)
//   phi1^2(beta,q)X = phi1^1(beta,q)X + sigma(nabla_X q, ell beta) + sigma(q, ell nabla_X beta)
//                     - nabla_X(sigma(q, ell beta))
Report splitting_identities_check(const SplitLie2Data& d1, const SplitLie2Data& d2,
                                  const FormValued& sigma, const TMConnections& tm);

bool same_module_map(const ModuleMap& a, const ModuleMap& b);

}  // namespace l2a
