#pragma once

#include "l2a/algebroid.hpp"
#include "l2a/bundles.hpp"
#include "l2a/gca.hpp"
#include "l2a/lie2.hpp"
#include "l2a/report.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace l2a {

// (number of degree-1 factors, number of degree-2 factors) of a monomial
using CoeffType = std::pair<int, int>;
CoeffType coefficient_type(const GeneratorSet& gs, const Monomial& m);
// part of a with the given coefficient type
AlgebraElement type_part(const AlgebraElement& a, CoeffType t);
ModuleElement type_part(const ModuleElement& m, CoeffType t);
std::map<CoeffType, ModuleElement> type_parts(const ModuleElement& m);

// Q = Q1 + Qd + Qw, shifting coefficient types by (1,0), (-1,1), (3,-1)
struct SplitQ {
  Derivation q1, qd, qw;
};
SplitQ split_q(const Derivation& q);

// Left DG module C(M) (x) Gamma(E), given by D on basis sections.
struct RepOperator {
  Derivation q;
  BasisPtr basis;
  std::vector<ModuleElement> values;  // D(e_i)

  GenSetPtr genset() const { return q.genset(); }
  ModuleElement zero() const { return ModuleElement(genset(), basis); }
  ModuleElement section(int i) const { return ModuleElement::basis_element(genset(), basis, i); }
  // D(xi e) = Q(xi) e + (-1)^{|xi|} xi D(e)
  ModuleElement apply(const ModuleElement& m) const;
  // degree and basis checks; throws
  void validate() const;
};

Report d_square_check(const RepOperator& d);

// Components of a 3-term representation, each stored by its values on the
// basis sections. Names and coefficient types:
//   partial (0,0), nabla (1,0), omega2 (2,0), phi0 (0,1), omega3 (3,0), phi1 (1,1)
struct Rep3Data {
  Derivation q;
  BasisPtr basis;
  std::map<std::string, std::vector<ModuleElement>> comps;

  GenSetPtr genset() const { return q.genset(); }
  const std::vector<ModuleElement>& comp(const std::string& name) const;
  static Rep3Data zero(const Derivation& q, BasisPtr basis);
};

const std::vector<std::string>& rep3_component_names();
CoeffType rep3_component_type(const std::string& name);

RepOperator operator_from_components(const Rep3Data& c);
// throws on a term whose coefficient type has no component
Rep3Data components_from_operator(const RepOperator& d);

// equations d_squared, nabla_commutes, 1..7 and "higher" (all remaining
// types). The pairing terms <omega, phi_j> are taken to be -Qw(phi_j).
Report rep3_check(const Rep3Data& c);

// Trivial rank-k representation with d_nabla = d_Q componentwise
RepOperator trivial_rep(const Derivation& q, int k);
// 1-term representation on a rank-r bundle from a Q-connection
RepOperator rep1_operator(const SplitLie2Data& d, const Connection& conn);
// (i) flatness, (ii) nabla_{ell beta} = 0
Report rep1_check(const SplitLie2Data& d, const Connection& conn);

// ---------------------------------------------------------------- constructions
struct BuiltModule {
  RepOperator op;
  Construction construction;
};
BuiltModule dual_module(const RepOperator& e);
BuiltModule tensor_module(const RepOperator& e, const RepOperator& f);
// basis section (e_j* (x) f_i) acts as the map e_j -> f_i
BuiltModule hom_module(const RepOperator& e, const RepOperator& f);
BuiltModule power_module(const RepOperator& e, int k, bool anti);
BuiltModule shift_module(const RepOperator& e, int k);
BuiltModule direct_sum_module(const RepOperator& e, const RepOperator& f);

// <psi, eta> for psi in E*, eta in E; the result is a coefficient
AlgebraElement pair_dual(const RepOperator& dual, const RepOperator& e, const ModuleElement& psi,
                         const ModuleElement& eta);
// xi (e (x) f) products in the tensor module
ModuleElement tensor_elements(const BuiltModule& t, const ModuleElement& a, const ModuleElement& b);
// psi(eta) for psi in Hom(E,F)
ModuleElement hom_evaluate(const BuiltModule& h, const RepOperator& f, const ModuleElement& psi,
                           const ModuleElement& eta);

// random element of the given total degree, coefficients of bounded length
ModuleElement random_module_element(const RepOperator& e, int degree, std::mt19937_64& rng);

// characterizing identity of each construction on basis pairs and random elements
Report dual_identity_check(const RepOperator& e, const BuiltModule& dual, std::mt19937_64& rng);
Report tensor_identity_check(const RepOperator& e, const RepOperator& f, const BuiltModule& t,
                             std::mt19937_64& rng);
Report hom_identity_check(const RepOperator& e, const RepOperator& f, const BuiltModule& h,
                          std::mt19937_64& rng);

// ---------------------------------------------------------------- morphisms
// Degree 0 map C(M) (x) E -> C(M) (x) F, mu(xi e) = phi(xi) mu(e) where phi
// is the optional algebra map given by generator images.
struct ModuleMap {
  BasisPtr source, target;
  std::vector<ModuleElement> values;
  std::optional<std::vector<AlgebraElement>> twist;

  ModuleElement apply(const ModuleElement& m) const;
};
ModuleMap identity_map(const RepOperator& e);
ModuleMap compose_maps(const ModuleMap& g, const ModuleMap& f);
// mu D_E = D_F mu on basis sections
Report morphism_operator_check(const ModuleMap& mu, const RepOperator& src, const RepOperator& dst);

// components mu0 (0,0), mu1 (1,0), mu2 (2,0), mub (0,1)
struct RepMorphismData {
  BasisPtr source, target;
  std::map<std::string, std::vector<ModuleElement>> comps;
};
const std::vector<std::string>& morphism_component_names();
ModuleMap map_from_components(const RepMorphismData& m);
RepMorphismData components_from_map(const ModuleMap& m);
// equations "1.i" (type (i,0)), "2" (0,1), "3" (1,1) and "higher"
Report morphism_check(const RepMorphismData& mu, const Rep3Data& src, const Rep3Data& dst);

// The k-isomorphism E -> E[k]
ModuleMap shift_isomorphism(const RepOperator& e, const BuiltModule& shifted);

// ---------------------------------------------------------------- examples
// E_xi = R[0] + R[1-k]: sections e0 (degree 0) and e1 (degree k-1), D e1 = xi e0.
// k defaults to |xi|; it is needed for xi = 0.
RepOperator q_closed_rep(const Derivation& q, const AlgebraElement& xi, int k = -1);
// iso E_xi -> E_xi' for xi - xi' = Q(xi''): e1 -> e1 + xi'' e0
ModuleMap q_closed_iso(const RepOperator& e_xi, const AlgebraElement& xi2);

// ---------------------------------------------------------------- cohomology
// all monomials of total degree deg (only generators, no base variables)
std::vector<Monomial> monomials_of_degree(const GeneratorSet& gs, int deg);
// dim H^n for n in [lo, hi]; point base only
std::vector<int> cohomology_dims(const RepOperator& d, int lo, int hi);

// random change of one component entry
Rep3Data mutate_rep3(const Rep3Data& c, std::mt19937_64& rng, std::string* description);

}  // namespace l2a
