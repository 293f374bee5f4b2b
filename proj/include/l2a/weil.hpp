#pragma once

#include "l2a/adjoint.hpp"
#include "l2a/gca.hpp"
#include "l2a/lie2.hpp"
#include "l2a/report.hpp"

namespace l2a {

// Generators tau^a (1,0), b^mu (2,0), dx_i (0,1), dtau^a (1,1), db^mu (2,1) in
// this order; Generator::degree is p + q and Generator::weight is q.
struct WeilAlgebra {
  int nvars = 0, rank_q = 0, rank_b = 0;
  GenSetPtr gs;
  Derivation q;      // the homological vector field, lifted
  Derivation dee;    // bidegree (0,1)
  Derivation iq;     // bidegree (1,-1)
  Derivation lie_q;  // [iq, dee]

  int tau(int a) const { return a; }
  int b(int mu) const { return rank_q + mu; }
  int dx(int i) const { return rank_q + rank_b + i; }
  int dtau(int a) const { return rank_q + rank_b + nvars + a; }
  int db(int mu) const { return 2 * rank_q + rank_b + nvars + mu; }
};

GenSetPtr weil_genset(int nvars, int rank_q, int rank_b);
// an element of C(M) as an element of the Weil algebra
AlgebraElement weil_lift(const GenSetPtr& weil, const AlgebraElement& a);
// for an arbitrary degree-1 vector field on Q[1] + B*[2] (no Q^2 = 0 needed)
WeilAlgebra build_weil_from_q(const Derivation& q, int rank_q, int rank_b);
WeilAlgebra build_weil(const SplitLie2Data& d);

// clauses "dee^2", "lieQ^2", "[lieQ,dee]"
Report weil_double_complex_check(const WeilAlgebra& w);

// rank of W^{p,q} from the index sum over (r,s,u,v,w)
long split_weil_dims(int nvars, int rank_q, int rank_b, int p, int q);
// number of bidegree-(p,q) monomials in the Weil generators
long weil_monomial_count(const WeilAlgebra& w, int p, int q);

// Weil 1-form of a coadjoint basis section: theta_i -> dx_i,
// tau^a -> dtau^a - d_nabla tau^a, b^mu -> db^mu - d_nabla b^mu
AlgebraElement coadjoint_to_weil(const WeilAlgebra& w, const SplitLie2Data& d, const TMConnections& tm,
                                 const ModuleElement& psi);
// clause "row": lieQ o Phi = Phi o D_{ad*} on the coadjoint basis;
// clause "dee": dee tau = Phi(tau) + d_nabla tau, dee b = Phi(b) + d_nabla b
Report weil_row_vs_coadjoint_check(const SplitLie2Data& d, const TMConnections& tm);

}  // namespace l2a
