#include <doctest.h>

#include "l2a/adjoint.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace l2a;
using namespace l2a::testing;

namespace {

std::vector<SplitLie2Data> fixtures() {
  return {fx_abelian(), fx_aff1der(), fx_string_so3(), fx_tangent_r2()};
}

void require_pass(const Report& r) {
  for (const auto& c : r.clauses) {
    std::string ws;
    for (size_t k = 0; k < c.witnesses.size() && k < 4; ++k)
      ws += c.witnesses[k].where + ": " + c.witnesses[k].value + "\n";
    INFO(r.check << " clause " << c.id << "\n" << ws);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("curved example is a Lie 2-algebroid") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 3; ++k) {
    auto d = curved_example(rng);
    require_pass(lie2_axioms_check(d));
    CHECK(q_square_check(d).pass());
  }
}

TEST_CASE("adjoint: explicit formulas agree with the Lie derivative transport") {
  for (const auto& d : fixtures()) {
    INFO(d.name);
    auto ex = build_adjoint_rep(d);
    auto lie = adjoint_via_lie_derivative(d);
    require_pass(rep3_agreement_check(ex.rep, lie.rep));
    require_pass(rep3_check(ex.rep));
  }
  std::mt19937_64 rng(3);
  for (int k = 0; k < 4; ++k) {
    auto d = k % 2 ? curved_example(rng) : fx_string_so3();
    auto tm = random_tm(d, rng);
    auto ex = build_adjoint_rep(d, tm);
    require_pass(rep3_agreement_check(ex.rep, adjoint_via_lie_derivative(d, tm).rep));
    require_pass(rep3_check(ex.rep));
    CHECK(d_square_check(operator_from_components(ex.rep)).pass());
  }
}

TEST_CASE("adjoint: point base and flat examples") {
  auto z = build_adjoint_rep(fx_abelian());
  for (const auto& n : rep3_component_names())
    for (const auto& v : z.rep.comp(n)) CHECK(v.is_zero());

  // aff1 derivation algebra: partial = -ell, phi0(beta)q = -nabla*_q beta
  auto d = fx_aff1der();
  auto ad = build_adjoint_rep(d);
  auto o = adjoint_objects(d, d.tm);
  for (int mu = 0; mu < d.rank_b; ++mu)
    for (int a = 0; a < d.rank_q(); ++a) CHECK(o.p0q[mu][a] == -o.nstar[a][mu]);
  for (int mu = 0; mu < d.rank_b; ++mu) {
    ModuleElement expect(ad.rep.genset(), ad.rep.basis);
    for (int c = 0; c < d.rank_q(); ++c)
      if (!d.ell[mu][c].is_zero())
        expect.add(adjoint_q(d, c), AlgebraElement::scalar(ad.rep.genset(), -d.ell[mu][c]));
    CHECK(ad.rep.comp("partial")[adjoint_beta(d, mu)] == expect);
  }
}

TEST_CASE("adjoint: basic curvature on the curved plane") {
  auto d = fx_tangent_r2();
  auto o = adjoint_objects(d, d.tm);
  // nabla_{d1} q2 = x1 q1 gives R^bas(q1,q2) d1 = [q1, x1 q1] = q1
  Sec e1 = basis_sec(2, 2, 0);
  CHECK(o.w2x.at({0, 1})[0] == -e1);
  CHECK(is_zero(o.w2x.at({0, 1})[1]));
  require_pass(rep3_check(build_adjoint_rep(d).rep));
  // flat connection: all curvature terms vanish
  auto flat = build_adjoint_rep(d, fx_tangent_r2_alt());
  for (const auto& v : flat.rep.comp("omega2")) CHECK(v.is_zero());
}

TEST_CASE("coadjoint: table agrees with the dual module") {
  std::mt19937_64 rng(7);
  std::vector<AdjointRep> ads;
  for (const auto& d : fixtures()) ads.push_back(build_adjoint_rep(d));
  auto d = curved_example(rng);
  ads.push_back(build_adjoint_rep(d, random_tm(d, rng)));
  for (const auto& ad : ads) {
    INFO(ad.data.name);
    auto co = build_coadjoint_rep(ad);
    require_pass(coadjoint_dual_check(co));
    require_pass(rep3_check(co.rep));
    auto op = operator_from_components(ad.rep);
    require_pass(dual_identity_check(op, co.dual, rng));
  }
}

TEST_CASE("change of connection") {
  std::mt19937_64 rng(19);
  auto same = [](const RepMorphismData& a, const ModuleMap& b) {
    return same_module_map(map_from_components(a), b);
  };
  {
    auto d = fx_tangent_r2();
    auto ad1 = build_adjoint_rep(d), ad2 = build_adjoint_rep(d, fx_tangent_r2_alt());
    auto mu = change_of_connection(ad1, fx_tangent_r2_alt());
    require_pass(morphism_check(mu, ad1.rep, ad2.rep));
    CHECK(same(mu, connection_transport(d, d.tm, fx_tangent_r2_alt())));
    auto back = change_of_connection(ad2, d.tm);
    auto comp = compose_maps(map_from_components(back), map_from_components(mu));
    CHECK(same_module_map(comp, identity_map(operator_from_components(ad1.rep))));
    auto self = change_of_connection(ad1, d.tm);
    CHECK(same_module_map(map_from_components(self), identity_map(operator_from_components(ad1.rep))));
  }
  {
    auto d = fx_aff1der();
    auto ad = build_adjoint_rep(d);
    CHECK(same_module_map(map_from_components(change_of_connection(ad, d.tm)),
                          identity_map(operator_from_components(ad.rep))));
  }
  for (int k = 0; k < 3; ++k) {
    auto d = curved_example(rng);
    auto tm1 = random_tm(d, rng), tm2 = random_tm(d, rng);
    auto ad1 = build_adjoint_rep(d, tm1), ad2 = build_adjoint_rep(d, tm2);
    auto mu = change_of_connection(ad1, tm2);
    require_pass(morphism_check(mu, ad1.rep, ad2.rep));
    CHECK(same(mu, connection_transport(d, tm1, tm2)));
    auto comp = compose_maps(map_from_components(change_of_connection(ad2, tm1)), map_from_components(mu));
    CHECK(same_module_map(comp, identity_map(operator_from_components(ad1.rep))));
  }
}

TEST_CASE("change of splitting") {
  std::mt19937_64 rng(23);
  {
    auto d = fx_string_so3();
    auto zero = FormValued::zero(2, d.rank_b, d.nvars());
    auto ch = change_of_splitting(d, zero, d.tm);
    CHECK(same_structure(ch.data, d));
    CHECK(ch.mu.values == identity_map(operator_from_components(build_adjoint_rep(d).rep)).values);
  }
  for (int k = 0; k < 6; ++k) {
    auto d = k < 3 ? fx_string_so3() : curved_example(rng);
    auto tm = k < 3 ? d.tm : random_tm(d, rng);
    auto sigma = k < 3 ? random_sigma(d, rng) : poly_sigma(d, rng);
    auto ch = change_of_splitting(d, sigma, tm);
    require_pass(lie2_axioms_check(ch.data));
    auto ad1 = build_adjoint_rep(d, tm), ad2 = build_adjoint_rep(ch.data, tm);
    require_pass(rep3_check(ad2.rep));
    require_pass(splitting_identities_check(d, ch.data, sigma, tm));
    CHECK(same_module_map(ch.mu, splitting_transport(d, sigma, tm)));
    require_pass(morphism_operator_check(ch.mu, operator_from_components(ad1.rep),
                                         operator_from_components(ad2.rep)));
    // inverse from -sigma
    FormValued neg = sigma;
    for (auto& [t, v] : neg.values) v = -v;
    auto back = change_of_splitting(ch.data, neg, tm);
    CHECK(same_structure(back.data, d));
    auto comp = compose_maps(back.mu, ch.mu);
    CHECK(comp.values == identity_map(operator_from_components(ad1.rep)).values);
    for (size_t g = 0; g < comp.twist->size(); ++g)
      CHECK((*comp.twist)[g] == AlgebraElement::generator(ad1.rep.genset(), static_cast<int>(g)));
  }
}
