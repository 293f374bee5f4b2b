#include <doctest.h>

#include "l2a/weil.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace l2a;
using namespace l2a::testing;

namespace {

std::vector<SplitLie2Data> fixtures() {
  return {fx_abelian(), fx_aff1der(), fx_string_so3(), fx_tangent_r2()};
}

std::string witnesses(const Report& r) {
  std::string s;
  for (const auto& c : r.clauses)
    for (size_t k = 0; k < c.witnesses.size() && k < 4; ++k)
      s += c.id + " " + c.witnesses[k].where + ": " + c.witnesses[k].value + "\n";
  return s;
}

}  // namespace

TEST_CASE("weil generators and bidegrees") {
  auto w = build_weil(fx_string_so3());
  CHECK(w.gs->size() == 3 + 1 + 0 + 3 + 1);
  CHECK(w.gs->gen(w.dtau(0)).degree == 2);
  CHECK(w.gs->gen(w.dtau(0)).weight == 1);
  CHECK(w.gs->gen(w.db(0)).degree == 3);
  CHECK(w.iq.degree() == 0);
  CHECK(w.lie_q.degree() == 1);
}

TEST_CASE("weil: lieQ on generators") {
  CHECK(build_weil(fx_abelian()).lie_q.is_zero());
  for (const auto& d : fixtures()) {
    INFO(d.name);
    auto w = build_weil(d);
    for (int g = 0; g < d.rank_q() + d.rank_b; ++g) {
      CHECK(w.lie_q.on_gen(g) == w.q.on_gen(g));
      int dg = g < d.rank_q() ? w.dtau(g) : w.db(g - d.rank_q());
      CHECK(w.lie_q.on_gen(dg) == -w.dee.apply(w.q.on_gen(g)));
    }
    for (int i = 0; i < d.nvars(); ++i) {
      CHECK(w.lie_q.on_base(i) == w.q.on_base(i));
      CHECK(w.lie_q.on_gen(w.dx(i)) == -w.dee.apply(w.q.on_base(i)));
    }
  }
}

TEST_CASE("weil: double complex identities") {
  for (const auto& d : fixtures()) {
    auto r = weil_double_complex_check(build_weil(d));
    INFO(d.name << "\n" << witnesses(r));
    CHECK(r.pass());
  }
  // a broken Q breaks lieQ^2 exactly when Q^2 != 0
  std::mt19937_64 rng(31);
  int broken = 0;
  for (int k = 0; k < 20; ++k) {
    std::string desc;
    auto bad = mutate(fx_string_so3(), rng, &desc);
    auto r = weil_double_complex_check(build_weil(bad));
    bool q_ok = q_square_check(bad).pass();
    INFO(desc);
    CHECK(r.find("lieQ^2")->pass == q_ok);
    CHECK(r.find("dee^2")->pass);
    CHECK(r.find("[lieQ,dee]")->pass);
    if (!q_ok) ++broken;
  }
  CHECK(broken > 5);
}

TEST_CASE("weil: split dimensions") {
  CHECK(split_weil_dims(0, 3, 1, 0, 0) == 1);
  CHECK(split_weil_dims(0, 3, 1, 1, 1) == 3);
  CHECK(split_weil_dims(0, 3, 1, 2, 1) == 10);
  for (const auto& d : fixtures()) {
    auto w = build_weil(d);
    for (int p = 0; p <= 6; ++p)
      for (int q = 0; q <= 6; ++q) {
        INFO(d.name << " p=" << p << " q=" << q);
        CHECK(split_weil_dims(d.nvars(), d.rank_q(), d.rank_b, p, q) == weil_monomial_count(w, p, q));
      }
  }
}

TEST_CASE("weil: first row is the coadjoint representation") {
  for (const auto& d : fixtures()) {
    auto r = weil_row_vs_coadjoint_check(d, d.tm);
    INFO(d.name << "\n" << witnesses(r));
    CHECK(r.pass());
  }
  auto d = fx_tangent_r2();
  auto r = weil_row_vs_coadjoint_check(d, fx_tangent_r2_alt());
  INFO(witnesses(r));
  CHECK(r.pass());
  std::mt19937_64 rng(41);
  for (int k = 0; k < 3; ++k) {
    auto c = curved_example(rng);
    auto tm = random_tm(c, rng);
    auto rc = weil_row_vs_coadjoint_check(c, tm);
    INFO(witnesses(rc));
    CHECK(rc.pass());
    CHECK(weil_double_complex_check(build_weil(c)).pass());
  }
}
