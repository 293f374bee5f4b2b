#include <doctest.h>

#include "l2a/bundles.hpp"

using namespace l2a;

TEST_CASE("index translation negates") {
  CHECK(upper_index(2) == -2);
  CHECK(lower_index(-2) == 2);
  CHECK(lower_index(upper_index(5)) == 5);
}

TEST_CASE("construction ranks") {
  GradedBundle e{{{1, 2}}};
  auto basis = standard_basis(e, "e");
  CHECK(basis->size() == 2);
  CHECK((*basis)[0].degree == -1);

  auto d = dual_construction(*basis);
  CHECK(d.bundle().ranks == std::map<int, int>{{-1, 2}});
  auto dd = dual_construction(*d.basis);
  CHECK(*dd.basis == *basis);

  GradedBundle line{{{0, 1}}};
  auto sh = shift_construction(*standard_basis(line, "r"), 1);
  CHECK(sh.bundle().ranks == std::map<int, int>{{1, 1}});

  GradedBundle even{{{2, 2}}};
  auto even_basis = standard_basis(even, "b");
  CHECK(power_construction(*even_basis, 2, false).basis->size() == 3);
  CHECK(power_construction(*even_basis, 2, true).basis->size() == 1);
  // odd sections: symmetric square is exterior
  CHECK(power_construction(*basis, 2, false).basis->size() == 1);
  CHECK(power_construction(*basis, 2, true).basis->size() == 3);
  CHECK_THROWS(power_construction(*basis, -1, false));

  GradedBundle mixed{{{0, 1}, {1, 2}, {2, 1}}};
  GradedBundle other{{{-1, 1}, {1, 3}}};
  auto mb = standard_basis(mixed, "e"), ob = standard_basis(other, "f");
  auto hom = hom_construction(*mb, *ob);
  auto dual_tensor = tensor_construction(*dual_construction(*mb).basis, *ob);
  CHECK(hom.bundle() == dual_tensor.bundle());
  CHECK(direct_sum_construction(*mb, *ob).bundle().total_rank() == 8);
}

TEST_CASE("power normalization signs") {
  auto b = make_basis({{"p", -1}, {"q", -1}, {"s", 0}});
  std::vector<int> w{1, 0};
  CHECK(power_normalize(*b, w, false) == -1);
  CHECK(w == std::vector<int>{0, 1});
  std::vector<int> w2{2, 0};
  CHECK(power_normalize(*b, w2, false) == 1);
  std::vector<int> w3{0, 0};
  CHECK(power_normalize(*b, w3, false) == 0);
  std::vector<int> w4{2, 2};
  CHECK(power_normalize(*b, w4, true) == 0);
}

TEST_CASE("complex check") {
  // E_0 <- E_1 <- E_2 in upper degrees -2 -> -1 -> 0, ranks 1,1,1
  GradedBundle b{{{0, 1}, {1, 1}, {2, 1}}};
  ComplexData c{b, zero_map(b, b, 1, 1)};
  CHECK(complex_check(c).pass());
  c.d.blocks[-2][0][0] = Poly::parse("x1", 1);
  c.d.blocks[-1][0][0] = Poly::parse("0", 1);
  CHECK(complex_check(c).pass());
  c.d.blocks[-1][0][0] = Poly::parse("2", 1);
  auto r = complex_check(c);
  CHECK_FALSE(r.pass());
  REQUIRE(r.find("d_squared"));
  CHECK(r.find("d_squared")->witnesses[0].where == "degree -2 entry (1,1)");
  CHECK(r.find("d_squared")->witnesses[0].value == "2*x1");
  CHECK_FALSE(r.find("shifted_d_squared")->pass);

  GradedMap bad = c.d;
  bad.blocks[-1].push_back({Poly(1)});
  CHECK_THROWS(complex_check({b, bad}));
}
