#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superquot/superpoly.hpp"

using namespace sq;

namespace {

Field Q = Field::rationals();

bool eq(const SuperPresentation& P, const SuperElement& a, const SuperElement& b) {
  return P.sub(P.normal_form(a), P.normal_form(b)).is_zero();
}

// test-only oracle: sign of sorting the concatenation S1 ++ S2 by index,
// computed by literally bubble-sorting a list of positions
int oracle_koszul(uint64_t s1, uint64_t s2) {
  std::vector<int> seq;
  for (int i = 0; i < 64; ++i)
    if (s1 & (uint64_t{1} << i)) seq.push_back(i);
  for (int i = 0; i < 64; ++i)
    if (s2 & (uint64_t{1} << i)) seq.push_back(i);
  int sign = 1;
  for (size_t a = 0; a + 1 < seq.size(); ++a)
    for (size_t b = 0; b + 1 < seq.size() - a; ++b)
      if (seq[b] > seq[b + 1]) {
        std::swap(seq[b], seq[b + 1]);
        sign = -sign;
      }
  return sign;
}

}  // namespace

TEST_CASE("odd generators square to zero and anticommute") {
  SuperPresentation P(Q);
  int y1 = P.add_odd("y1"), y2 = P.add_odd("y2");
  CHECK(P.mul(P.odd_gen(y1), P.odd_gen(y1)).is_zero());
  auto ab = P.mul(P.odd_gen(y1), P.odd_gen(y2));
  auto ba = P.mul(P.odd_gen(y2), P.odd_gen(y1));
  CHECK(P.add(ab, ba).is_zero());
  CHECK(P.str(ba) == "-y1*y2");
  CHECK(P.truncated_basis(2).size() == 4);  // 1, y1, y2, y1*y2
}

TEST_CASE("koszul sign against bubble-sort oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    uint64_t s1 = rng() & 0xffff, s2 = rng() & 0xffff;
    if (s1 & s2) continue;
    Scalar got = koszul_sign(Q, s1, s2);
    CHECK(got == Scalar(Q, oracle_koszul(s1, s2)));
  }
}

TEST_CASE("laurent generator: t * t^-1 * t = t and 5-element window") {
  SuperPresentation P(Q);
  int t = P.add_even("t", 1, true);
  auto e = P.mul(P.mul(P.even_gen(t), P.even_gen(t, -1)), P.even_gen(t));
  CHECK(eq(P, e, P.even_gen(t)));
  auto basis = P.truncated_basis(2);  // t^-2 .. t^2
  CHECK(basis.size() == 5);
  CHECK(P.str(P.normal_form(P.even_gen(t, -3))) == "t^-3");
}

TEST_CASE("mixed polynomial window {1, x, y, x^2, x*y}") {
  SuperPresentation P(Q);
  P.add_even("x");
  P.add_odd("y");
  auto basis = P.truncated_basis(2);
  REQUIRE(basis.size() == 5);
  std::vector<std::string> names;
  for (auto& m : basis) names.push_back(P.monomial_str(m));
  CHECK(names == std::vector<std::string>{"1", "x", "y", "x^2", "x*y"});
}

TEST_CASE("finite order eliminates the inverse variable") {
  SuperPresentation P(Q);
  int t = P.add_even("t", 1, true);
  P.add_relation(P.sub(P.mul(P.even_gen(t), P.even_gen(t)), P.one()));
  auto basis = P.truncated_basis(6);
  REQUIRE(basis.size() == 2);  // normal basis {1, t}
  CHECK(eq(P, P.even_gen(t, -1), P.even_gen(t)));
}

TEST_CASE("normal form is multiplicative (random, Q and F5)") {
  std::mt19937 rng(23);
  for (Field f : {Field::rationals(), Field::prime(5)}) {
    SuperPresentation P(f);
    int x = P.add_even("x");
    int y = P.add_odd("y");
    P.add_relation(P.sub(P.mul(P.even_gen(x), P.even_gen(x, 2)), P.one()));  // x^3 = 1
    auto rand_elem = [&]() {
      SuperElement e;
      for (int k = 0; k < 4; ++k) {
        auto m = P.even_gen(x, (int)(rng() % 4));
        if (rng() % 2) m = P.mul(m, P.odd_gen(y));
        e = P.add(e, P.scale(m, Scalar(f, (long)(rng() % 7) - 3)));
      }
      return e;
    };
    for (int trial = 0; trial < 8; ++trial) {
      auto a = rand_elem(), b = rand_elem();
      CHECK(eq(P, P.mul(a, b), P.nf_mul(P.normal_form(a), P.normal_form(b))));
    }
  }
}

TEST_CASE("inversion by linear solve") {
  SuperPresentation P(Q);
  int t = P.add_even("t");
  P.add_relation(P.sub(P.mul(P.even_gen(t), P.even_gen(t)), P.one()));  // t^2 = 1
  auto inv = P.invert(P.even_gen(t), 3);
  REQUIRE(inv.has_value());
  CHECK(eq(P, *inv, P.even_gen(t)));

  SuperPresentation F(Q);
  int y = F.add_odd("y");
  auto u = F.add(F.one(), F.odd_gen(y));  // (1+y)^-1 = 1-y
  auto iv = F.invert(u, 2);
  REQUIRE(iv.has_value());
  CHECK(eq(F, F.mul(u, *iv), F.one()));
  CHECK(eq(F, *iv, F.sub(F.one(), F.odd_gen(y))));

  // x is not invertible in k[x]
  SuperPresentation K(Q);
  int x = K.add_even("x");
  CHECK(!K.invert(K.even_gen(x), 6).has_value());
}

TEST_CASE("localization adjoins a working inverse") {
  SuperPresentation P(Q);
  int x = P.add_even("x");
  auto L = P.localized_at(P.even_gen(x, 2), "v");
  int v = *L.find_even("v");
  CHECK(eq(L, L.mul(L.even_gen(*L.find_even("x"), 2), L.even_gen(v)), L.one()));
  auto xinv = L.invert(L.even_gen(*L.find_even("x")), 4);
  REQUIRE(xinv.has_value());
  CHECK(eq(L, *xinv, L.mul(L.even_gen(*L.find_even("x")), L.even_gen(v))));
}

TEST_CASE("tensor legs anticommute across the bar") {
  SuperPresentation P(Q);
  P.add_odd("y");
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto yl = T.inject(0, P.odd_gen(0)), yr = T.inject(1, P.odd_gen(0));
  auto ab = T.alg().mul(yl, yr), ba = T.alg().mul(yr, yl);
  CHECK(T.alg().add(ab, ba).is_zero());
  REQUIRE(ab.terms.size() == 1);
  auto parts = T.split(ab.terms[0].m);
  REQUIRE(parts.size() == 2);
  CHECK(P.monomial_str(parts[0]) == "y");
  CHECK(P.monomial_str(parts[1]) == "y");
}

TEST_CASE("tensor of laurent algebras keeps inverses usable") {
  SuperPresentation P(Q);
  int t = P.add_even("t", 1, true);
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto a = T.inject(0, P.even_gen(t, -1));
  auto b = T.inject(1, P.even_gen(t, 2));
  auto prod = T.alg().nf_mul(a, b);
  REQUIRE(prod.terms.size() == 1);
  auto parts = T.split(prod.terms[0].m);
  CHECK(P.monomial_str(parts[0]) == "t^-1");
  CHECK(P.monomial_str(parts[1]) == "t^2");
}

TEST_CASE("algebra hom handles inverse variables") {
  SuperPresentation P(Q);
  int t = P.add_even("t", 1, true);
  AlgebraHom h(&P, &P, {P.even_gen(t, 2)}, {}, 8);
  CHECK(eq(P, h.apply(P.even_gen(t, -1)), P.even_gen(t, -2)));
  CHECK(eq(P, h.apply(P.add(P.even_gen(t), P.even_gen(t, -1))),
           P.add(P.even_gen(t, 2), P.even_gen(t, -2))));
}

TEST_CASE("character evaluation") {
  SuperPresentation P(Q);
  int t = P.add_even("t", 1, true);
  P.add_odd("y");
  Character eps(&P, {Scalar(Q, 1)});
  auto e = P.add(P.even_gen(t, 3), P.scale(P.even_gen(t, -1), Scalar(Q, 2)));
  CHECK(eps.apply(e) == Scalar(Q, 3));
  CHECK(eps.apply(P.mul(e, P.odd_gen(0))) == Scalar::zero(Q));
}

TEST_CASE("gr of k[x | y1, y2] / (x - y1 y2)") {
  SuperPresentation P(Q);
  int x = P.add_even("x");
  int y1 = P.add_odd("y1"), y2 = P.add_odd("y2");
  P.add_relation(P.sub(P.even_gen(x), P.mul(P.odd_gen(y1), P.odd_gen(y2))));
  CHECK(P.truncated_basis(4).size() == 4);  // 1, x, y1, y2

  auto g = gr_superalgebra(P, 4);
  CHECK(g.component_dims == std::vector<int>{1, 2, 1});
  // killing the odd generators also kills x = y1*y2, so A = k
  CHECK(g.base.truncated_basis(4).size() == 1);
  // in gr the even relation kills x outright
  CHECK(g.gr.normal_form(g.gr.even_gen(*g.gr.find_even("x"))).is_zero());
  // x * y_i die in P, so they generate the wedge kernel
  bool saw_xy1 = false, saw_xy2 = false;
  for (auto& s : g.wedge_kernel_gens) {
    if (s == "x*y1") saw_xy1 = true;
    if (s == "x*y2") saw_xy2 = true;
  }
  CHECK(saw_xy1);
  CHECK(saw_xy2);
}

TEST_CASE("gr of a free superalgebra is exterior") {
  SuperPresentation P(Q);
  P.add_even("x");
  P.add_odd("y1");
  P.add_odd("y2");
  auto dims = odd_power_layer_dims(P, 3);
  // weight<=3 window: layer n counts monomials with exactly n odd factors
  CHECK(dims == std::vector<int>{4, 6, 2});
}

TEST_CASE("inconsistent presentation collapses to the zero ring") {
  SuperPresentation P(Q);
  P.add_even("x");
  P.add_relation(P.one());
  CHECK(P.normal_form(P.one()).is_zero());
  CHECK(P.truncated_basis(3).empty());
}

TEST_CASE("effort cap failure is loud and retryable") {
  SuperPresentation P(Q);
  int x = P.add_even("x"), y = P.add_even("y");
  P.add_relation(P.sub(P.mul(P.even_gen(x), P.even_gen(x)), P.even_gen(y)));
  P.add_relation(P.sub(P.mul(P.even_gen(y), P.even_gen(y)), P.even_gen(x)));
  P.complete(1);
  CHECK(!P.completion_ok());
  CHECK_THROWS(P.normal_form(P.one()));
  P.complete(4000);
  CHECK(P.completion_ok());
  CHECK(!P.normal_form(P.even_gen(x, 4)).is_zero());
}

TEST_CASE("mixed-parity relation is rejected") {
  SuperPresentation P(Q);
  int x = P.add_even("x");
  int y = P.add_odd("y");
  CHECK_THROWS(P.add_relation(P.add(P.even_gen(x), P.odd_gen(y))));
}
