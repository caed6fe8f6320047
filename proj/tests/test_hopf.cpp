#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superquot/hopf.hpp"

using namespace sq;

namespace {

Field Q = Field::rationals();

// additive group: k[x], x primitive
HopfSuperalgebra make_Ga() {
  SuperPresentation P(Q);
  int x = P.add_even("x");
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto dx = T.alg().add(T.inject(0, P.even_gen(x)), T.inject(1, P.even_gen(x)));
  return HopfSuperalgebra("Ga", P, {dx}, {}, {Scalar::zero(Q)});
}

// odd additive group: k[ | y], y primitive
HopfSuperalgebra make_Ga01() {
  SuperPresentation P(Q);
  int y = P.add_odd("y");
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto dy = T.alg().add(T.inject(0, P.odd_gen(y)), T.inject(1, P.odd_gen(y)));
  return HopfSuperalgebra("Ga01", P, {}, {dy}, {});
}

// k[x | y] with Delta x = x(x)1 + 1(x)x + y(x)y: coassociative but not graded
HopfSuperalgebra make_Ga11() {
  SuperPresentation P(Q);
  int x = P.add_even("x");
  int y = P.add_odd("y");
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto yy = T.alg().mul(T.inject(0, P.odd_gen(y)), T.inject(1, P.odd_gen(y)));
  auto dx = T.alg().add(T.alg().add(T.inject(0, P.even_gen(x)), T.inject(1, P.even_gen(x))), yy);
  auto dy = T.alg().add(T.inject(0, P.odd_gen(y)), T.inject(1, P.odd_gen(y)));
  return HopfSuperalgebra("Ga11", P, {dx}, {dy}, {Scalar::zero(Q)});
}

// function algebra of GL(1|1): evens a, d invertible, odds b, g
HopfSuperalgebra make_GL11() {
  SuperPresentation P(Q);
  int a = P.add_even("a", 1, true);
  int d = P.add_even("d", 1, true);
  int b = P.add_odd("b");
  int g = P.add_odd("g");
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto tp = [&](const SuperElement& l, const SuperElement& r) {
    return T.alg().mul(T.inject(0, l), T.inject(1, r));
  };
  auto A = P.even_gen(a), D = P.even_gen(d), B = P.odd_gen(b), G = P.odd_gen(g);
  auto da = T.alg().add(tp(A, A), tp(B, G));
  auto dd = T.alg().add(tp(G, B), tp(D, D));
  auto db = T.alg().add(tp(A, B), tp(B, D));
  auto dg = T.alg().add(tp(G, A), tp(D, G));
  return HopfSuperalgebra("GL11", P, {da, dd}, {db, dg},
                          {Scalar::one(Q), Scalar::one(Q)});
}

}  // namespace

TEST_CASE("additive group: antipode solves to -x and laws hold") {
  auto H = make_Ga();
  REQUIRE(!H.solve_antipode());
  auto& P = H.algebra();
  CHECK(P.sub(H.antipode(P.even_gen(0)), P.neg(P.even_gen(0))).is_zero());
  auto v = H.validate(4);
  CHECK(v.ok);
}

TEST_CASE("odd additive group validates") {
  auto H = make_Ga01();
  REQUIRE(!H.solve_antipode());
  CHECK(H.validate(3).ok);
  auto& P = H.algebra();
  CHECK(P.sub(H.antipode(P.odd_gen(0)), P.neg(P.odd_gen(0))).is_zero());
}

TEST_CASE("broken counit is reported") {
  SuperPresentation P(Q);
  int x = P.add_even("x");
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto dx = T.alg().add(T.inject(0, P.even_gen(x)), T.inject(1, P.even_gen(x)));
  HopfSuperalgebra H("bad", P, {dx}, {}, {Scalar::one(Q)});  // eps(x)=1 is wrong
  auto v = H.validate(3);
  CHECK(!v.ok);
  bool counit_failure = false;
  for (auto& f : v.failures) counit_failure = counit_failure || f.find("counit") != std::string::npos;
  CHECK(counit_failure);
}

TEST_CASE("GL(1|1) is a Hopf superalgebra") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto v = H.validate(4);
  for (auto& f : v.failures) MESSAGE(f);
  CHECK(v.ok);
}

TEST_CASE("GL(1|1) antipode on generators") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto& P = H.algebra();
  // S(b) = -a^-1 b d^-1 from the convolution identity on b
  int a = *P.find_even("a"), d = *P.find_even("d");
  auto Sb = H.antipode(P.odd_gen(0));
  auto expect = P.neg(P.nf_mul(P.nf_mul(P.even_gen(a, -1), P.odd_gen(0)), P.even_gen(d, -1)));
  CHECK(P.sub(P.normal_form(Sb), expect).is_zero());
}

TEST_CASE("associated ordinary Hopf algebra of GL(1|1) is a torus") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto C = associated_hopf_algebra(H);
  CHECK(C.algebra().n_odd() == 0);
  // a becomes group-like once the odd part dies
  auto da = C.delta(C.algebra().even_gen(0));
  auto& T = C.tensor_square();
  auto aa = T.alg().nf_mul(T.inject(0, C.algebra().even_gen(0)),
                           T.inject(1, C.algebra().even_gen(0)));
  CHECK(T.alg().sub(da, aa).is_zero());
  CHECK(C.validate(3).ok);
}

TEST_CASE("GL(1|1) cotangent data and coadjoint coaction") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto cot = cotangent_data(H, 4);
  REQUIRE(cot.w_labels == std::vector<std::string>{"b", "g"});
  CHECK(cot.even_cotangent_dim == 2);
  auto& C = cot.C.algebra();
  int a = *C.find_even("a"), d = *C.find_even("d");
  // hand computation: rho(b) = b (x) S(a) d = b (x) a^-1 d and
  // rho(g) = g (x) S(d) a = g (x) d^-1 a
  CHECK(C.sub(cot.coact[0][0], C.nf_mul(C.even_gen(a, -1), C.even_gen(d))).is_zero());
  CHECK(cot.coact[0][1].is_zero());
  CHECK(cot.coact[1][0].is_zero());
  CHECK(C.sub(cot.coact[1][1], C.nf_mul(C.even_gen(a), C.even_gen(d, -1))).is_zero());
}

TEST_CASE("coaction counit law") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto cot = cotangent_data(H, 4);
  for (size_t i = 0; i < cot.w_basis.size(); ++i)
    for (size_t j = 0; j < cot.w_basis.size(); ++j) {
      Scalar v = cot.C.counit(cot.coact[i][j]);
      CHECK(v == (i == j ? Scalar::one(Q) : Scalar::zero(Q)));
    }
}

TEST_CASE("GL(1|1) is not graded: bracket pairing from Delta a") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto L = lie_superalgebra(H, 4);
  CHECK(L.dim_odd == 2);
  CHECK(L.dim_even_cotangent == 2);
  CHECK(!L.graded);
  // the b(x)g term of Delta a gives <[b*, g*], class of a> = 1
  size_t ia = 0;
  while (L.even_labels[ia] != "a") ++ia;
  CHECK(L.pairing[ia][0][1] == Scalar::one(Q));
  CHECK(L.pairing[ia][1][0] == Scalar::one(Q));
  CHECK(L.pairing[ia][0][0].is_zero());
}

TEST_CASE("Ga11 bracket: [y*, y*] pairs to 2 against x") {
  auto H = make_Ga11();
  REQUIRE(!H.solve_antipode());
  CHECK(H.validate(4).ok);
  auto L = lie_superalgebra(H, 4);
  REQUIRE(L.dim_odd == 1);
  CHECK(!L.graded);
  CHECK(L.pairing[0][0][0] == Scalar(Q, 2));
}

TEST_CASE("gr of GL(1|1) is a graded Hopf superalgebra of the same size") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto G = gr_hopf_smash(H, 4);
  auto v = G.validate(3);
  for (auto& f : v.failures) MESSAGE(f);
  CHECK(v.ok);
  CHECK(G.algebra().truncated_basis(3).size() == H.algebra().truncated_basis(3).size());
  auto L = lie_superalgebra(G, 4);
  CHECK(L.graded);
}

TEST_CASE("psi decomposition is bijective on windows") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto rep = verify_decomposition_psi(H, 3);
  MESSAGE(rep.detail);
  CHECK(rep.ok);

  auto H2 = make_Ga01();
  REQUIRE(!H2.solve_antipode());
  CHECK(verify_decomposition_psi(H2, 3).ok);
}

TEST_CASE("quotient Hopf: killing the odd part of GL(1|1)") {
  auto H = make_GL11();
  REQUIRE(!H.solve_antipode());
  auto& P = H.algebra();
  auto T = H.quotient("Torus", {P.odd_gen(0), P.odd_gen(1)});
  auto v = T.validate(4);
  for (auto& f : v.failures) MESSAGE(f);
  CHECK(v.ok);
  CHECK(T.algebra().normal_form(P.odd_gen(0)).is_zero());
  auto cot = cotangent_data(T, 4);
  CHECK(cot.w_basis.empty());
}
