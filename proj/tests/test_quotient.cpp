#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superquot/quotient.hpp"

using namespace sq;

namespace {

Field Q = Field::rationals();

HopfSuperalgebra make_Gm() {
  SuperPresentation P(Q);
  int t = P.add_even("t", 1, true);
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto dt = T.alg().mul(T.inject(0, P.even_gen(t)), T.inject(1, P.even_gen(t)));
  return HopfSuperalgebra("Gm", P, {dt}, {}, {Scalar::one(Q)});
}

HopfSuperalgebra make_GmSplit() {
  SuperPresentation P(Q);
  int t = P.add_even("t", 1, true);
  int y = P.add_odd("y");
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto tp = [&](const SuperElement& l, const SuperElement& r) {
    return T.alg().mul(T.inject(0, l), T.inject(1, r));
  };
  auto dt = tp(P.even_gen(t), P.even_gen(t));
  auto dy = T.alg().add(tp(P.odd_gen(y), P.even_gen(t)), T.inject(1, P.odd_gen(y)));
  return HopfSuperalgebra("GmSplit", P, {dt}, {dy}, {Scalar::one(Q)});
}

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
  return HopfSuperalgebra("GL11", P,
                          {T.alg().add(tp(A, A), tp(B, G)), T.alg().add(tp(G, B), tp(D, D))},
                          {T.alg().add(tp(A, B), tp(B, D)), T.alg().add(tp(G, A), tp(D, G))},
                          {Scalar::one(Q), Scalar::one(Q)});
}

HopfSuperalgebra make_GL2() {
  SuperPresentation P(Q);
  int a = P.add_even("a"), b = P.add_even("b"), c = P.add_even("c"), d = P.add_even("d"),
      e = P.add_even("e");
  auto A = P.even_gen(a), B = P.even_gen(b), C = P.even_gen(c), D = P.even_gen(d),
       E = P.even_gen(e);
  auto det = P.sub(P.mul(A, D), P.mul(B, C));
  P.add_relation(P.sub(P.mul(E, det), P.one()));
  TensorAlgebra T(Q, {&P, &P}, {"l.", "r."});
  auto tp = [&](const SuperElement& l, const SuperElement& r) {
    return T.alg().mul(T.inject(0, l), T.inject(1, r));
  };
  Scalar one = Scalar::one(Q), zero = Scalar::zero(Q);
  HopfSuperalgebra H("GL2", P,
                     {T.alg().add(tp(A, A), tp(B, C)), T.alg().add(tp(A, B), tp(B, D)),
                      T.alg().add(tp(C, A), tp(D, C)), T.alg().add(tp(C, B), tp(D, D)),
                      tp(E, E)},
                     {}, {one, zero, zero, one, one});
  // the convolution solver cannot invert the leading coefficients here;
  // the antipode is the classical adjugate formula
  H.set_antipode({H.algebra().mul(D, E), H.algebra().neg(H.algebra().mul(B, E)),
                  H.algebra().neg(H.algebra().mul(C, E)), H.algebra().mul(A, E), det},
                 {});
  return H;
}

}  // namespace

TEST_CASE("mu_2 inside Gm: normal pair, trivial z, B generated by t^2, t^-2") {
  auto Gm = make_Gm();
  auto& P = Gm.algebra();
  auto S = prepare_pair(Gm, "Mu2", {P.sub(P.even_gen(0, 2), P.one())}, 4);
  CHECK(S.pair_ok);
  CHECK(S.normal);
  auto Z = compute_z(S);
  CHECK(Z.dim == 0);
  CHECK(Z.ses_exact);
  auto QR = build_quotient(S, Z, 4);
  REQUIRE(QR.B_gen_names.size() == 2);
  CHECK(QR.B_gen_names[0] == "t^2");
  CHECK(QR.B_gen_names[1] == "t^-2");
  CHECK(QR.oracle_match);
  CHECK(QR.layer_dims == std::vector<int>{QR.window_dims.back()});
  // weight <= 4 coinvariants: 1, t^2, t^-2, t^4, t^-4
  CHECK(QR.window_dims == std::vector<int>{1, 1, 3, 3, 5});
  CHECK(QR.B1_freeness_applicable);
  CHECK(QR.B1_free);  // trivially: no odd part
}

TEST_CASE("mu_2 inside Gm: Galois proven with alpha witnesses") {
  auto Gm = make_Gm();
  auto& P = Gm.algebra();
  auto S = prepare_pair(Gm, "Mu2", {P.sub(P.even_gen(0, 2), P.one())}, 4);
  auto G = check_galois(S, 4);
  CHECK(G.verdict == Verdict::Proven);
  CHECK(G.kernel_witnesses.empty());
  REQUIRE(G.alpha_witnesses.size() == 1);
  auto& last = G.beta.back();
  CHECK(last.dom_dim == last.rank);
  auto A = check_affinity(S, 4);
  CHECK(A.verdict == Verdict::Proven);
}

TEST_CASE("the whole group as its own subgroup: D = k") {
  auto Gm = make_Gm();
  auto& P = Gm.algebra();
  // the trivial subgroup: kill the augmentation ideal
  auto S = prepare_pair(Gm, "e", {P.sub(P.even_gen(0), P.one())}, 3);
  CHECK(S.pair_ok);
  CHECK(S.normal);
  auto Z = compute_z(S);
  auto QR = build_quotient(S, Z, 3);
  // everything is coinvariant: the quotient is Gm itself
  CHECK(QR.window_dims == QR.oracle_dims);
  CHECK(QR.window_dims == std::vector<int>{1, 3, 5, 7});
  auto G = check_galois(S, 3);
  CHECK(G.verdict == Verdict::Proven);
}

TEST_CASE("the subgroup equal to the group: B = k") {
  auto Gm = make_Gm();
  auto S = prepare_pair(Gm, "full", {}, 3);
  CHECK(S.pair_ok);
  CHECK(S.normal);
  auto Z = compute_z(S);
  CHECK(Z.dim == 0);
  auto QR = build_quotient(S, Z, 3);
  CHECK(QR.B_gens.empty());
  for (int v : QR.window_dims) CHECK(v == 1);
  CHECK(QR.oracle_match);
}

TEST_CASE("Borel in GL2 is not normal and not Galois") {
  auto GL2 = make_GL2();
  auto& P = GL2.algebra();
  auto S = prepare_pair(GL2, "Borel", {P.even_gen(*P.find_even("c"))}, 2);
  CHECK(S.pair_ok);
  CHECK(!S.normal);
  auto G = check_galois(S, 2);
  CHECK(G.verdict == Verdict::Disproven);
  REQUIRE(!G.kernel_witnesses.empty());
  bool saw = false;
  for (auto& w : G.kernel_witnesses)
    saw = saw || w.find("c (x) a") != std::string::npos || w.find("a (x) c") != std::string::npos;
  CHECK(saw);
  auto A = check_affinity(S, 2);
  CHECK(A.verdict == Verdict::Disproven);
}

TEST_CASE("Borel in GL(1|1): z is one-dimensional, total quotient dim 2") {
  auto GL11 = make_GL11();
  auto& P = GL11.algebra();
  auto S = prepare_pair(GL11, "Borel", {P.odd_gen(*P.find_odd("g"))}, 4);
  CHECK(S.pair_ok);
  auto Z = compute_z(S);
  REQUIRE(Z.dim == 1);
  CHECK(Z.ses_exact);
  CHECK(Z.coact_closed);
  CHECK(Z.labels[0] == "g");
  auto QR = build_quotient(S, Z, 4);
  CHECK(QR.oracle_match);
  CHECK(QR.layer_dims == std::vector<int>{1, 1});
  CHECK(QR.window_dims.back() == 2);
  REQUIRE(QR.B1_gens.size() == 1);
  auto TH = theta_retraction(S, Z, 4);
  CHECK(TH.verdict == Verdict::Proven);
  CHECK(TH.route == "colinear");
}

TEST_CASE("torus in GL(1|1): z = W of rank 2, exterior layers 1,2,1") {
  auto GL11 = make_GL11();
  auto& P = GL11.algebra();
  auto S = prepare_pair(GL11, "Torus", {P.odd_gen(0), P.odd_gen(1)}, 4);
  CHECK(S.pair_ok);
  CHECK(!S.normal);
  auto Z = compute_z(S);
  REQUIRE(Z.dim == 2);
  CHECK(Z.ses_exact);
  auto QR = build_quotient(S, Z, 4);
  CHECK(QR.oracle_match);
  CHECK(QR.layer_dims == std::vector<int>{1, 2, 1});
  CHECK(QR.layer_dims == QR.binomial_expected);
  CHECK(QR.B1_freeness_applicable);  // z = W
  CHECK(QR.B1_free);
  auto K = kappa_check(S, 4);
  CHECK(K.ok);
  auto TH = theta_retraction(S, Z, 4);
  CHECK(TH.verdict == Verdict::Proven);
  CHECK(TH.route == "identity");
}

TEST_CASE("GmSplit over its even-part subgroup: full pipeline") {
  auto H = make_GmSplit();
  auto& P = H.algebra();
  auto S = prepare_pair(H, "Mu2e", {P.sub(P.even_gen(0, 2), P.one()), P.odd_gen(0)}, 3);
  CHECK(S.pair_ok);
  CHECK(!S.normal);  // conjugating by -1 flips the odd coordinate affinely
  auto Z = compute_z(S);
  REQUIRE(Z.dim == 1);
  CHECK(Z.ses_exact);
  auto QR = build_quotient(S, Z, 3);
  CHECK(QR.oracle_match);
  // coinvariants: 1 | t^2, t^-2, t y, t^-1 y at weight 2
  CHECK(QR.window_dims == std::vector<int>{1, 1, 5, 5});
  CHECK(QR.layer_dims == std::vector<int>{3, 2});
  REQUIRE(QR.B_gen_names.size() == 2);
  CHECK(QR.B_gen_names[0] == "t^2");
  CHECK(QR.B_gen_names[1] == "t^-2");
  CHECK(QR.B1_freeness_applicable);  // z = W even though the pair is not normal
  CHECK(QR.B1_free);
  REQUIRE(QR.B1_gens.size() == 1);

  auto K = kappa_check(S, 3);
  CHECK(K.ok);
  auto SP = check_splitting(S, Z, 3);
  CHECK(SP.costable == Verdict::Proven);
  CHECK(SP.colinear == Verdict::Proven);
  CHECK(SP.graded == Verdict::Proven);
  auto O = omega_graded(S, Z, QR, 3);
  CHECK(O.verdict == Verdict::Proven);
  CHECK(O.codomain_coinv_dims == QR.window_dims);
}

TEST_CASE("chart consistency for Gm over mu_2 at t^2") {
  auto Gm = make_Gm();
  auto& P = Gm.algebra();
  auto S = prepare_pair(Gm, "Mu2", {P.sub(P.even_gen(0, 2), P.one())}, 4);
  auto Z = compute_z(S);
  auto QR = build_quotient(S, Z, 4);
  auto R = local_consistency_check(S, QR, P.even_gen(0, 2), 4);
  CHECK(R.verdict == Verdict::Proven);
  CHECK(R.local_dims == R.quotient_dims);
}

TEST_CASE("the gr pipeline reproduces the quotient for a graded pair") {
  auto H = make_GmSplit();
  auto& P = H.algebra();
  auto S = prepare_pair(H, "Mu2e", {P.sub(P.even_gen(0, 2), P.one()), P.odd_gen(0)}, 3);
  auto Z = compute_z(S);
  auto QR = build_quotient(S, Z, 3);
  auto R = gr_quotient_check(S, QR, 3);
  CHECK(R.verdict == Verdict::Proven);
}

TEST_CASE("hopf-ideal validation flags a non-coideal") {
  auto Gm = make_Gm();
  auto& P = Gm.algebra();
  // t - 2 has counit -1 and Delta(t-2) = t(x)t - 2 does not map to zero
  auto S = prepare_pair(Gm, "Bad", {P.sub(P.even_gen(0), P.constant(Scalar::fraction(Q, 2, 1)))},
                        3);
  CHECK(!S.pair_ok);
  CHECK(!S.issues.empty());
}
