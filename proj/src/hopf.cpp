#include "superquot/hopf.hpp"

#include <bit>
#include <stdexcept>

namespace sq {

namespace {

// move a tensor-square element into two legs of a bigger tensor algebra;
// splitting and re-injecting at increasing legs is sign-free, any residual
// reordering is handled by the multiplication itself
SuperElement retensor2(const TensorAlgebra& from, const SuperPresentation& leg_pres,
                       const SuperElement& e, const TensorAlgebra& to, int la, int lb) {
  SuperElement out = to.alg().zero();
  for (auto& t : e.terms) {
    auto parts = from.split(t.m);
    SuperElement a = to.inject(la, leg_pres.from_term(parts[0], t.c));
    SuperElement b = to.inject(lb, leg_pres.from_term(parts[1], Scalar::one(t.c.field())));
    out = to.alg().add(out, to.alg().mul(a, b));
  }
  return out;
}

std::vector<int> public_even_indices(const SuperPresentation& P) {
  std::vector<int> r;
  for (int i = 0; i < P.n_even(); ++i)
    if (!P.even(i).internal) r.push_back(i);
  return r;
}

}  // namespace

SuperElement project_even(const SuperElement& e) {
  SuperElement r;
  for (auto& t : e.terms)
    if (t.m.odd == 0) r.terms.push_back(t);
  return r;
}

HopfSuperalgebra::HopfSuperalgebra(std::string name, SuperPresentation P,
                                   std::vector<SuperElement> delta_even,
                                   std::vector<SuperElement> delta_odd,
                                   std::vector<Scalar> counit_even)
    : name_(std::move(name)),
      P_(std::make_shared<const SuperPresentation>(std::move(P))),
      delta_even_(std::move(delta_even)),
      delta_odd_(std::move(delta_odd)),
      eps_even_(std::move(counit_even)) {
  T2_ = std::make_shared<const TensorAlgebra>(
      P_->field(), std::vector<const SuperPresentation*>{P_.get(), P_.get()},
      std::vector<std::string>{"l.", "r."});
  size_t n_public = public_even_indices(*P_).size();
  if (delta_even_.size() != n_public || eps_even_.size() != n_public ||
      delta_odd_.size() != static_cast<size_t>(P_->n_odd()))
    throw std::invalid_argument("structure map image count mismatch for " + name_);
}

const TensorAlgebra& HopfSuperalgebra::tensor_cube() const {
  if (!T3_)
    T3_ = std::make_shared<const TensorAlgebra>(
        P_->field(), std::vector<const SuperPresentation*>{P_.get(), P_.get(), P_.get()},
        std::vector<std::string>{"0.", "1.", "2."});
  return *T3_;
}

SuperElement HopfSuperalgebra::delta(const SuperElement& e) const {
  AlgebraHom h(P_.get(), &T2_->alg(), delta_even_, delta_odd_, invert_window_);
  return h.apply(e);
}

SuperElement HopfSuperalgebra::delta2(const SuperElement& e) const {
  const TensorAlgebra& T3 = tensor_cube();
  // (Delta (x) id): left leg -> legs (0,1), right leg -> leg 2
  std::vector<SuperElement> ev, od;
  for (size_t pi = 0; pi < delta_even_.size(); ++pi)
    ev.push_back(retensor2(*T2_, *P_, delta_even_[pi], T3, 0, 1));
  for (int i : public_even_indices(*P_)) ev.push_back(T3.inject(2, P_->even_gen(i)));
  for (auto& img : delta_odd_) od.push_back(retensor2(*T2_, *P_, img, T3, 0, 1));
  for (int i = 0; i < P_->n_odd(); ++i) od.push_back(T3.inject(2, P_->odd_gen(i)));
  AlgebraHom h(&T2_->alg(), &T3.alg(), ev, od, invert_window_);
  return h.apply(delta(e));
}

Scalar HopfSuperalgebra::counit(const SuperElement& e) const {
  Character eps(P_.get(), eps_even_);
  return eps.apply(e);
}

void HopfSuperalgebra::set_antipode(std::vector<SuperElement> s_even,
                                    std::vector<SuperElement> s_odd) {
  size_t n_public = public_even_indices(*P_).size();
  if (s_even.size() != n_public || s_odd.size() != static_cast<size_t>(P_->n_odd()))
    throw std::invalid_argument("antipode image count mismatch for " + name_);
  s_even_ = std::move(s_even);
  s_odd_ = std::move(s_odd);
}

SuperElement HopfSuperalgebra::antipode(const SuperElement& e) const {
  if (!has_antipode()) throw std::logic_error("antipode not set for " + name_);
  AlgebraHom h(P_.get(), P_.get(), s_even_, s_odd_, invert_window_);
  return h.apply(e);
}

std::optional<std::string> HopfSuperalgebra::solve_antipode(int window, int max_rounds) {
  const SuperPresentation& P = *P_;
  auto pub = public_even_indices(P);
  std::vector<SuperElement> se, so;
  for (size_t pi = 0; pi < pub.size(); ++pi) {
    int g = pub[pi];
    if (P.even(g).invertible)
      se.push_back(P.even_gen(g, -1));
    else
      se.push_back(P.sub(P.constant(eps_even_[pi] + eps_even_[pi]), P.even_gen(g)));
  }
  for (int i = 0; i < P.n_odd(); ++i) so.push_back(P.neg(P.odd_gen(i)));

  auto convolve_rest = [&](const SuperElement& d, const Monomial& gen_mono,
                           SuperElement& u, const AlgebraHom& S) {
    SuperElement rest = P.zero();
    u = P.zero();
    for (auto& t : d.terms) {
      auto parts = T2_->split(t.m);
      SuperElement left = P.from_term(parts[0], t.c);
      SuperElement right = P.from_term(parts[1], Scalar::one(P.field()));
      if (parts[0] == P.widen(gen_mono))
        u = P.add(u, P.scale(right, t.c));
      else
        rest = P.add(rest, P.nf_mul(S.apply(left), right));
    }
    return rest;
  };

  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    auto step = [&](bool odd, int local, const Monomial& gmono, const Scalar& epsv,
                    SuperElement& slot) -> std::optional<std::string> {
      SuperElement g = odd ? P.odd_gen(local) : P.even_gen(pub[local]);
      AlgebraHom S(P_.get(), P_.get(), se, so, window);
      // generators eliminated by the relations (e.g. killed in a quotient)
      // inherit their antipode from their normal form
      SuperElement gnf = P.normal_form(g);
      bool self = false;
      for (auto& t : gnf.terms) self = self || t.m == P.widen(gmono);
      if (!self) {
        SuperElement cand = P.normal_form(S.apply(gnf));
        if (!P.sub(cand, P.normal_form(slot)).is_zero()) {
          slot = cand;
          changed = true;
        }
        return std::nullopt;
      }
      SuperElement d = delta(g);
      SuperElement u;
      SuperElement rest = convolve_rest(d, gmono, u, S);
      auto uinv = P.invert(P.normal_form(u), window);
      if (!uinv)
        return "antipode: leading convolution coefficient of " +
               (odd ? P.odd(local).name : P.even(pub[local]).name) +
               " is not invertible within the window";
      SuperElement cand =
          P.nf_mul(P.sub(P.constant(epsv), rest), *uinv);
      if (!P.sub(cand, P.normal_form(slot)).is_zero()) {
        slot = cand;
        changed = true;
      }
      return std::nullopt;
    };
    for (size_t pi = 0; pi < pub.size(); ++pi) {
      Monomial m = P.even_gen(pub[pi]).terms[0].m;
      if (auto err = step(false, static_cast<int>(pi), m, eps_even_[pi], se[pi])) return err;
    }
    for (int i = 0; i < P.n_odd(); ++i) {
      Monomial m = P.odd_gen(i).terms[0].m;
      if (auto err = step(true, i, m, Scalar::zero(P.field()), so[i])) return err;
    }
    if (!changed) break;
  }

  // verify both convolution identities on the generators
  AlgebraHom S(P_.get(), P_.get(), se, so, window);
  auto check = [&](const SuperElement& g) {
    SuperElement d = delta(g);
    SuperElement lhs = P.zero(), rhs = P.zero();
    for (auto& t : d.terms) {
      auto parts = T2_->split(t.m);
      SuperElement l = P.from_term(parts[0], t.c), r = P.from_term(parts[1], Scalar::one(P.field()));
      lhs = P.add(lhs, P.nf_mul(S.apply(l), r));
      rhs = P.add(rhs, P.nf_mul(l, S.apply(r)));
    }
    SuperElement target = P.constant(counit(g));
    return P.sub(P.normal_form(lhs), target).is_zero() &&
           P.sub(P.normal_form(rhs), target).is_zero();
  };
  for (int g : pub)
    if (!check(P.even_gen(g)))
      return "antipode iteration did not converge on " + P.even(g).name;
  for (int i = 0; i < P.n_odd(); ++i)
    if (!check(P.odd_gen(i)))
      return "antipode iteration did not converge on " + P.odd(i).name;
  s_even_ = std::move(se);
  s_odd_ = std::move(so);
  return std::nullopt;
}

HopfValidation HopfSuperalgebra::validate(int bound) const {
  HopfValidation v;
  const SuperPresentation& P = *P_;
  auto fail = [&](const std::string& msg) {
    v.ok = false;
    if (v.failures.size() < 5) v.failures.push_back(msg);
  };
  auto pub = public_even_indices(P);

  for (size_t pi = 0; pi < pub.size(); ++pi) {
    int par = T2_->alg().parity_of(delta_even_[pi]);
    if (par == 1 || par == -1)
      fail("coproduct of " + P.even(pub[pi]).name + " is not even");
  }
  for (int i = 0; i < P.n_odd(); ++i) {
    int par = T2_->alg().parity_of(delta_odd_[i]);
    if (par == 0 && !delta_odd_[i].is_zero())
      fail("coproduct of " + P.odd(i).name + " is not odd");
    if (par == -1) fail("coproduct of " + P.odd(i).name + " has mixed parity");
  }

  for (auto& r : P.relations()) {
    if (!T2_->alg().normal_form(delta(r)).is_zero())
      fail("coproduct does not kill the relation " + P.str(r));
    if (!counit(r).is_zero()) fail("counit does not kill the relation " + P.str(r));
    if (has_antipode() && !P.normal_form(antipode(r)).is_zero())
      fail("antipode does not kill the relation " + P.str(r));
  }

  // coassociativity and counit law hold everywhere iff on generators,
  // both sides being algebra maps
  const TensorAlgebra& T3 = tensor_cube();
  {
    // (id (x) Delta): left leg -> leg 0, right leg -> legs (1,2)
    std::vector<SuperElement> ev_right, od_right;
    for (int g : pub) ev_right.push_back(T3.inject(0, P.even_gen(g)));
    for (size_t pi = 0; pi < pub.size(); ++pi)
      ev_right.push_back(retensor2(*T2_, P, delta_even_[pi], T3, 1, 2));
    for (int i = 0; i < P.n_odd(); ++i) od_right.push_back(T3.inject(0, P.odd_gen(i)));
    for (int i = 0; i < P.n_odd(); ++i)
      od_right.push_back(retensor2(*T2_, P, delta_odd_[i], T3, 1, 2));
    AlgebraHom id_delta(&T2_->alg(), &T3.alg(), ev_right, od_right, invert_window_);
    auto gens_check = [&](const SuperElement& g, const std::string& nm) {
      SuperElement lhs = delta2(g);  // (Delta (x) id) Delta
      SuperElement rhs = id_delta.apply(delta(g));
      if (!T3.alg().sub(lhs, rhs).is_zero()) fail("coassociativity fails on " + nm);
    };
    for (int g : pub) gens_check(P.even_gen(g), P.even(g).name);
    for (int i = 0; i < P.n_odd(); ++i) gens_check(P.odd_gen(i), P.odd(i).name);
  }

  auto counit_law = [&](const SuperElement& g, const std::string& nm) {
    SuperElement d = delta(g);
    SuperElement left = P.zero(), right = P.zero();
    for (auto& t : d.terms) {
      auto parts = T2_->split(t.m);
      Character eps(P_.get(), eps_even_);
      left = P.add(left, P.scale(P.from_term(parts[1], t.c),
                                 eps.apply(P.from_term(parts[0], Scalar::one(P.field())))));
      right = P.add(right, P.scale(P.from_term(parts[0], t.c),
                                   eps.apply(P.from_term(parts[1], Scalar::one(P.field())))));
    }
    if (!P.sub(P.normal_form(left), P.normal_form(g)).is_zero())
      fail("left counit law fails on " + nm);
    if (!P.sub(P.normal_form(right), P.normal_form(g)).is_zero())
      fail("right counit law fails on " + nm);
  };
  for (int g : pub) counit_law(P.even_gen(g), P.even(g).name);
  for (int i = 0; i < P.n_odd(); ++i) counit_law(P.odd_gen(i), P.odd(i).name);

  if (has_antipode()) {
    AlgebraHom S(P_.get(), P_.get(), s_even_, s_odd_, invert_window_);
    for (auto& b : P.truncated_basis(bound)) {
      SuperElement g = P.from_term(b, Scalar::one(P.field()));
      SuperElement d = delta(g);
      SuperElement lhs = P.zero(), rhs = P.zero();
      for (auto& t : d.terms) {
        auto parts = T2_->split(t.m);
        SuperElement l = P.from_term(parts[0], t.c),
                     r = P.from_term(parts[1], Scalar::one(P.field()));
        lhs = P.add(lhs, P.nf_mul(S.apply(l), r));
        rhs = P.add(rhs, P.nf_mul(l, S.apply(r)));
      }
      SuperElement target = P.constant(counit(g));
      if (!P.sub(P.normal_form(lhs), target).is_zero() ||
          !P.sub(P.normal_form(rhs), target).is_zero()) {
        fail("antipode law fails on the basis monomial " + P.monomial_str(b));
        break;
      }
    }
  } else {
    fail("no antipode is set");
  }
  return v;
}

HopfSuperalgebra HopfSuperalgebra::quotient(
    const std::string& name, const std::vector<SuperElement>& extra_relations) const {
  SuperPresentation Q = *P_;
  for (auto& r : extra_relations) Q.add_relation(r);
  HopfSuperalgebra H(name, std::move(Q), delta_even_, delta_odd_, eps_even_);
  if (has_antipode()) H.set_antipode(s_even_, s_odd_);
  H.set_invert_window(invert_window_);
  return H;
}

HopfSuperalgebra associated_hopf_algebra(const HopfSuperalgebra& H) {
  const SuperPresentation& P = H.algebra();
  SuperPresentation Pc(P.field());
  for (int i = 0; i < P.n_even(); ++i)
    if (!P.even(i).internal) Pc.add_even(P.even(i).name, P.even(i).weight, P.even(i).invertible);
  for (auto& r : P.relations()) Pc.add_relation(project_even(r));

  std::vector<SuperElement> dev;
  for (auto& img : H.delta_even_images()) dev.push_back(project_even(img));
  HopfSuperalgebra C(H.name() + "/odd", std::move(Pc), dev, {}, H.counit_even_values());
  if (H.has_antipode()) {
    std::vector<SuperElement> sev;
    for (auto& img : H.antipode_even_images()) sev.push_back(project_even(img));
    C.set_antipode(sev, {});
  }
  C.set_invert_window(H.invert_window());
  return C;
}

CotangentData cotangent_data(const HopfSuperalgebra& H, int bound) {
  const SuperPresentation& P = H.algebra();
  if (!H.has_antipode())
    throw std::logic_error("cotangent_data requires an antipode on " + H.name());
  CotangentData out{{}, {}, {}, 0, {}, associated_hopf_algebra(H), bound};
  const SuperPresentation& PC = out.C.algebra();

  auto basis = P.truncated_basis(bound);
  MonomialIndex idx;
  auto augment = [&](const Monomial& b) {
    SuperElement e = P.from_term(b, Scalar::one(P.field()));
    return P.sub(e, P.constant(H.counit(e)));
  };
  // span of I^2 within the window
  RowSpace R2(P.field());
  for (auto& b1 : basis) {
    if (P.weight_of(b1) == 0) continue;
    for (auto& b2 : basis) {
      if (P.weight_of(b2) == 0) continue;
      if (P.weight_of(b1) + P.weight_of(b2) > bound) continue;
      R2.insert(idx.coords(P.nf_mul(augment(b1), augment(b2))));
    }
  }

  // odd cotangent: classes of the odd generators modulo I^2
  std::vector<SVec> reduced(P.n_odd());
  for (int i = 0; i < P.n_odd(); ++i)
    reduced[i] = R2.reduce(idx.coords(P.normal_form(P.odd_gen(i))));
  RowSpace W(P.field());
  for (int i = 0; i < P.n_odd(); ++i)
    if (W.insert(reduced[i]).first) {
      out.w_basis.push_back(i);
      out.w_labels.push_back(P.odd(i).name);
    }
  std::vector<SVec> chosen_cols;
  for (int i : out.w_basis) chosen_cols.push_back(reduced[i]);
  out.odd_class.resize(P.n_odd());
  for (int i = 0; i < P.n_odd(); ++i) {
    auto sol = solve_columns(P.field(), chosen_cols, reduced[i]);
    if (!sol) throw std::logic_error("odd class expression failed");
    out.odd_class[i] = *sol;
  }

  // even part of I/I^2
  {
    RowSpace E(P.field());
    for (auto& b : basis)
      if (P.parity_of_monomial(b) == 0 && P.weight_of(b) > 0)
        E.insert(R2.reduce(idx.coords(augment(b))));
    out.even_cotangent_dim = E.rank();
  }

  // right coadjoint coaction rho(w) = sum (-1)^{|c1|} q(c2) (x) S(c1) c3
  int n = static_cast<int>(out.w_basis.size());
  out.coact.assign(n, std::vector<SuperElement>(n, PC.zero()));
  const TensorAlgebra& T3 = H.tensor_cube();
  Character eps(&P, H.counit_even_values());
  for (int wi = 0; wi < n; ++wi) {
    SuperElement d2 = H.delta2(P.odd_gen(out.w_basis[wi]));
    for (auto& t : d2.terms) {
      auto parts = T3.split(t.m);
      if (std::popcount(parts[1].odd) != 1) continue;
      int k = std::countr_zero(parts[1].odd);
      Scalar ev = eps.apply(P.from_term(Monomial{parts[1].e, 0}, Scalar::one(P.field())));
      if (ev.is_zero()) continue;
      Scalar sign = (P.parity_of_monomial(parts[0]) == 1) ? -Scalar::one(P.field())
                                                          : Scalar::one(P.field());
      SuperElement right = P.nf_mul(H.antipode(P.from_term(parts[0], Scalar::one(P.field()))),
                                    P.from_term(parts[2], Scalar::one(P.field())));
      SuperElement rc = PC.normal_form(project_even(right));
      for (auto& [j, cf] : out.odd_class[k])
        out.coact[wi][j] =
            PC.add(out.coact[wi][j], PC.scale(rc, t.c * ev * sign * cf));
    }
    for (int j = 0; j < n; ++j) out.coact[wi][j] = PC.normal_form(out.coact[wi][j]);
  }
  return out;
}

LieData lie_superalgebra(const HopfSuperalgebra& H, int bound) {
  CotangentData cot = cotangent_data(H, bound);
  const SuperPresentation& P = H.algebra();
  LieData out;
  out.w_labels = cot.w_labels;
  out.dim_odd = static_cast<int>(cot.w_basis.size());
  out.dim_even_cotangent = cot.even_cotangent_dim;
  Character eps(&P, H.counit_even_values());
  int n = out.dim_odd;
  size_t pi = 0;
  for (int g = 0; g < P.n_even(); ++g) {
    if (P.even(g).internal) continue;
    const SuperElement& d = H.delta_even_images()[pi++];
    std::vector<std::vector<Scalar>> M(n, std::vector<Scalar>(n, Scalar::zero(P.field())));
    for (auto& t : d.terms) {
      auto parts = H.tensor_square().split(t.m);
      if (std::popcount(parts[0].odd) != 1 || std::popcount(parts[1].odd) != 1) continue;
      int k1 = std::countr_zero(parts[0].odd), k2 = std::countr_zero(parts[1].odd);
      Scalar e1 = eps.apply(P.from_term(Monomial{parts[0].e, 0}, Scalar::one(P.field())));
      Scalar e2 = eps.apply(P.from_term(Monomial{parts[1].e, 0}, Scalar::one(P.field())));
      Scalar c = t.c * e1 * e2;
      if (c.is_zero()) continue;
      for (auto& [i, ci] : cot.odd_class[k1])
        for (auto& [j, cj] : cot.odd_class[k2]) M[i][j] += c * ci * cj;
    }
    std::vector<std::vector<Scalar>> sym(n, std::vector<Scalar>(n, Scalar::zero(P.field())));
    bool nonzero = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        sym[i][j] = M[i][j] + M[j][i];
        nonzero = nonzero || !sym[i][j].is_zero();
      }
    out.even_labels.push_back(P.even(g).name);
    out.pairing.push_back(std::move(sym));
    if (nonzero) out.graded = false;
  }
  return out;
}

HopfSuperalgebra gr_hopf_smash(const HopfSuperalgebra& H, int bound) {
  CotangentData cot = cotangent_data(H, bound);
  const SuperPresentation& P = H.algebra();
  const SuperPresentation& PC = cot.C.algebra();

  SuperPresentation G(P.field());
  for (int i = 0; i < PC.n_even(); ++i)
    if (!PC.even(i).internal)
      G.add_even(PC.even(i).name, PC.even(i).weight, PC.even(i).invertible);
  std::vector<int> wg;  // G odd index per W slot
  for (int gi : cot.w_basis) wg.push_back(G.add_odd(P.odd(gi).name, P.odd(gi).weight));
  for (auto& r : PC.relations()) G.add_relation(r);  // identical even layout

  // carry the tensor-square coproduct images of C (even layouts coincide)
  HopfSuperalgebra Hg(H.name() + ".gr", std::move(G), cot.C.delta_even_images(),
                      std::vector<SuperElement>(wg.size()), cot.C.counit_even_values());
  // rebuild with the odd coproducts in Hg's own tensor square
  const SuperPresentation& GA = Hg.algebra();
  const TensorAlgebra& T2 = Hg.tensor_square();
  std::vector<SuperElement> dod;
  int n = static_cast<int>(cot.w_basis.size());
  for (int i = 0; i < n; ++i) {
    SuperElement d = T2.inject(1, GA.odd_gen(wg[i]));
    for (int j = 0; j < n; ++j) {
      if (cot.coact[i][j].is_zero()) continue;
      SuperElement lifted = cot.coact[i][j];  // C element; same even layout in GA
      d = T2.alg().add(
          d, T2.alg().mul(T2.inject(0, GA.odd_gen(wg[j])), T2.inject(1, lifted)));
    }
    dod.push_back(d);
  }
  HopfSuperalgebra out(H.name() + ".gr", GA, cot.C.delta_even_images(), dod,
                       cot.C.counit_even_values());
  out.set_invert_window(H.invert_window());
  out.solve_antipode(std::max(bound, out.invert_window()));
  return out;
}

PsiReport verify_decomposition_psi(const HopfSuperalgebra& H, int bound) {
  PsiReport rep;
  CotangentData cot = cotangent_data(H, bound);
  HopfSuperalgebra Hg = gr_hopf_smash(H, bound);
  const SuperPresentation& P = H.algebra();
  const SuperPresentation& G = Hg.algebra();
  Character eps(&P, H.counit_even_values());

  std::vector<int> wg;
  for (size_t i = 0; i < cot.w_basis.size(); ++i)
    wg.push_back(static_cast<int>(i));  // W slot i is G's odd generator i

  // psi(g) = (q0 (x) q1)(Delta g): q0 kills odds, q1 evaluates evens by the
  // counit and sends odd generators to their W classes
  auto psi_image = [&](const SuperElement& dimg) {
    SuperElement out = G.zero();
    for (auto& t : dimg.terms) {
      auto parts = H.tensor_square().split(t.m);
      if (parts[0].odd != 0) continue;  // q0 kills it
      SuperElement left = G.from_term(Monomial{parts[0].e, 0}, t.c);
      Scalar ev = eps.apply(P.from_term(Monomial{parts[1].e, 0}, Scalar::one(P.field())));
      if (ev.is_zero()) continue;
      SuperElement right = G.constant(ev);
      uint64_t rest = parts[1].odd;
      while (rest) {
        int k = std::countr_zero(rest);
        rest &= rest - 1;
        SuperElement cls = G.zero();
        for (auto& [j, cf] : cot.odd_class[k]) cls = G.add(cls, G.scale(G.odd_gen(wg[j]), cf));
        right = G.mul(right, cls);
      }
      out = G.add(out, G.mul(left, right));
    }
    return G.normal_form(out);
  };

  std::vector<SuperElement> ev, od;
  for (auto& img : H.delta_even_images()) ev.push_back(psi_image(img));
  for (auto& img : H.delta_odd_images()) od.push_back(psi_image(img));
  AlgebraHom psi(&P, &G, ev, od, std::max(bound, H.invert_window()));

  auto bs = P.truncated_basis(bound), bd = G.truncated_basis(bound);
  rep.dim_src = static_cast<int>(bs.size());
  rep.dim_dst = static_cast<int>(bd.size());
  MonomialIndex idx;
  RowSpace rs(P.field());
  for (auto& b : bs)
    rs.insert(idx.coords(psi.apply(P.from_term(b, Scalar::one(P.field())))));
  rep.rank = rs.rank();
  rep.ok = rep.dim_src == rep.dim_dst && rep.rank == rep.dim_src;
  rep.detail = rep.ok ? "psi is bijective on the window"
                      : "psi window dims/rank: " + std::to_string(rep.dim_src) + "/" +
                            std::to_string(rep.dim_dst) + "/" + std::to_string(rep.rank);
  return rep;
}

}  // namespace sq
