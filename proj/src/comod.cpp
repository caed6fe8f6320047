#include "superquot/comod.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace sq {

namespace {

// combine per-leg monomials of a two-leg tensor algebra (leg-blocked, so the
// merge is sign-free)
Monomial merge2(const TensorAlgebra& T, const Monomial& m0, const Monomial& m1) {
  Monomial a = T.inject_mono(0, m0);
  Monomial b = T.inject_mono(1, m1);
  for (size_t i = 0; i < a.e.size(); ++i) a.e[i] += b.e[i];
  a.odd |= b.odd;
  return a;
}

// preferred presentation order: ascending weight, then as few internal
// inverse-variable factors as possible, then the window convention
bool display_less(const SuperPresentation& P, const Monomial& a, const Monomial& b) {
  int wa = P.weight_of(a), wb = P.weight_of(b);
  if (wa != wb) return wa < wb;
  int ia = 0, ib = 0;
  for (int i = 0; i < P.n_even(); ++i) {
    if (!P.even(i).internal) continue;
    ia += a.e[i];
    ib += b.e[i];
  }
  if (ia != ib) return ia < ib;
  return P.mono_less(b, a);
}

}  // namespace

SuperComodule::SuperComodule(const HopfSuperalgebra* D, std::vector<std::string> labels,
                             std::vector<int> parities)
    : D_(D), labels_(std::move(labels)), parities_(std::move(parities)) {
  rho_.assign(labels_.size(), std::vector<SuperElement>(labels_.size()));
}

void SuperComodule::set_coaction(int i, int j, SuperElement coeff) {
  rho_[i][j] = D_->algebra().normal_form(coeff);
}

std::vector<std::string> SuperComodule::validate() const {
  std::vector<std::string> out;
  auto& P = D_->algebra();
  const Field& f = P.field();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Scalar v = D_->counit(rho_[i][j]);
      Scalar want = i == j ? Scalar::one(f) : Scalar::zero(f);
      if (!(v == want)) {
        out.push_back("counit law fails at (" + labels_[i] + ", " + labels_[j] + ")");
      }
    }
  auto& T = D_->tensor_square();
  for (int i = 0; i < dim(); ++i)
    for (int k = 0; k < dim(); ++k) {
      SuperElement lhs = T.alg().zero();
      for (int j = 0; j < dim(); ++j) {
        if (rho_[j][k].is_zero() || rho_[i][j].is_zero()) continue;
        lhs = T.alg().add(lhs, T.alg().mul(T.inject(0, rho_[j][k]), T.inject(1, rho_[i][j])));
      }
      SuperElement rhs = D_->delta(rho_[i][k]);
      if (!T.alg().sub(T.alg().normal_form(lhs), rhs).is_zero()) {
        out.push_back("coassociativity fails at (" + labels_[i] + ", " + labels_[k] + ")");
      }
    }
  return out;
}

std::vector<SVec> SuperComodule::coinvariants() const {
  auto& P = D_->algebra();
  MonomialIndex DM;
  std::vector<SVec> cols;
  Scalar one = Scalar::one(P.field());
  for (int i = 0; i < dim(); ++i) {
    std::map<int, Scalar> acc;
    for (int j = 0; j < dim(); ++j) {
      for (auto& t : rho_[i][j].terms) {
        int id = j * 1 + dim() * DM.id(t.m);  // flatten (mono, j)
        auto it = acc.find(id);
        if (it == acc.end()) acc.emplace(id, t.c);
        else it->second = it->second + t.c;
      }
    }
    // subtract m_i (x) 1
    {
      int id = i + dim() * DM.id(P.empty_monomial());
      auto it = acc.find(id);
      if (it == acc.end()) acc.emplace(id, (-one));
      else it->second = it->second - one;
    }
    SVec col;
    for (auto& [id, c] : acc)
      if (!c.is_zero()) col.push_back({id, c});
    cols.push_back(std::move(col));
  }
  return kernel_basis(P.field(), cols);
}

LeftSuperComodule::LeftSuperComodule(const HopfSuperalgebra* D, std::vector<std::string> labels,
                                     std::vector<int> parities)
    : D_(D), labels_(std::move(labels)), parities_(std::move(parities)) {
  lam_.assign(labels_.size(), std::vector<SuperElement>(labels_.size()));
}

void LeftSuperComodule::set_coaction(int j, int l, SuperElement coeff) {
  lam_[j][l] = D_->algebra().normal_form(coeff);
}

std::vector<std::string> LeftSuperComodule::validate() const {
  std::vector<std::string> out;
  auto& P = D_->algebra();
  const Field& f = P.field();
  for (int j = 0; j < dim(); ++j)
    for (int l = 0; l < dim(); ++l) {
      Scalar v = D_->counit(lam_[j][l]);
      Scalar want = j == l ? Scalar::one(f) : Scalar::zero(f);
      if (!(v == want))
        out.push_back("counit law fails at (" + labels_[j] + ", " + labels_[l] + ")");
    }
  // (Delta (x) id) lambda = (id (x) lambda) lambda
  auto& T = D_->tensor_square();
  for (int j = 0; j < dim(); ++j)
    for (int l = 0; l < dim(); ++l) {
      SuperElement lhs = D_->delta(lam_[j][l]);
      SuperElement rhs = T.alg().zero();
      for (int m = 0; m < dim(); ++m) {
        if (lam_[j][m].is_zero() || lam_[m][l].is_zero()) continue;
        rhs = T.alg().add(rhs, T.alg().mul(T.inject(0, lam_[j][m]), T.inject(1, lam_[m][l])));
      }
      if (!T.alg().sub(lhs, T.alg().normal_form(rhs)).is_zero())
        out.push_back("coassociativity fails at (" + labels_[j] + ", " + labels_[l] + ")");
    }
  return out;
}

std::vector<SVec> cotensor_product(const SuperComodule& M, const LeftSuperComodule& L) {
  auto& P = M.over().algebra();
  MonomialIndex DM;
  int md = M.dim(), ld = L.dim();
  std::vector<SVec> cols;
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < ld; ++j) {
      std::map<int, Scalar> acc;
      auto bump = [&](int k, const Monomial& m, int l, const Scalar& c) {
        int id = (k * ld + l) + md * ld * DM.id(m);
        auto it = acc.find(id);
        if (it == acc.end()) acc.emplace(id, c);
        else it->second = it->second + c;
      };
      for (int k = 0; k < md; ++k)
        for (auto& t : M.coaction(i, k).terms) bump(k, t.m, j, t.c);
      for (int l = 0; l < ld; ++l)
        for (auto& t : L.coaction(j, l).terms) bump(i, t.m, l, (-t.c));
      SVec col;
      for (auto& [id, c] : acc)
        if (!c.is_zero()) col.push_back({id, c});
      cols.push_back(std::move(col));
    }
  return kernel_basis(P.field(), cols);
}

SubcoalgebraHull finite_subcoalgebra(const HopfSuperalgebra& H,
                                     const std::vector<SuperElement>& seeds, int size_cap) {
  auto& P = H.algebra();
  auto& T = H.tensor_square();
  SubcoalgebraHull hull;
  MonomialIndex CM;
  RowSpace span(P.field());
  std::deque<SuperElement> queue;
  for (auto& s : seeds) queue.push_back(P.normal_form(s));
  size_t next = 0;
  while (!queue.empty()) {
    SuperElement e = queue.front();
    queue.pop_front();
    if (e.is_zero()) continue;
    SVec c;
    for (auto& t : e.terms) c.push_back({CM.id(t.m), t.c});
    std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return x.first < y.first; });
    if (!span.insert(c).first) continue;
    hull.basis.push_back(e);
  }
  while (next < hull.basis.size()) {
    if (static_cast<int>(hull.basis.size()) > size_cap) return hull;  // closed = false
    SuperElement d = H.delta(hull.basis[next++]);
    for (auto& t : d.terms) {
      auto parts = T.split(t.m);
      for (int leg = 0; leg < 2; ++leg) {
        SuperElement cand = P.normal_form(P.from_term(parts[leg], Scalar::one(P.field())));
        if (cand.is_zero()) continue;
        SVec c;
        for (auto& tt : cand.terms) c.push_back({CM.id(tt.m), tt.c});
        std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return x.first < y.first; });
        if (span.insert(c).first) hull.basis.push_back(cand);
      }
    }
  }
  hull.closed = true;
  return hull;
}

SuperElement quotient_coaction(const HopfSuperalgebra& H, const SuperPresentation& D,
                               const SuperElement& e) {
  auto& T = H.tensor_square();
  SuperElement d = H.delta(e);
  SuperElement out = T.alg().zero();
  for (auto& t : d.terms) {
    auto parts = T.split(t.m);
    SuperElement right = D.normal_form(D.from_term(D.widen(parts[1]), t.c));
    if (right.is_zero()) continue;
    SuperElement acc;
    for (auto& rt : right.terms)
      acc.terms.push_back({merge2(T, parts[0], Monomial{rt.m.e, rt.m.odd}), rt.c});
    out = T.alg().add(out, T.alg().normal_form(acc));
  }
  return out;
}

WindowCoinvariants algebra_coinvariants(const HopfSuperalgebra& H, const SuperPresentation& D,
                                        int bound) {
  auto& P = H.algebra();
  auto& T = H.tensor_square();
  WindowCoinvariants out;
  out.window = P.truncated_basis(bound);
  MonomialIndex TM;
  Scalar one = Scalar::one(P.field());
  std::vector<SVec> cols;
  for (auto& m : out.window) {
    SuperElement b = P.from_term(m, one);
    SuperElement v = T.alg().sub(quotient_coaction(H, D, b),
                                 T.alg().normal_form(T.inject(0, b)));
    SVec c;
    for (auto& t : v.terms) c.push_back({TM.id(t.m), t.c});
    std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return x.first < y.first; });
    cols.push_back(std::move(c));
  }
  // per-weight dims: corank of the leading sub-blocks (the window is sorted
  // by ascending weight)
  out.dims.assign(bound + 1, 0);
  {
    RowSpace rs(P.field());
    size_t i = 0;
    for (int n = 0; n <= bound; ++n) {
      while (i < out.window.size() && P.weight_of(out.window[i]) <= n) {
        rs.insert(cols[i]);
        ++i;
      }
      out.dims[n] = static_cast<int>(i) - rs.rank();
    }
  }
  auto ker = kernel_basis(P.field(), cols);
  for (auto& kv : ker) {
    SuperElement e;
    for (auto& [idx, c] : kv) e.terms.push_back({out.window[idx], c});
    out.vectors.push_back(P.normal_form(e));
  }
  std::stable_sort(out.vectors.begin(), out.vectors.end(),
                   [&](const SuperElement& a, const SuperElement& b) {
                     int wa = P.max_weight(a), wb = P.max_weight(b);
                     if (wa != wb) return wa < wb;
                     return display_less(P, a.terms[0].m, b.terms[0].m);
                   });
  return out;
}

std::vector<SuperElement> minimal_generators(const SuperPresentation& P,
                                             const std::vector<SuperElement>& vectors,
                                             int bound) {
  MonomialIndex CM;
  RowSpace span(P.field());
  std::vector<SuperElement> gens;
  std::vector<SuperElement> closure;  // span elements, used as left factors
  auto coords = [&](const SuperElement& e) {
    SVec c;
    for (auto& t : e.terms) c.push_back({CM.id(t.m), t.c});
    std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return x.first < y.first; });
    return c;
  };
  auto push = [&](const SuperElement& e) {
    if (e.is_zero() || P.max_weight(e) > bound) return false;
    if (!span.insert(coords(e)).first) return false;
    closure.push_back(e);
    return true;
  };
  push(P.one());
  for (auto& raw : vectors) {
    SuperElement v = P.normal_form(raw);
    if (v.is_zero() || span.contains(coords(v))) continue;
    gens.push_back(v);
    // close the span under multiplication by the generators found so far
    std::deque<SuperElement> queue(closure.begin(), closure.end());
    push(v);
    queue.push_back(v);
    while (!queue.empty()) {
      SuperElement u = queue.front();
      queue.pop_front();
      for (auto& g : gens) {
        SuperElement p = P.nf_mul(u, g);
        if (push(p)) queue.push_back(p);
      }
    }
  }
  return gens;
}

SuperElement EtaSection::apply(const SuperPresentation& D, const SuperElement& d) const {
  SuperElement nf = D.normal_form(d);
  SuperElement out;
  for (auto& t : nf.terms) {
    bool found = false;
    for (size_t i = 0; i < dom.size(); ++i) {
      if (dom[i] == t.m) {
        // image lives in the target presentation; accumulate raw, caller nf's
        for (auto& it : image[i].terms) out.terms.push_back({it.m, it.c * t.c});
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("eta: element outside the solved window");
  }
  return out;
}

std::optional<EtaSection> eta_extension(const HopfSuperalgebra& H, const HopfSuperalgebra& D,
                                        int bound) {
  auto& P = H.algebra();
  auto& DP = D.algebra();
  auto& T = H.tensor_square();
  auto& DT = D.tensor_square();
  const Field& f = P.field();
  Scalar one = Scalar::one(f);

  EtaSection eta;
  eta.dom = DP.truncated_basis(bound);
  auto cwin = P.truncated_basis(bound);
  std::map<Monomial, int> solved;  // dom monomial -> slot in eta.image
  eta.image.resize(eta.dom.size());

  // cache of rho(b) coords per candidate, tagged by C (x) D tensor monomials
  MonomialIndex TM;
  std::vector<SVec> rho_cols(cwin.size());
  std::vector<bool> rho_done(cwin.size(), false);
  auto rho_col = [&](size_t bi) -> const SVec& {
    if (!rho_done[bi]) {
      SuperElement b = P.from_term(cwin[bi], one);
      SuperElement v = quotient_coaction(H, DP, b);
      SVec c;
      for (auto& t : v.terms) c.push_back({TM.id(t.m), t.c});
      std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return x.first < y.first; });
      rho_cols[bi] = std::move(c);
      rho_done[bi] = true;
    }
    return rho_cols[bi];
  };
  auto tensor_coords = [&](const SuperElement& c_elem, const Monomial& d_mono, SVec& acc,
                           const Scalar& scale) {
    for (auto& t : c_elem.terms) {
      Monomial m = merge2(T, t.m, DP.widen(d_mono));
      acc.push_back({TM.id(m), t.c * scale});
    }
  };

  // solve by ascending weight; Delta legs never exceed the weight of the
  // input, so dependencies point backwards apart from self-coupling
  for (size_t di = 0; di < eta.dom.size(); ++di) {
    const Monomial& dm = eta.dom[di];
    if (DP.weight_of(dm) == 0) {
      eta.image[di] = P.one();
      solved[dm] = static_cast<int>(di);
      continue;
    }
    int want_parity = DP.parity_of_monomial(dm);
    // Delta_D(d), both legs D-reduced by construction of D's tensor square
    SuperElement dd = D.delta(DP.from_term(dm, one));
    // self-coupling right legs and known right-hand side
    std::vector<std::pair<Monomial, Scalar>> self;  // (d2, coeff) with d1 = d
    SVec rhs;
    bool dependency_ok = true;
    for (auto& t : dd.terms) {
      auto parts = DT.split(t.m);
      Monomial d1 = DP.widen(parts[0]), d2 = DP.widen(parts[1]);
      if (d1 == dm) {
        self.push_back({d2, t.c});
      } else {
        auto it = solved.find(d1);
        if (it == solved.end()) { dependency_ok = false; break; }
        tensor_coords(eta.image[it->second], d2, rhs, t.c);
      }
    }
    if (!dependency_ok) return std::nullopt;
    std::sort(rhs.begin(), rhs.end(), [](auto& x, auto& y) { return x.first < y.first; });
    {  // merge duplicates
      SVec m;
      for (auto& [i, c] : rhs) {
        if (!m.empty() && m.back().first == i) m.back().second = m.back().second + c;
        else m.push_back({i, c});
      }
      m.erase(std::remove_if(m.begin(), m.end(),
                             [](auto& p) { return p.second.is_zero(); }),
              m.end());
      rhs = std::move(m);
    }

    // unknowns: parity-matching window monomials b; equation
    //   rho(b) - sum_self b (x) d2 = rhs,
    // preferring solutions with pi(eta(d)) = d (a section of the projection)
    std::vector<size_t> cand;
    for (size_t bi = 0; bi < cwin.size(); ++bi)
      if (P.parity_of_monomial(cwin[bi]) == want_parity) cand.push_back(bi);
    std::sort(cand.begin(), cand.end(), [&](size_t x, size_t y) {
      return display_less(P, cwin[x], cwin[y]);
    });
    const int sec_base = 1 << 29;  // disjoint row block for the section preference
    MonomialIndex SM;
    auto build = [&](bool with_section) -> std::optional<SVec> {
      std::vector<SVec> cols;
      for (size_t bi : cand) {
        std::map<int, Scalar> acc;
        for (auto& [i, c] : rho_col(bi)) {
          auto it = acc.find(i);
          if (it == acc.end()) acc.emplace(i, c);
          else it->second = it->second + c;
        }
        SuperElement b = P.from_term(cwin[bi], one);
        for (auto& [d2, c] : self) {
          SVec tc;
          tensor_coords(b, d2, tc, (-c));
          for (auto& [i, cc] : tc) {
            auto it = acc.find(i);
            if (it == acc.end()) acc.emplace(i, cc);
            else it->second = it->second + cc;
          }
        }
        if (with_section) {
          SuperElement pb = DP.normal_form(DP.from_term(DP.widen(cwin[bi]), one));
          for (auto& t : pb.terms) {
            int row = sec_base + SM.id(t.m);
            auto it = acc.find(row);
            if (it == acc.end()) acc.emplace(row, t.c);
            else it->second = it->second + t.c;
          }
        }
        SVec col;
        for (auto& [i, c] : acc)
          if (!c.is_zero()) col.push_back({i, c});
        cols.push_back(std::move(col));
      }
      SVec target = rhs;
      if (with_section) {
        target.push_back({sec_base + SM.id(dm), one});
        std::sort(target.begin(), target.end(), [](auto& x, auto& y) { return x.first < y.first; });
      }
      return solve_columns(f, cols, target);
    };
    auto sol = build(true);
    if (!sol) sol = build(false);
    if (!sol) return std::nullopt;
    SuperElement img;
    for (auto& [ci, c] : *sol) img.terms.push_back({cwin[cand[ci]], c});
    eta.image[di] = P.normal_form(img);
    solved[dm] = static_cast<int>(di);
  }
  return eta;
}

std::optional<std::string> sigma_retraction_check(const HopfSuperalgebra& H,
                                                  const HopfSuperalgebra& D,
                                                  const EtaSection& eta, int bound) {
  auto& P = H.algebra();
  auto& DP = D.algebra();
  auto& T3 = H.tensor_cube();
  Scalar one = Scalar::one(P.field());
  for (auto& m : P.truncated_basis(bound)) {
    SuperElement a = P.from_term(m, one);
    // sigma(rho(a)) = a_(1) eta(S_D(pi(a_(2))) pi(a_(3))); no factors cross,
    // so the super case needs no extra signs
    SuperElement d2 = H.delta2(a);
    SuperElement acc = P.zero();
    try {
      for (auto& t : d2.terms) {
        auto parts = T3.split(t.m);
        SuperElement mid = DP.normal_form(DP.from_term(DP.widen(parts[1]), one));
        SuperElement right = DP.normal_form(DP.from_term(DP.widen(parts[2]), one));
        if (mid.is_zero() || right.is_zero()) continue;
        SuperElement d = DP.nf_mul(D.antipode(mid), right);
        SuperElement ed = eta.apply(DP, d);
        acc = P.add(acc, P.nf_mul(P.from_term(parts[0], t.c), P.normal_form(ed)));
      }
    } catch (const std::exception& ex) {
      return std::string("sigma(rho(") + P.str(a) + ")): " + ex.what();
    }
    if (!P.sub(P.normal_form(acc), P.normal_form(a)).is_zero())
      return "sigma(rho(" + P.str(a) + ")) != " + P.str(a);
  }
  return std::nullopt;
}

std::optional<std::vector<std::vector<Scalar>>> colinear_retraction(
    const SuperComodule& V, const std::vector<int>& incl) {
  auto& P = V.over().algebra();
  const Field& f = P.field();
  Scalar one = Scalar::one(f);
  int n = V.dim(), u = static_cast<int>(incl.size());
  MonomialIndex DM;
  // unknowns s[j][p] (j over U, p over V), parity matching
  std::vector<std::pair<int, int>> unknowns;
  for (int j = 0; j < u; ++j)
    for (int p = 0; p < n; ++p)
      if (V.parity(incl[j]) == V.parity(p)) unknowns.push_back({j, p});
  // rows: colinearity over (q, D-mono, slot p of the input) and the
  // restriction rows s(u_j) = u_j
  std::map<long long, Scalar> target_acc;
  std::vector<std::map<long long, Scalar>> cols(unknowns.size());
  auto bump = [&](std::map<long long, Scalar>& m, long long id, const Scalar& c) {
    auto it = m.find(id);
    if (it == m.end()) m.emplace(id, c);
    else it->second = it->second + c;
  };
  long long stride = static_cast<long long>(n) * n;
  // colinearity (s (x) id) rho_V = rho_V s, one equation block per input p
  for (int p = 0; p < n; ++p) {
    for (size_t ui = 0; ui < unknowns.size(); ++ui) {
      auto [j, q] = unknowns[ui];
      // LHS: s applied to the left leg of rho(v_p): term u_j (x) c_pq
      for (auto& t : V.coaction(p, q).terms) {
        long long id = stride * DM.id(t.m) + static_cast<long long>(p) * n + incl[j];
        bump(cols[ui], id, t.c);
      }
      // RHS: rho(s(v_p)) = s_{j p} rho(u_j)
      if (q == p) {
        for (int r = 0; r < n; ++r)
          for (auto& t : V.coaction(incl[j], r).terms) {
            long long id = stride * DM.id(t.m) + static_cast<long long>(p) * n + r;
            bump(cols[ui], id, (-t.c));
          }
      }
    }
  }
  // restriction rows: s(v_{incl[j']}) = u_{j'}
  long long rbase = stride * (static_cast<long long>(DM.size()) + 4);
  for (int jp = 0; jp < u; ++jp) {
    for (size_t ui = 0; ui < unknowns.size(); ++ui) {
      auto [j, q] = unknowns[ui];
      if (q == incl[jp]) bump(cols[ui], rbase + static_cast<long long>(jp) * n + incl[j], one);
    }
    bump(target_acc, rbase + static_cast<long long>(jp) * n + incl[jp], one);
  }
  // re-index rows densely
  std::map<long long, int> rowid;
  auto rid = [&](long long id) {
    auto it = rowid.find(id);
    if (it != rowid.end()) return it->second;
    int v = static_cast<int>(rowid.size());
    rowid.emplace(id, v);
    return v;
  };
  std::vector<SVec> scols(unknowns.size());
  for (size_t ui = 0; ui < unknowns.size(); ++ui) {
    for (auto& [id, c] : cols[ui])
      if (!c.is_zero()) scols[ui].push_back({rid(id), c});
    std::sort(scols[ui].begin(), scols[ui].end(), [](auto& x, auto& y) { return x.first < y.first; });
  }
  SVec target;
  for (auto& [id, c] : target_acc)
    if (!c.is_zero()) target.push_back({rid(id), c});
  std::sort(target.begin(), target.end(), [](auto& x, auto& y) { return x.first < y.first; });
  auto sol = solve_columns(f, scols, target);
  if (!sol) return std::nullopt;
  std::vector<std::vector<Scalar>> s(u, std::vector<Scalar>(n, Scalar::zero(f)));
  for (auto& [ui, c] : *sol) s[unknowns[ui].first][unknowns[ui].second] = c;
  return s;
}

}  // namespace sq
