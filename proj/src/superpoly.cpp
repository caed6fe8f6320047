#include "superquot/superpoly.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sq {

namespace {

int32_t safe_at(const std::vector<int32_t>& v, size_t i) {
  return i < v.size() ? v[i] : 0;
}

}  // namespace

Scalar koszul_sign(const Field& f, uint64_t s1, uint64_t s2) {
  int inversions = 0;
  uint64_t rest = s1;
  while (rest) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    uint64_t below = (i == 0) ? 0 : (s2 & ((uint64_t{1} << i) - 1));
    inversions += std::popcount(below);
  }
  return (inversions & 1) ? -Scalar::one(f) : Scalar::one(f);
}

// ---------------------------------------------------------------- completion

struct SuperPresentation::Completion {
  bool ok = false;
  bool zero_ring = false;
  std::vector<SuperElement> gb;  // monic leads, tails reduced
  int snapshot_gens = 0;         // n_even at completion time
  int cap_used = 0;
};

SuperPresentation::SuperPresentation(const SuperPresentation& o)
    : field_(o.field_), evens_(o.evens_), odds_(o.odds_), relations_(o.relations_) {
  std::lock_guard<std::mutex> lk(o.mu_);
  completion_ = o.completion_;
}

SuperPresentation& SuperPresentation::operator=(const SuperPresentation& o) {
  if (this == &o) return *this;
  field_ = o.field_;
  evens_ = o.evens_;
  odds_ = o.odds_;
  relations_ = o.relations_;
  std::lock_guard<std::mutex> lk(o.mu_);
  completion_ = o.completion_;
  return *this;
}

int SuperPresentation::add_even(const std::string& name, int weight, bool invertible) {
  if (weight < 1) throw std::invalid_argument("generator weight must be positive");
  if (find_even(name) || find_odd(name))
    throw std::invalid_argument("duplicate generator name: " + name);
  int idx = n_even();
  evens_.push_back(EvenGen{name, weight, invertible, -1, -1, false});
  if (invertible) {
    int uid = n_even();
    evens_.push_back(EvenGen{name + "^-1", weight, false, -1, idx, true});
    evens_[idx].inverse_var = uid;
  }
  completion_.reset();
  return idx;
}

int SuperPresentation::add_odd(const std::string& name, int weight) {
  if (weight < 1) throw std::invalid_argument("generator weight must be positive");
  if (find_even(name) || find_odd(name))
    throw std::invalid_argument("duplicate generator name: " + name);
  if (n_odd() >= 64) throw std::invalid_argument("at most 64 odd generators supported");
  odds_.push_back(OddGen{name, weight});
  completion_.reset();
  return n_odd() - 1;
}

void SuperPresentation::add_relation(const SuperElement& r) {
  SuperElement w;
  for (auto& t : r.terms) w.terms.push_back(Term{widen(t.m), t.c});
  sort_terms(w.terms);
  if (w.is_zero()) return;
  int par = parity_of(w);
  if (par == -1) throw std::invalid_argument("relation must be parity-homogeneous: " + str(r));
  relations_.push_back(std::move(w));
  completion_.reset();
}

std::optional<int> SuperPresentation::find_even(const std::string& name) const {
  for (int i = 0; i < n_even(); ++i)
    if (evens_[i].name == name) return i;
  return std::nullopt;
}

std::optional<int> SuperPresentation::find_odd(const std::string& name) const {
  for (int i = 0; i < n_odd(); ++i)
    if (odds_[i].name == name) return i;
  return std::nullopt;
}

Monomial SuperPresentation::widen(const Monomial& m) const {
  if (static_cast<int>(m.e.size()) == n_even()) return m;
  if (static_cast<int>(m.e.size()) > n_even())
    throw std::logic_error("monomial from a larger presentation");
  Monomial r = m;
  r.e.resize(n_even(), 0);
  return r;
}

// ---------------------------------------------------------------- builders

SuperElement SuperPresentation::one() const { return constant(Scalar::one(field_)); }

SuperElement SuperPresentation::constant(const Scalar& c) const {
  if (c.is_zero()) return {};
  return SuperElement{{Term{empty_monomial(), c}}};
}

SuperElement SuperPresentation::even_gen(int idx, int power) const {
  if (idx < 0 || idx >= n_even()) throw std::out_of_range("even generator index");
  if (power == 0) return one();
  int slot = idx;
  if (power < 0) {
    slot = evens_[idx].inverse_var;
    if (slot < 0)
      throw std::invalid_argument("generator is not invertible: " + evens_[idx].name);
    power = -power;
  }
  Monomial m = empty_monomial();
  m.e[slot] = power;
  return SuperElement{{Term{m, Scalar::one(field_)}}};
}

SuperElement SuperPresentation::odd_gen(int idx) const {
  if (idx < 0 || idx >= n_odd()) throw std::out_of_range("odd generator index");
  Monomial m = empty_monomial();
  m.odd = uint64_t{1} << idx;
  return SuperElement{{Term{m, Scalar::one(field_)}}};
}

SuperElement SuperPresentation::from_term(const Monomial& m, const Scalar& c) const {
  if (c.is_zero()) return {};
  return SuperElement{{Term{widen(m), c}}};
}

// ---------------------------------------------------------------- order

bool SuperPresentation::mono_less(const Monomial& a, const Monomial& b) const {
  int wa = weight_of(a), wb = weight_of(b);
  if (wa != wb) return wa < wb;
  // lex with internal inverse variables heaviest, then declaration order
  for (int pass = 1; pass >= 0; --pass) {
    for (int i = 0; i < n_even(); ++i) {
      if (static_cast<int>(evens_[i].internal) != pass) continue;
      int32_t ea = safe_at(a.e, i), eb = safe_at(b.e, i);
      if (ea != eb) return ea < eb;
    }
  }
  int pa = std::popcount(a.odd), pb = std::popcount(b.odd);
  if (pa != pb) return pa < pb;
  return a.odd < b.odd;
}

void SuperPresentation::sort_terms(std::vector<Term>& ts) const {
  std::sort(ts.begin(), ts.end(),
            [this](const Term& x, const Term& y) { return mono_less(y.m, x.m); });
}

int SuperPresentation::weight_of(const Monomial& m) const {
  int w = 0;
  for (int i = 0; i < static_cast<int>(m.e.size()); ++i) w += m.e[i] * evens_[i].weight;
  uint64_t rest = m.odd;
  while (rest) {
    w += odds_[std::countr_zero(rest)].weight;
    rest &= rest - 1;
  }
  return w;
}

int SuperPresentation::max_weight(const SuperElement& e) const {
  int w = 0;
  for (auto& t : e.terms) w = std::max(w, weight_of(t.m));
  return w;
}

int SuperPresentation::parity_of_monomial(const Monomial& m) const {
  return std::popcount(m.odd) & 1;
}

int SuperPresentation::parity_of(const SuperElement& e) const {
  if (e.is_zero()) return 0;
  int p = parity_of_monomial(e.terms[0].m);
  for (auto& t : e.terms)
    if (parity_of_monomial(t.m) != p) return -1;
  return p;
}

// ---------------------------------------------------------------- arithmetic

SuperElement SuperPresentation::add(const SuperElement& a, const SuperElement& b) const {
  std::map<Monomial, Scalar> acc;
  for (auto& t : a.terms) {
    auto [it, fresh] = acc.emplace(widen(t.m), t.c);
    if (!fresh) it->second += t.c;
  }
  for (auto& t : b.terms) {
    auto [it, fresh] = acc.emplace(widen(t.m), t.c);
    if (!fresh) it->second += t.c;
  }
  SuperElement r;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms.push_back(Term{m, c});
  sort_terms(r.terms);
  return r;
}

SuperElement SuperPresentation::neg(const SuperElement& a) const {
  SuperElement r = a;
  for (auto& t : r.terms) t.c = -t.c;
  return r;
}

SuperElement SuperPresentation::sub(const SuperElement& a, const SuperElement& b) const {
  return add(a, neg(b));
}

SuperElement SuperPresentation::scale(const SuperElement& a, const Scalar& c) const {
  if (c.is_zero()) return {};
  SuperElement r = a;
  for (auto& t : r.terms) t.c *= c;
  return r;
}

SuperElement SuperPresentation::mul(const SuperElement& a, const SuperElement& b) const {
  std::map<Monomial, Scalar> acc;
  for (auto& ta : a.terms)
    for (auto& tb : b.terms) {
      const Monomial ma = widen(ta.m), mb = widen(tb.m);
      if (ma.odd & mb.odd) continue;  // repeated odd factor
      Monomial m;
      m.e.resize(n_even());
      for (int i = 0; i < n_even(); ++i) m.e[i] = ma.e[i] + mb.e[i];
      m.odd = ma.odd | mb.odd;
      Scalar c = ta.c * tb.c * koszul_sign(field_, ma.odd, mb.odd);
      auto [it, fresh] = acc.emplace(std::move(m), c);
      if (!fresh) it->second += c;
    }
  SuperElement r;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms.push_back(Term{m, c});
  sort_terms(r.terms);
  return r;
}

// ---------------------------------------------------------------- reduction

namespace {

bool mono_divides(const Monomial& d, const Monomial& m) {
  if ((d.odd & m.odd) != d.odd) return false;
  for (size_t i = 0; i < d.e.size(); ++i)
    if (d.e[i] > safe_at(m.e, i)) return false;
  return true;
}

Monomial mono_quotient(const Monomial& m, const Monomial& d) {
  Monomial q;
  q.e.resize(m.e.size());
  for (size_t i = 0; i < m.e.size(); ++i) q.e[i] = m.e[i] - safe_at(d.e, i);
  q.odd = m.odd & ~d.odd;
  return q;
}

}  // namespace

SuperPresentation::Completion& SuperPresentation::completion_state() const {
  if (!completion_) complete();
  return *completion_;
}

void SuperPresentation::complete(int effort_cap) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (completion_ && completion_->snapshot_gens == n_even() &&
      (completion_->ok || effort_cap <= completion_->cap_used))
    return;
  auto st = std::make_shared<Completion>();
  st->snapshot_gens = n_even();
  st->cap_used = effort_cap;

  std::vector<SuperElement>& G = st->gb;
  auto lead = [](const SuperElement& g) -> const Monomial& { return g.terms[0].m; };

  // reduce e fully against the current G (local copy of normal_form since
  // the shared completion state is still under construction)
  auto reduce = [&](SuperElement e) {
    SuperElement out;
    while (!e.is_zero()) {
      const Term t = e.terms[0];
      const SuperElement* red = nullptr;
      for (auto& g : G)
        if (mono_divides(lead(g), t.m)) { red = &g; break; }
      if (!red) {
        out.terms.push_back(t);
        e.terms.erase(e.terms.begin());
        continue;
      }
      Monomial q = mono_quotient(t.m, lead(*red));
      Scalar sign = koszul_sign(field_, q.odd, lead(*red).odd);
      SuperElement p = mul(from_term(q, Scalar::one(field_)), *red);
      e = sub(e, scale(p, t.c * sign));
    }
    return out;  // already sorted: terms removed in descending order
  };

  std::deque<SuperElement> queue;
  for (auto& r : relations_) queue.push_back(r);
  for (int i = 0; i < n_even(); ++i)
    if (evens_[i].invertible && evens_[i].inverse_var >= 0)
      queue.push_back(sub(mul(even_gen(i), even_gen(i, -1)), one()));

  std::deque<std::pair<int, int>> pairs;      // S-pairs by basis index
  std::deque<std::pair<int, int>> exterior;   // (basis index, odd gen)
  int effort = 0;
  bool capped = false;

  auto admit = [&](SuperElement h) {
    h = reduce(std::move(h));
    if (h.is_zero()) return;
    if (h.terms[0].m == empty_monomial()) {
      st->zero_ring = true;
      return;
    }
    h = scale(h, h.terms[0].c.inverse());
    int idx = static_cast<int>(G.size());
    for (int j = 0; j < idx; ++j) pairs.emplace_back(j, idx);
    uint64_t rest = h.terms[0].m.odd;
    while (rest) {
      exterior.emplace_back(idx, std::countr_zero(rest));
      rest &= rest - 1;
    }
    G.push_back(std::move(h));
  };

  while (!queue.empty() || !pairs.empty() || !exterior.empty()) {
    if (st->zero_ring) break;
    if (++effort > effort_cap) { capped = true; break; }
    if (!queue.empty()) {
      SuperElement h = queue.front();
      queue.pop_front();
      admit(std::move(h));
      continue;
    }
    if (!exterior.empty()) {
      auto [gi, k] = exterior.front();
      exterior.pop_front();
      admit(mul(odd_gen(k), G[gi]));
      continue;
    }
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const Monomial &mi = lead(G[i]), &mj = lead(G[j]);
    // classical coprimality criterion, applied only in the purely even case
    bool even_i = true, even_j = true;
    for (auto& t : G[i].terms) even_i = even_i && t.m.odd == 0;
    for (auto& t : G[j].terms) even_j = even_j && t.m.odd == 0;
    if (even_i && even_j) {
      bool coprime = true;
      for (int c = 0; c < n_even(); ++c)
        if (mi.e[c] > 0 && mj.e[c] > 0) coprime = false;
      if (coprime) continue;
    }
    Monomial lcm;
    lcm.e.resize(n_even());
    for (int c = 0; c < n_even(); ++c) lcm.e[c] = std::max(mi.e[c], mj.e[c]);
    lcm.odd = mi.odd | mj.odd;
    Monomial qi = mono_quotient(lcm, mi), qj = mono_quotient(lcm, mj);
    SuperElement pi = mul(from_term(qi, Scalar::one(field_)), G[i]);
    SuperElement pj = mul(from_term(qj, Scalar::one(field_)), G[j]);
    Scalar ci = koszul_sign(field_, qi.odd, mi.odd);
    Scalar cj = koszul_sign(field_, qj.odd, mj.odd);
    admit(sub(scale(pi, ci), scale(pj, cj)));
  }

  if (st->zero_ring) {
    st->gb = {one()};
    st->ok = true;
  } else if (capped) {
    st->ok = false;
  } else {
    // autoreduce: minimal leads, fully reduced tails, ascending order
    std::vector<SuperElement> sorted = G;
    std::sort(sorted.begin(), sorted.end(), [&](const SuperElement& x, const SuperElement& y) {
      return mono_less(x.terms[0].m, y.terms[0].m);
    });
    std::vector<SuperElement> kept;
    for (auto& g : sorted) {
      bool redundant = false;
      for (auto& h : kept)
        if (mono_divides(h.terms[0].m, g.terms[0].m)) { redundant = true; break; }
      if (!redundant) kept.push_back(g);
    }
    G = kept;
    for (auto& g : G) {
      SuperElement tail = g;
      tail.terms.erase(tail.terms.begin());
      tail = reduce(std::move(tail));
      SuperElement h = g;
      h.terms.resize(1);
      g = add(h, tail);
    }
    st->ok = true;
  }
  completion_ = st;
}

bool SuperPresentation::completion_ok() const {
  return completion_state().ok;
}

const std::vector<SuperElement>& SuperPresentation::groebner() const {
  auto& st = completion_state();
  if (!st.ok)
    throw std::runtime_error("relation completion did not finish within the effort cap");
  return st.gb;
}

SuperElement SuperPresentation::normal_form(const SuperElement& e) const {
  const auto& G = groebner();
  SuperElement f;
  for (auto& t : e.terms) f.terms.push_back(Term{widen(t.m), t.c});
  sort_terms(f.terms);
  SuperElement out;
  while (!f.is_zero()) {
    const Term t = f.terms[0];
    const SuperElement* red = nullptr;
    for (auto& g : G)
      if (mono_divides(g.terms[0].m, t.m)) { red = &g; break; }
    if (!red) {
      out.terms.push_back(t);
      f.terms.erase(f.terms.begin());
      continue;
    }
    Monomial q = mono_quotient(t.m, red->terms[0].m);
    Scalar sign = koszul_sign(field_, q.odd, red->terms[0].m.odd);
    SuperElement p = mul(from_term(q, Scalar::one(field_)), *red);
    f = sub(f, scale(p, t.c * sign));
  }
  return out;
}

SuperElement SuperPresentation::nf_mul(const SuperElement& a, const SuperElement& b) const {
  return normal_form(mul(a, b));
}

// ---------------------------------------------------------------- basis

std::vector<Monomial> SuperPresentation::truncated_basis(int bound) const {
  const auto& G = groebner();
  std::vector<Monomial> leads;
  for (auto& g : G) leads.push_back(g.terms[0].m);
  std::vector<Monomial> out;
  std::vector<int32_t> e(n_even(), 0);

  // enumerate odd subsets for a fixed even part
  auto emit_odds = [&](const Monomial& base, int budget) {
    std::vector<std::pair<uint64_t, int>> stack{{0, 0}};  // (mask, next index)
    while (!stack.empty()) {
      auto [mask, next] = stack.back();
      stack.pop_back();
      Monomial m = base;
      m.odd = mask;
      bool reducible = false;
      for (auto& L : leads)
        if (mono_divides(L, m)) { reducible = true; break; }
      if (!reducible) out.push_back(m);
      for (int k = next; k < n_odd(); ++k) {
        int wk = odds_[k].weight;
        int used = 0;
        uint64_t r = mask;
        while (r) { used += odds_[std::countr_zero(r)].weight; r &= r - 1; }
        if (used + wk <= budget) stack.emplace_back(mask | (uint64_t{1} << k), k + 1);
      }
    }
  };

  // depth-first over even exponents with weight pruning
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n_even()) {
      Monomial base{e, 0};
      // prune even parts that are already reducible regardless of odds
      emit_odds(base, left);
      return;
    }
    int w = evens_[i].weight;
    for (int k = 0; k * w <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k * w);
    }
    e[i] = 0;
  };
  rec(0, bound);

  // ascending weight; within a weight, descending monomial order so that
  // earlier-declared generators come first
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) {
    int wa = weight_of(a), wb = weight_of(b);
    if (wa != wb) return wa < wb;
    return mono_less(b, a);
  });
  return out;
}

std::optional<SuperElement> SuperPresentation::invert(const SuperElement& e, int window) const {
  // fast path: a unit-monomial term with nilpotent complement inverts by a
  // finite geometric series, with no window enumeration at all
  auto unit_inverse = [&](const Monomial& m) -> std::optional<Monomial> {
    if (m.odd != 0) return std::nullopt;
    Monomial inv = empty_monomial();
    for (int i = 0; i < static_cast<int>(m.e.size()); ++i) {
      if (m.e[i] == 0) continue;
      if (evens_[i].internal)
        inv.e[evens_[i].inverse_of] += m.e[i];
      else if (evens_[i].inverse_var >= 0)
        inv.e[evens_[i].inverse_var] += m.e[i];
      else
        return std::nullopt;
    }
    return inv;
  };
  SuperElement nf = normal_form(e);
  for (auto& t : nf.terms) {
    auto inv = unit_inverse(t.m);
    if (!inv) continue;
    SuperElement minv = from_term(*inv, t.c.inverse());
    SuperElement s = sub(nf_mul(minv, nf), one());  // hopefully nilpotent
    SuperElement sum = one(), power = one();
    bool done = false;
    for (int k = 1; k <= 64; ++k) {
      power = nf_mul(power, s);
      if (power.is_zero()) { done = true; break; }
      sum = (k % 2 == 1) ? sub(sum, power) : add(sum, power);
    }
    if (done) return nf_mul(sum, minv);
    break;  // not nilpotent; fall back to the window solve
  }
  auto basis = truncated_basis(window);
  MonomialIndex idx;
  std::vector<SVec> columns;
  for (auto& b : basis)
    columns.push_back(idx.coords(nf_mul(e, from_term(b, Scalar::one(field_)))));
  SVec target = idx.coords(normal_form(one()));
  auto sol = solve_columns(field_, columns, target);
  if (!sol) return std::nullopt;
  SuperElement v;
  for (auto& [i, c] : *sol) v = add(v, from_term(basis[i], c));
  return normal_form(v);
}

SuperPresentation SuperPresentation::localized_at(const SuperElement& x,
                                                  const std::string& name) const {
  if (x.is_zero() || parity_of(x) != 0)
    throw std::invalid_argument("can only localize at a nonzero even element");
  SuperPresentation r = *this;
  int w = std::max(1, max_weight(x));
  int v = r.add_even(name, w, false);
  r.add_relation(r.sub(r.mul(x, r.even_gen(v)), r.one()));
  return r;
}

// ---------------------------------------------------------------- printing

std::string SuperPresentation::monomial_str(const Monomial& mm) const {
  Monomial m = widen(mm);
  std::vector<std::string> parts;
  for (int i = 0; i < n_even(); ++i) {
    if (evens_[i].internal) continue;
    long k = m.e[i];
    if (evens_[i].inverse_var >= 0) k -= m.e[evens_[i].inverse_var];
    if (k == 0) continue;
    if (k == 1) parts.push_back(evens_[i].name);
    else parts.push_back(evens_[i].name + "^" + std::to_string(k));
  }
  uint64_t rest = m.odd;
  while (rest) {
    parts.push_back(odds_[std::countr_zero(rest)].name);
    rest &= rest - 1;
  }
  if (parts.empty()) return "1";
  std::string s = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) s += "*" + parts[i];
  return s;
}

std::string SuperPresentation::str(const SuperElement& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : e.terms) {
    Scalar c = t.c;
    bool negative = false;
    if (!field_.is_rational() || c.value() >= 0) {
      // prime-field representatives are printed as-is
    } else {
      negative = true;
      c = -c;
    }
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    std::string ms = monomial_str(t.m);
    if (c.is_one()) {
      os << ms;
    } else if (ms == "1") {
      os << c.str();
    } else {
      os << c.str() << "*" << ms;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- index

int MonomialIndex::id(const Monomial& m) {
  auto it = ids_.find(m);
  if (it != ids_.end()) return it->second;
  int n = static_cast<int>(by_id_.size());
  ids_.emplace(m, n);
  by_id_.push_back(m);
  return n;
}

std::optional<int> MonomialIndex::find(const Monomial& m) const {
  auto it = ids_.find(m);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

SVec MonomialIndex::coords(const SuperElement& e) {
  SVec v;
  for (auto& t : e.terms) v.emplace_back(id(t.m), t.c);
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return v;
}

std::optional<SVec> MonomialIndex::coords_if_known(const SuperElement& e) const {
  SVec v;
  for (auto& t : e.terms) {
    auto i = find(t.m);
    if (!i) return std::nullopt;
    v.emplace_back(*i, t.c);
  }
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return v;
}

// ---------------------------------------------------------------- tensor

TensorAlgebra::TensorAlgebra(const Field& f, std::vector<const SuperPresentation*> legs,
                             std::vector<std::string> prefixes)
    : alg_(f) {
  if (legs.size() != prefixes.size())
    throw std::invalid_argument("one prefix per tensor leg required");
  for (size_t l = 0; l < legs.size(); ++l) {
    const SuperPresentation& P = *legs[l];
    if (P.field() != f) throw std::invalid_argument("tensor legs over different fields");
    std::vector<int> emap(P.n_even(), -1), omap(P.n_odd(), -1);
    for (int i = 0; i < P.n_even(); ++i) {
      if (P.even(i).internal) continue;
      int idx = alg_.add_even(prefixes[l] + P.even(i).name, P.even(i).weight,
                              P.even(i).invertible);
      emap[i] = idx;
      if (P.even(i).inverse_var >= 0) emap[P.even(i).inverse_var] = alg_.even(idx).inverse_var;
    }
    for (int i = 0; i < P.n_odd(); ++i)
      omap[i] = alg_.add_odd(prefixes[l] + P.odd(i).name, P.odd(i).weight);
    even_maps_.push_back(std::move(emap));
    odd_maps_.push_back(std::move(omap));
    leg_n_even_.push_back(P.n_even());
    leg_n_odd_.push_back(P.n_odd());
  }
  for (size_t l = 0; l < legs.size(); ++l)
    for (auto& r : legs[l]->relations()) alg_.add_relation(inject(static_cast<int>(l), r));
}

Monomial TensorAlgebra::inject_mono(int leg, const Monomial& m) const {
  Monomial r;
  r.e.assign(alg_.n_even(), 0);
  for (size_t i = 0; i < m.e.size(); ++i)
    if (m.e[i] != 0) r.e[even_maps_[leg][i]] = m.e[i];
  uint64_t rest = m.odd;
  while (rest) {
    int k = std::countr_zero(rest);
    rest &= rest - 1;
    r.odd |= uint64_t{1} << odd_maps_[leg][k];
  }
  return r;
}

SuperElement TensorAlgebra::inject(int leg, const SuperElement& e) const {
  SuperElement r;
  for (auto& t : e.terms) r.terms.push_back(Term{inject_mono(leg, t.m), t.c});
  return alg_.add(r, alg_.zero());  // re-sort in the tensor order
}

SuperElement TensorAlgebra::pure(const std::vector<const SuperElement*>& factors) const {
  if (static_cast<int>(factors.size()) != n_legs())
    throw std::invalid_argument("one factor per tensor leg required");
  SuperElement r = alg_.one();
  for (int l = 0; l < n_legs(); ++l) r = alg_.mul(r, inject(l, *factors[l]));
  return r;
}

std::vector<Monomial> TensorAlgebra::split(const Monomial& m) const {
  std::vector<Monomial> parts;
  for (int l = 0; l < n_legs(); ++l) {
    Monomial p;
    p.e.assign(leg_n_even_[l], 0);
    for (int i = 0; i < leg_n_even_[l]; ++i) p.e[i] = safe_at(m.e, even_maps_[l][i]);
    for (int k = 0; k < leg_n_odd_[l]; ++k)
      if (m.odd & (uint64_t{1} << odd_maps_[l][k])) p.odd |= uint64_t{1} << k;
    parts.push_back(std::move(p));
  }
  return parts;
}

// ---------------------------------------------------------------- homs

AlgebraHom::AlgebraHom(const SuperPresentation* src, const SuperPresentation* dst,
                       std::vector<SuperElement> even_images,
                       std::vector<SuperElement> odd_images, int invert_window)
    : src_(src), dst_(dst), even_images_(std::move(even_images)),
      odd_images_(std::move(odd_images)), invert_window_(invert_window) {
  int n_public = 0;
  for (int i = 0; i < src_->n_even(); ++i) n_public += !src_->even(i).internal;
  if (static_cast<int>(even_images_.size()) != src_->n_even()) {
    // accept images listed for public generators only, in declaration order
    if (static_cast<int>(even_images_.size()) != n_public)
      throw std::invalid_argument("wrong number of even generator images");
    std::vector<SuperElement> full(src_->n_even());
    int j = 0;
    for (int i = 0; i < src_->n_even(); ++i)
      if (!src_->even(i).internal) full[i] = even_images_[j++];
    even_images_ = std::move(full);
  }
  if (static_cast<int>(odd_images_.size()) != src_->n_odd())
    throw std::invalid_argument("wrong number of odd generator images");
}

const SuperElement& AlgebraHom::even_image(int idx) const {
  if (!src_->even(idx).internal) return even_images_[idx];
  std::lock_guard<std::mutex> lk(mu_);
  auto it = internal_cache_.find(idx);
  if (it != internal_cache_.end()) return it->second;
  const SuperElement& base = even_images_[src_->even(idx).inverse_of];
  auto inv = dst_->invert(base, invert_window_);
  if (!inv)
    throw std::runtime_error("image of invertible generator " +
                             src_->even(src_->even(idx).inverse_of).name +
                             " has no inverse within the window");
  return internal_cache_.emplace(idx, std::move(*inv)).first->second;
}

SuperElement AlgebraHom::apply(const SuperElement& e) const {
  SuperElement out = dst_->zero();
  for (auto& t : e.terms) {
    const Monomial m = src_->widen(t.m);
    SuperElement acc = dst_->constant(t.c);
    for (int i = 0; i < src_->n_even(); ++i)
      for (int32_t k = 0; k < m.e[i]; ++k) acc = dst_->nf_mul(acc, even_image(i));
    uint64_t rest = m.odd;
    while (rest) {
      int k = std::countr_zero(rest);
      rest &= rest - 1;
      acc = dst_->nf_mul(acc, odd_images_[k]);
    }
    out = dst_->add(out, acc);
  }
  return dst_->normal_form(out);
}

Character::Character(const SuperPresentation* src, std::vector<Scalar> even_values)
    : src_(src), even_values_(std::move(even_values)) {
  int n_public = 0;
  for (int i = 0; i < src_->n_even(); ++i) n_public += !src_->even(i).internal;
  if (static_cast<int>(even_values_.size()) != n_public &&
      static_cast<int>(even_values_.size()) != src_->n_even())
    throw std::invalid_argument("wrong number of character values");
  if (static_cast<int>(even_values_.size()) == n_public) {
    std::vector<Scalar> full(src_->n_even(), Scalar::zero(src_->field()));
    int j = 0;
    for (int i = 0; i < src_->n_even(); ++i)
      if (!src_->even(i).internal) full[i] = even_values_[j++];
    even_values_ = std::move(full);
  }
  for (int i = 0; i < src_->n_even(); ++i)
    if (src_->even(i).internal) {
      const Scalar& base = even_values_[src_->even(i).inverse_of];
      if (base.is_zero())
        throw std::invalid_argument("character vanishes on an invertible generator");
      even_values_[i] = base.inverse();
    }
}

Scalar Character::apply(const SuperElement& e) const {
  Scalar out = Scalar::zero(src_->field());
  for (auto& t : e.terms) {
    if (t.m.odd != 0) continue;
    Scalar v = t.c;
    for (size_t i = 0; i < t.m.e.size(); ++i)
      for (int32_t k = 0; k < t.m.e[i]; ++k) v *= even_values_[i];
    out += v;
  }
  return out;
}

// ---------------------------------------------------------------- gr

std::vector<int> odd_power_layer_dims(const SuperPresentation& P, int bound) {
  // spans of the images of raw monomials with at least n odd factors,
  // within the weight<=bound window
  auto window = [&]() {
    // raw monomials of the free algebra (ignore relations) up to the bound
    std::vector<Monomial> raw;
    std::vector<int32_t> e(P.n_even(), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == P.n_even()) {
        std::function<void(int, int, uint64_t)> odds = [&](int k, int l2, uint64_t mask) {
          raw.push_back(Monomial{e, mask});
          for (int j = k; j < P.n_odd(); ++j)
            if (P.odd(j).weight <= l2)
              odds(j + 1, l2 - P.odd(j).weight, mask | (uint64_t{1} << j));
        };
        odds(0, left, 0);
        return;
      }
      int w = P.even(i).weight;
      for (int k = 0; k * w <= left; ++k) {
        e[i] = k;
        rec(i + 1, left - k * w);
      }
      e[i] = 0;
    };
    rec(0, bound);
    return raw;
  }();

  MonomialIndex idx;
  std::vector<SVec> nf_coords(window.size());
  std::vector<int> odd_count(window.size());
  for (size_t i = 0; i < window.size(); ++i) {
    nf_coords[i] = idx.coords(P.normal_form(P.from_term(window[i], Scalar::one(P.field()))));
    odd_count[i] = std::popcount(window[i].odd);
  }
  std::vector<int> ranks;
  for (int n = 0;; ++n) {
    RowSpace rs(P.field());
    for (size_t i = 0; i < window.size(); ++i)
      if (odd_count[i] >= n) rs.insert(nf_coords[i]);
    ranks.push_back(rs.rank());
    if (rs.rank() == 0) break;
  }
  std::vector<int> dims;
  for (size_t n = 0; n + 1 < ranks.size(); ++n) dims.push_back(ranks[n] - ranks[n + 1]);
  while (!dims.empty() && dims.back() == 0) dims.pop_back();
  return dims;
}

GradedPresentation gr_superalgebra(const SuperPresentation& P, int bound) {
  GradedPresentation out{SuperPresentation(P.field()), SuperPresentation(P.field()),
                         {}, {}, bound, {}};

  // A: kill the odd generators
  for (int i = 0; i < P.n_even(); ++i)
    if (!P.even(i).internal)
      out.base.add_even(P.even(i).name, P.even(i).weight, P.even(i).invertible);
  for (auto& r : P.relations()) {
    SuperElement s;
    for (auto& t : r.terms)
      if (t.m.odd == 0) s.terms.push_back(Term{Monomial{t.m.e, 0}, t.c});
    out.base.add_relation(s);  // internally re-sorted; even layouts coincide
  }

  // gr: same generators, initial forms (minimal odd degree parts) of the
  // completed relation system
  for (int i = 0; i < P.n_even(); ++i)
    if (!P.even(i).internal)
      out.gr.add_even(P.even(i).name, P.even(i).weight, P.even(i).invertible);
  for (int i = 0; i < P.n_odd(); ++i) out.gr.add_odd(P.odd(i).name, P.odd(i).weight);
  for (auto& g : P.groebner()) {
    int dmin = 1 << 20;
    for (auto& t : g.terms) dmin = std::min(dmin, std::popcount(t.m.odd));
    SuperElement s;
    for (auto& t : g.terms)
      if (std::popcount(t.m.odd) == dmin) s.terms.push_back(t);
    out.gr.add_relation(s);
  }

  for (int i = 0; i < P.n_odd(); ++i) out.odd_module_gens.push_back(P.odd(i).name);
  out.component_dims = odd_power_layer_dims(P, bound);

  // kernel generators of wedge_A(I/I^2) ->> gr P, degree by degree
  MonomialIndex idx;
  std::vector<std::pair<Monomial, SVec>> pool;  // raw monomial, nf coords in P
  {
    std::vector<int32_t> e(P.n_even(), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == P.n_even()) {
        std::function<void(int, int, uint64_t)> odds = [&](int k, int l2, uint64_t mask) {
          Monomial m{e, mask};
          pool.emplace_back(m, SVec{});
          for (int j = k; j < P.n_odd(); ++j)
            if (P.odd(j).weight <= l2)
              odds(j + 1, l2 - P.odd(j).weight, mask | (uint64_t{1} << j));
        };
        odds(0, left, 0);
        return;
      }
      int w = P.even(i).weight;
      for (int k = 0; k * w <= left; ++k) {
        e[i] = k;
        rec(i + 1, left - k * w);
      }
      e[i] = 0;
    };
    rec(0, bound);
  }
  for (auto& [m, v] : pool)
    v = idx.coords(P.normal_form(P.from_term(m, Scalar::one(P.field()))));

  int max_n = static_cast<int>(out.component_dims.size());
  for (int n = 1; n < max_n; ++n) {
    RowSpace deeper(P.field());  // span of I^{n+1} within the window
    for (auto& [m, v] : pool)
      if (std::popcount(m.odd) >= n + 1) deeper.insert(v);
    std::vector<Monomial> dom;
    std::vector<SVec> cols;
    for (auto& [m, v] : pool)
      if (std::popcount(m.odd) == n) {
        dom.push_back(m);
        cols.push_back(deeper.reduce(v));
      }
    for (auto& kv : kernel_basis(P.field(), cols)) {
      SuperElement rep;
      for (auto& [i, c] : kv) rep = P.add(rep, P.from_term(dom[i], c));
      if (!rep.is_zero()) out.wedge_kernel_gens.push_back(P.str(rep));
    }
  }
  return out;
}

}  // namespace sq
