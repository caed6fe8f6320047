#ifndef SUPERQUOT_SUPERPOLY_HPP
#define SUPERQUOT_SUPERPOLY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "superquot/linalg.hpp"
#include "superquot/scalar.hpp"

namespace sq {

/// Monomial of the free super-commutative algebra: exponent vector over the
/// even generators (internal inverse variables included, exponents always
/// non-negative) and a bitmask of odd generators. Odd factors are implicitly
/// ordered by generator index.
struct Monomial {
  std::vector<int32_t> e;
  uint64_t odd = 0;

  bool operator==(const Monomial& o) const { return odd == o.odd && e == o.e; }
  bool operator<(const Monomial& o) const {  // structural order for dictionaries
    if (odd != o.odd) return odd < o.odd;
    return e < o.e;
  }
};

struct Term {
  Monomial m;
  Scalar c;
};

/// Element in internal canonical layout: terms sorted descending by the
/// owning presentation's monomial order, distinct monomials, no zeros.
struct SuperElement {
  std::vector<Term> terms;
  bool is_zero() const { return terms.empty(); }
};

struct EvenGen {
  std::string name;
  int weight = 1;
  bool invertible = false;
  int inverse_var = -1;   // index of the internal inverse variable
  int inverse_of = -1;    // for internal variables: the original index
  bool internal = false;
};

struct OddGen {
  std::string name;
  int weight = 1;
};

/// Finitely presented super-commutative superalgebra k[X (inv?) | Y]/I with
/// weight filtration. Equality is decided through a commutative-plus-exterior
/// Groebner completion; odd squares and anticommutation are built into the
/// monomial model, invertible generators contribute x*u - 1 to the reduction
/// system.
class SuperPresentation {
 public:
  explicit SuperPresentation(const Field& f) : field_(f) {}
  SuperPresentation(const SuperPresentation& o);
  SuperPresentation& operator=(const SuperPresentation& o);

  int add_even(const std::string& name, int weight = 1, bool invertible = false);
  int add_odd(const std::string& name, int weight = 1);
  void add_relation(const SuperElement& r);  // parity-homogeneous

  const Field& field() const { return field_; }
  int n_even() const { return static_cast<int>(evens_.size()); }
  int n_odd() const { return static_cast<int>(odds_.size()); }
  const EvenGen& even(int i) const { return evens_[i]; }
  const OddGen& odd(int i) const { return odds_[i]; }
  std::optional<int> find_even(const std::string& name) const;
  std::optional<int> find_odd(const std::string& name) const;
  const std::vector<SuperElement>& relations() const { return relations_; }

  // ---- element builders ----
  SuperElement zero() const { return {}; }
  SuperElement one() const;
  SuperElement constant(const Scalar& c) const;
  SuperElement even_gen(int idx, int power = 1) const;  // negative => inverse var
  SuperElement odd_gen(int idx) const;
  SuperElement from_term(const Monomial& m, const Scalar& c) const;

  // ---- arithmetic (raw; no relation reduction) ----
  SuperElement add(const SuperElement& a, const SuperElement& b) const;
  SuperElement sub(const SuperElement& a, const SuperElement& b) const;
  SuperElement neg(const SuperElement& a) const;
  SuperElement scale(const SuperElement& a, const Scalar& c) const;
  SuperElement mul(const SuperElement& a, const SuperElement& b) const;

  /// Canonical representative modulo the completed relation system.
  /// Idempotent; a ring homomorphism from raw expressions.
  SuperElement normal_form(const SuperElement& e) const;
  SuperElement nf_mul(const SuperElement& a, const SuperElement& b) const;

  /// Solve e*v = 1 for v supported on the truncated basis of the window.
  std::optional<SuperElement> invert(const SuperElement& e, int window) const;

  // ---- structure queries ----
  int parity_of_monomial(const Monomial& m) const;
  /// 0/1 if homogeneous, -1 if mixed, 0 for zero.
  int parity_of(const SuperElement& e) const;
  int weight_of(const Monomial& m) const;
  int max_weight(const SuperElement& e) const;

  /// Scalar basis of the filtration layer {weight <= bound} as monomials in
  /// deterministic (weight, monomial-order) ascending order.
  std::vector<Monomial> truncated_basis(int bound) const;

  /// Fresh presentation with an inverse generator for x adjoined
  /// (x even, nonzero). The canonical map is the identity on generators.
  SuperPresentation localized_at(const SuperElement& x, const std::string& name) const;

  // ---- reduction system ----
  void complete(int effort_cap = 4000) const;
  bool completion_ok() const;
  const std::vector<SuperElement>& groebner() const;

  // ---- order / printing ----
  bool mono_less(const Monomial& a, const Monomial& b) const;
  std::string monomial_str(const Monomial& m) const;
  std::string str(const SuperElement& e) const;

  Monomial empty_monomial() const { return Monomial{std::vector<int32_t>(evens_.size(), 0), 0}; }
  /// Resize a monomial created before later generators were added.
  Monomial widen(const Monomial& m) const;

 private:
  struct Completion;
  void sort_terms(std::vector<Term>& ts) const;
  bool reducible_step(SuperElement& f, SuperElement& out) const;
  Completion& completion_state() const;

  Field field_;
  std::vector<EvenGen> evens_;
  std::vector<OddGen> odds_;
  std::vector<SuperElement> relations_;

  mutable std::shared_ptr<Completion> completion_;
  mutable std::mutex mu_;
};

Scalar koszul_sign(const Field& f, uint64_t s1, uint64_t s2);

/// Dense coordinate dictionary for exact linear algebra over monomials.
class MonomialIndex {
 public:
  int id(const Monomial& m);
  std::optional<int> find(const Monomial& m) const;
  SVec coords(const SuperElement& e);
  std::optional<SVec> coords_if_known(const SuperElement& e) const;
  const Monomial& monomial(int idx) const { return by_id_[idx]; }
  int size() const { return static_cast<int>(by_id_.size()); }

 private:
  std::map<Monomial, int> ids_;
  std::vector<Monomial> by_id_;
};

/// Tensor product of presentations as one super-commutative presentation;
/// odd generators are blocked leg by leg so monomials split without signs.
class TensorAlgebra {
 public:
  TensorAlgebra(const Field& f, std::vector<const SuperPresentation*> legs,
                std::vector<std::string> prefixes);

  const SuperPresentation& alg() const { return alg_; }
  int n_legs() const { return static_cast<int>(even_maps_.size()); }

  Monomial inject_mono(int leg, const Monomial& m) const;
  SuperElement inject(int leg, const SuperElement& e) const;
  /// Pure tensor e0 (x) e1 (x) ...
  SuperElement pure(const std::vector<const SuperElement*>& factors) const;
  /// Per-leg parts of a monomial of alg().
  std::vector<Monomial> split(const Monomial& m) const;

 private:
  SuperPresentation alg_;
  std::vector<std::vector<int>> even_maps_, odd_maps_;
  std::vector<int> leg_n_even_, leg_n_odd_;
};

/// Algebra homomorphism given on public generators; internal inverse
/// variables are sent to inverses computed within invert_window.
class AlgebraHom {
 public:
  AlgebraHom(const SuperPresentation* src, const SuperPresentation* dst,
             std::vector<SuperElement> even_images, std::vector<SuperElement> odd_images,
             int invert_window = 16);

  SuperElement apply(const SuperElement& e) const;
  const SuperPresentation& src() const { return *src_; }
  const SuperPresentation& dst() const { return *dst_; }

 private:
  const SuperElement& even_image(int idx) const;

  const SuperPresentation* src_;
  const SuperPresentation* dst_;
  std::vector<SuperElement> even_images_;  // public evens, by even index
  std::vector<SuperElement> odd_images_;
  int invert_window_;
  mutable std::map<int, SuperElement> internal_cache_;
  mutable std::mutex mu_;
};

/// Counit-style character: scalar value per public generator, zero on odds.
class Character {
 public:
  Character(const SuperPresentation* src, std::vector<Scalar> even_values);
  Scalar apply(const SuperElement& e) const;

 private:
  const SuperPresentation* src_;
  std::vector<Scalar> even_values_;
};

/// The associated graded superalgebra data of a presentation.
struct GradedPresentation {
  SuperPresentation base;        // A = P/(P_1)
  SuperPresentation gr;          // same generators, initial-form relations
  std::vector<std::string> odd_module_gens;  // generators of I/I^2 over A
  /// dims[n] = dim of the degree-n component within filtration weight<=bound
  std::vector<int> component_dims;
  int bound = 0;
  /// kernel generators of wedge_A(I/I^2) -> gr P found within the bound,
  /// printed in terms of A-monomials and odd classes
  std::vector<std::string> wedge_kernel_gens;
};

GradedPresentation gr_superalgebra(const SuperPresentation& P, int bound);

/// Exact dims of I^n within the weight window, n = 0.. (I = ideal of odds).
std::vector<int> odd_power_layer_dims(const SuperPresentation& P, int bound);

}  // namespace sq

#endif
