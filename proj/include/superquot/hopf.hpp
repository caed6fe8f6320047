#ifndef SUPERQUOT_HOPF_HPP
#define SUPERQUOT_HOPF_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superquot/superpoly.hpp"

namespace sq {

struct HopfValidation {
  bool ok = true;
  std::vector<std::string> failures;  // first counterexamples, human-readable
};

/// Finitely presented super-commutative Hopf superalgebra. The coproduct is
/// given on public generators as elements of tensor_square().alg() (left leg
/// prefixed "l.", right leg "r.") and extended as an algebra map; likewise
/// the counit (a character) and the antipode (an algebra endomorphism, which
/// for super-commutative algebras every antipode is).
class HopfSuperalgebra {
 public:
  HopfSuperalgebra(std::string name, SuperPresentation P,
                   std::vector<SuperElement> delta_even,  // public evens, in T2
                   std::vector<SuperElement> delta_odd,   // odds, in T2
                   std::vector<Scalar> counit_even);      // public evens

  const std::string& name() const { return name_; }
  const SuperPresentation& algebra() const { return *P_; }
  const SuperPresentation* algebra_ptr() const { return P_.get(); }
  const TensorAlgebra& tensor_square() const { return *T2_; }
  const TensorAlgebra& tensor_cube() const;

  const std::vector<SuperElement>& delta_even_images() const { return delta_even_; }
  const std::vector<SuperElement>& delta_odd_images() const { return delta_odd_; }
  const std::vector<Scalar>& counit_even_values() const { return eps_even_; }

  SuperElement delta(const SuperElement& e) const;   // in tensor_square().alg()
  SuperElement delta2(const SuperElement& e) const;  // in tensor_cube().alg()
  Scalar counit(const SuperElement& e) const;

  bool has_antipode() const { return !s_even_.empty() || algebra().n_even() == 0; }
  void set_antipode(std::vector<SuperElement> s_even, std::vector<SuperElement> s_odd);
  /// Iteratively solve S(g_(1)) g_(2) = eps(g) generator by generator;
  /// nullopt on success, otherwise a description of the obstruction.
  std::optional<std::string> solve_antipode(int window = 10, int max_rounds = 32);
  SuperElement antipode(const SuperElement& e) const;
  const std::vector<SuperElement>& antipode_even_images() const { return s_even_; }
  const std::vector<SuperElement>& antipode_odd_images() const { return s_odd_; }

  /// Hopf laws on the weight<=bound window: the structure maps kill the
  /// relations, coassociativity and the counit law hold (checked on
  /// generators, which suffices for algebra maps), and both antipode
  /// convolution identities hold on every truncated-basis monomial.
  HopfValidation validate(int bound) const;

  /// Same generators with extra relations; structure map images carry over.
  HopfSuperalgebra quotient(const std::string& name,
                            const std::vector<SuperElement>& extra_relations) const;

  int invert_window() const { return invert_window_; }
  void set_invert_window(int w) { invert_window_ = w; }

 private:
  friend HopfSuperalgebra associated_hopf_algebra(const HopfSuperalgebra&);

  std::string name_;
  std::shared_ptr<const SuperPresentation> P_;
  std::shared_ptr<const TensorAlgebra> T2_;
  mutable std::shared_ptr<const TensorAlgebra> T3_;
  std::vector<SuperElement> delta_even_, delta_odd_;
  std::vector<Scalar> eps_even_;
  std::vector<SuperElement> s_even_, s_odd_;  // public evens / odds
  int invert_window_ = 10;
};

/// Kill the odd generators: the associated ordinary Hopf algebra.
HopfSuperalgebra associated_hopf_algebra(const HopfSuperalgebra& H);

/// Strip the odd-containing terms of an element of H's presentation and
/// reinterpret it in the associated ordinary algebra (identical even layout).
SuperElement project_even(const SuperElement& e);

/// Odd cotangent space W = odd part of I/I^2 (I = augmentation ideal)
/// together with the right coadjoint coaction of the associated ordinary
/// Hopf algebra: rho(w_i) = sum_j w_j (x) coact[i][j].
struct CotangentData {
  std::vector<int> w_basis;        // odd generator indices whose classes form a basis
  std::vector<std::string> w_labels;
  std::vector<SVec> odd_class;     // class of each odd generator over w_basis slots
  int even_cotangent_dim = 0;
  std::vector<std::vector<SuperElement>> coact;  // entries in C's presentation
  HopfSuperalgebra C;
  int bound = 0;
};
CotangentData cotangent_data(const HopfSuperalgebra& H, int bound);

/// Bracket pairing of the odd dual Lie superalgebra: for each public even
/// generator x, pairing[x][i][j] = <[w_i*, w_j*], class of x> read off the
/// symmetrized W(x)W component of Delta(x). The Hopf superalgebra is graded
/// in the sense of the decomposition theory iff the whole table vanishes.
struct LieData {
  std::vector<std::string> w_labels;
  std::vector<std::string> even_labels;
  // pairing[e][i][j], e over even_labels, i,j over w_labels
  std::vector<std::vector<std::vector<Scalar>>> pairing;
  bool graded = true;
  int dim_even_cotangent = 0;
  int dim_odd = 0;
};
LieData lie_superalgebra(const HopfSuperalgebra& H, int bound);

/// gr H as the smash coproduct C |x wedge(W): one presentation with C's even
/// generators and W's odd classes, Delta(w) = 1(x)w + w_(0)(x)w_(1).
HopfSuperalgebra gr_hopf_smash(const HopfSuperalgebra& H, int bound);

/// The canonical algebra map psi : H -> C (x) wedge(W) (modeled on the smash
/// presentation); for graded H it is bijective on every weight window.
struct PsiReport {
  bool ok = false;
  std::string detail;
  int dim_src = 0, dim_dst = 0, rank = 0;
};
PsiReport verify_decomposition_psi(const HopfSuperalgebra& H, int bound);

}  // namespace sq

#endif
