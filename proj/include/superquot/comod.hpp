#ifndef SUPERQUOT_COMOD_HPP
#define SUPERQUOT_COMOD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superquot/hopf.hpp"

namespace sq {

/// Finite-dimensional right comodule over the presentation D (typically a
/// quotient Hopf algebra): rho(m_i) = sum_j m_j (x) row[i][j].
class SuperComodule {
 public:
  SuperComodule(const HopfSuperalgebra* D, std::vector<std::string> labels,
                std::vector<int> parities);

  void set_coaction(int i, int j, SuperElement coeff);
  const SuperElement& coaction(int i, int j) const { return rho_[i][j]; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  int parity(int i) const { return parities_[i]; }
  const HopfSuperalgebra& over() const { return *D_; }

  /// counit law and coassociativity, exactly
  std::vector<std::string> validate() const;
  /// vectors over the basis with rho(v) = v (x) 1
  std::vector<SVec> coinvariants() const;

 private:
  const HopfSuperalgebra* D_;
  std::vector<std::string> labels_;
  std::vector<int> parities_;
  std::vector<std::vector<SuperElement>> rho_;
};

/// Finite left comodule: lambda(n_j) = sum_l row[j][l] (x) n_l.
class LeftSuperComodule {
 public:
  LeftSuperComodule(const HopfSuperalgebra* D, std::vector<std::string> labels,
                    std::vector<int> parities);
  void set_coaction(int j, int l, SuperElement coeff);
  const SuperElement& coaction(int j, int l) const { return lam_[j][l]; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int j) const { return labels_[j]; }
  int parity(int j) const { return parities_[j]; }
  const HopfSuperalgebra& over() const { return *D_; }
  std::vector<std::string> validate() const;

 private:
  const HopfSuperalgebra* D_;
  std::vector<std::string> labels_;
  std::vector<int> parities_;
  std::vector<std::vector<SuperElement>> lam_;
};

/// Kernel of rho_M (x) id - id (x) lambda_L inside M (x) L; vectors over the
/// flattened index i * L.dim() + j.
std::vector<SVec> cotensor_product(const SuperComodule& M, const LeftSuperComodule& L);

/// Smallest Delta-closed span containing the seeds, by adding all tensor
/// legs of coproducts to a fixed point.
struct SubcoalgebraHull {
  std::vector<SuperElement> basis;  // normal forms, deterministic order
  bool closed = false;              // false iff the size cap was hit
};
SubcoalgebraHull finite_subcoalgebra(const HopfSuperalgebra& H,
                                     const std::vector<SuperElement>& seeds,
                                     int size_cap = 64);

/// Right coaction (id (x) pi) Delta of the quotient presentation D on H,
/// materialized in H's tensor square with the right leg D-reduced.
SuperElement quotient_coaction(const HopfSuperalgebra& H, const SuperPresentation& D,
                               const SuperElement& e);

/// Window coinvariants of H under the right D-coaction: exact kernel of
/// rho - ((-) (x) 1) on the weight<=bound truncated basis.
struct WindowCoinvariants {
  std::vector<Monomial> window;
  std::vector<SuperElement> vectors;   // elements of H, ascending weight
  std::vector<int> dims;               // per weight 0..bound
};
WindowCoinvariants algebra_coinvariants(const HopfSuperalgebra& H, const SuperPresentation& D,
                                        int bound);

/// Greedy minimal multiplicative generators of the given window vectors
/// (ascending weight; certified only within the bound).
std::vector<SuperElement> minimal_generators(const SuperPresentation& P,
                                             const std::vector<SuperElement>& vectors,
                                             int bound);

/// Unit-preserving D-colinear map eta : D -> H on the weight<=bound window
/// of D, solved as a finite linear system; nullopt = Unknown at this bound.
struct EtaSection {
  std::vector<Monomial> dom;        // D window monomials
  std::vector<SuperElement> image;  // eta of each, in H
  SuperElement apply(const SuperPresentation& D, const SuperElement& d) const;
};
std::optional<EtaSection> eta_extension(const HopfSuperalgebra& H, const HopfSuperalgebra& D,
                                        int bound);

/// sigma(a (x) d) = a_(0) eta(S_D(a_(1)) d); checks sigma(rho(a)) = a on the
/// window and returns the first counterexample if any.
std::optional<std::string> sigma_retraction_check(const HopfSuperalgebra& H,
                                                  const HopfSuperalgebra& D,
                                                  const EtaSection& eta, int bound);

/// Colinear retraction s : V -> U with s|_U = id for an inclusion of finite
/// comodules given by the index subset incl (U basis i maps to V basis
/// incl[i]); nullopt when the finite system is inconsistent.
std::optional<std::vector<std::vector<Scalar>>> colinear_retraction(
    const SuperComodule& V, const std::vector<int>& incl);

}  // namespace sq

#endif
