#ifndef SUPERQUOT_SUPERVEC_HPP
#define SUPERQUOT_SUPERVEC_HPP

#include <string>
#include <vector>

#include "superquot/linalg.hpp"
#include "superquot/scalar.hpp"

namespace sq {

/// Finite-dimensional Z/2-graded vector space with a fixed ordered basis.
/// Parity is stored per basis label, never inferred.
class SuperVectorSpace {
 public:
  SuperVectorSpace() = default;
  SuperVectorSpace(std::vector<std::string> labels, std::vector<int> parities);

  int dim() const { return static_cast<int>(labels_.size()); }
  int dim_even() const;
  int dim_odd() const;
  const std::string& label(int i) const { return labels_[i]; }
  int parity(int i) const { return parities_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const SuperVectorSpace& o) const {
    return labels_ == o.labels_ && parities_ == o.parities_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<int> parities_;
};

/// Homogeneous linear map between super vector spaces, dense matrix with
/// entry(i, j) = coefficient of codomain basis i in the image of domain
/// basis j.
class SuperLinearMap {
 public:
  SuperLinearMap(const Field& f, SuperVectorSpace dom, SuperVectorSpace cod, int parity);

  static SuperLinearMap identity(const Field& f, const SuperVectorSpace& v);
  static SuperLinearMap zero(const Field& f, const SuperVectorSpace& dom,
                             const SuperVectorSpace& cod, int parity = 0);

  const SuperVectorSpace& domain() const { return dom_; }
  const SuperVectorSpace& codomain() const { return cod_; }
  int parity() const { return parity_; }
  const Field& field() const { return field_; }

  const Scalar& entry(int i, int j) const { return m_[i][j]; }
  void set_entry(int i, int j, const Scalar& s);

  SuperLinearMap compose(const SuperLinearMap& inner) const;  // this ∘ inner
  bool is_identity() const;
  /// A homogeneous map of parity q must send parity-r basis vectors into the
  /// parity-(q+r) span.
  bool respects_parity() const;

  std::vector<SVec> columns() const;

 private:
  Field field_;
  SuperVectorSpace dom_, cod_;
  int parity_;
  std::vector<std::vector<Scalar>> m_;
};

/// V ⊗ W with basis v_i⊗w_j (parity = sum) together with the braiding
/// c_{V,W}(v⊗w) = (−1)^{|v||w|} w⊗v.
struct TensorWithBraiding {
  SuperVectorSpace tensor;    // V ⊗ W
  SuperVectorSpace swapped;   // W ⊗ V
  SuperLinearMap braiding;    // c_{V,W} : V⊗W → W⊗V
};
TensorWithBraiding tensor_with_koszul(const Field& f, const SuperVectorSpace& V,
                                      const SuperVectorSpace& W);

struct KernelImageCoker {
  std::vector<SVec> kernel;    // coefficient vectors over the domain basis
  std::vector<SVec> image;     // echelon basis over the codomain basis
  std::vector<int> cokernel;   // codomain basis indices spanning a complement
};
/// Exact echelon computation; rank-nullity holds by construction and the
/// returned bases are parity-homogeneous for homogeneous f.
KernelImageCoker kernel_image_coker(const SuperLinearMap& f);

/// Exact coefficients with sum c_i g_i = target, or nullopt.
std::optional<SVec> solve_membership(const Field& f, const SVec& target,
                                     const std::vector<SVec>& generators);

}  // namespace sq

#endif
