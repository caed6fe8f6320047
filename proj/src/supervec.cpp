#include "superquot/supervec.hpp"

#include <set>
#include <stdexcept>

namespace sq {

SuperVectorSpace::SuperVectorSpace(std::vector<std::string> labels, std::vector<int> parities)
    : labels_(std::move(labels)), parities_(std::move(parities)) {
  if (labels_.size() != parities_.size())
    throw std::invalid_argument("label/parity size mismatch");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size())
    throw std::invalid_argument("basis labels must be distinct");
  for (int p : parities_)
    if (p != 0 && p != 1) throw std::invalid_argument("parity must be 0 or 1");
}

int SuperVectorSpace::dim_even() const {
  int n = 0;
  for (int p : parities_) n += (p == 0);
  return n;
}

int SuperVectorSpace::dim_odd() const { return dim() - dim_even(); }

SuperLinearMap::SuperLinearMap(const Field& f, SuperVectorSpace dom, SuperVectorSpace cod,
                               int parity)
    : field_(f), dom_(std::move(dom)), cod_(std::move(cod)), parity_(parity & 1) {
  m_.assign(cod_.dim(), std::vector<Scalar>(dom_.dim(), Scalar::zero(field_)));
}

SuperLinearMap SuperLinearMap::identity(const Field& f, const SuperVectorSpace& v) {
  SuperLinearMap r(f, v, v, 0);
  for (int i = 0; i < v.dim(); ++i) r.set_entry(i, i, Scalar::one(f));
  return r;
}

SuperLinearMap SuperLinearMap::zero(const Field& f, const SuperVectorSpace& dom,
                                    const SuperVectorSpace& cod, int parity) {
  return SuperLinearMap(f, dom, cod, parity);
}

void SuperLinearMap::set_entry(int i, int j, const Scalar& s) { m_[i][j] = s; }

SuperLinearMap SuperLinearMap::compose(const SuperLinearMap& inner) const {
  if (!(inner.cod_ == dom_)) throw std::logic_error("composition shape mismatch");
  SuperLinearMap r(field_, inner.dom_, cod_, parity_ + inner.parity_);
  for (int i = 0; i < cod_.dim(); ++i)
    for (int j = 0; j < inner.dom_.dim(); ++j) {
      Scalar s = Scalar::zero(field_);
      for (int k = 0; k < dom_.dim(); ++k) s += m_[i][k] * inner.m_[k][j];
      r.m_[i][j] = s;
    }
  return r;
}

bool SuperLinearMap::is_identity() const {
  if (!(dom_ == cod_)) return false;
  for (int i = 0; i < cod_.dim(); ++i)
    for (int j = 0; j < dom_.dim(); ++j) {
      if (i == j && !m_[i][j].is_one()) return false;
      if (i != j && !m_[i][j].is_zero()) return false;
    }
  return true;
}

bool SuperLinearMap::respects_parity() const {
  for (int i = 0; i < cod_.dim(); ++i)
    for (int j = 0; j < dom_.dim(); ++j)
      if (!m_[i][j].is_zero() && cod_.parity(i) != ((dom_.parity(j) + parity_) & 1))
        return false;
  return true;
}

std::vector<SVec> SuperLinearMap::columns() const {
  std::vector<SVec> cols(dom_.dim());
  for (int j = 0; j < dom_.dim(); ++j)
    for (int i = 0; i < cod_.dim(); ++i)
      if (!m_[i][j].is_zero()) cols[j].emplace_back(i, m_[i][j]);
  return cols;
}

TensorWithBraiding tensor_with_koszul(const Field& f, const SuperVectorSpace& V,
                                      const SuperVectorSpace& W) {
  auto product_space = [](const SuperVectorSpace& A, const SuperVectorSpace& B) {
    std::vector<std::string> labels;
    std::vector<int> parities;
    for (int i = 0; i < A.dim(); ++i)
      for (int j = 0; j < B.dim(); ++j) {
        labels.push_back(A.label(i) + "(x)" + B.label(j));
        parities.push_back((A.parity(i) + B.parity(j)) & 1);
      }
    return SuperVectorSpace(std::move(labels), std::move(parities));
  };
  SuperVectorSpace VW = product_space(V, W), WV = product_space(W, V);
  SuperLinearMap c(f, VW, WV, 0);
  for (int i = 0; i < V.dim(); ++i)
    for (int j = 0; j < W.dim(); ++j) {
      int from = i * W.dim() + j;
      int to = j * V.dim() + i;
      Scalar s = (V.parity(i) == 1 && W.parity(j) == 1) ? -Scalar::one(f) : Scalar::one(f);
      c.set_entry(to, from, s);
    }
  return {std::move(VW), std::move(WV), std::move(c)};
}

KernelImageCoker kernel_image_coker(const SuperLinearMap& f) {
  KernelImageCoker out;
  RowSpace rs(f.field(), true);
  auto cols = f.columns();
  for (auto& col : cols) {
    auto [added, combo] = rs.insert(col);
    if (!added) out.kernel.push_back(combo);
  }
  for (auto& [piv, row] : rs.rows()) out.image.push_back(row);
  std::set<int> pivots;
  for (auto& [piv, row] : rs.rows()) pivots.insert(piv);
  for (int i = 0; i < f.codomain().dim(); ++i)
    if (!pivots.count(i)) out.cokernel.push_back(i);
  return out;
}

std::optional<SVec> solve_membership(const Field& f, const SVec& target,
                                     const std::vector<SVec>& generators) {
  return solve_columns(f, generators, target);
}

}  // namespace sq
