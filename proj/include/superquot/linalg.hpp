#ifndef SUPERQUOT_LINALG_HPP
#define SUPERQUOT_LINALG_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "superquot/scalar.hpp"

namespace sq {

/// Sparse vector: (index, coefficient) pairs, strictly increasing indices,
/// no zero coefficients.
using SVec = std::vector<std::pair<int, Scalar>>;

SVec svec_scale(const SVec& v, const Scalar& c);
/// a + c*b
SVec svec_axpy(const SVec& a, const Scalar& c, const SVec& b);
SVec svec_unit(int idx, const Scalar& one);
bool svec_is_zero(const SVec& v);

/// Incremental exact row echelon over a field. Rows are normalized to leading
/// coefficient 1 and stored by pivot index. Optionally tracks, for every
/// stored row, its expression as a combination of the vectors passed to
/// insert(), which yields kernel elements and membership certificates.
class RowSpace {
 public:
  explicit RowSpace(const Field& f, bool track = false) : field_(f), track_(track) {}

  /// Reduces v against the current rows. If the residual is nonzero it is
  /// inserted and {true, combo-of-residual} is returned; otherwise
  /// {false, combo} where combo expresses 0 = v - (combination of previously
  /// inserted vectors). Combos are in terms of insertion ordinals.
  std::pair<bool, SVec> insert(SVec v);

  /// Residual of v after reduction (v itself is not inserted).
  SVec reduce(SVec v) const;

  /// If v lies in the span, coefficients over the *inserted* vectors
  /// (by insertion ordinal); otherwise nullopt. Requires track = true.
  std::optional<SVec> express(const SVec& v) const;

  bool contains(const SVec& v) const { return svec_is_zero(reduce(v)); }
  int rank() const { return static_cast<int>(rows_.size()); }
  int inserted() const { return n_inserted_; }
  const Field& field() const { return field_; }

  /// Pivot-indexed echelon rows.
  const std::map<int, SVec>& rows() const { return rows_; }

 private:
  Field field_;
  bool track_;
  int n_inserted_ = 0;
  std::map<int, SVec> rows_;    // pivot -> row (leading coeff 1)
  std::map<int, SVec> combos_;  // pivot -> combination of inserted vectors
};

/// Kernel of the linear map sending unit e_i to columns[i]; basis of
/// coefficient vectors (indices into columns).
std::vector<SVec> kernel_basis(const Field& f, const std::vector<SVec>& columns);

/// Solve sum_i x_i * columns[i] = target exactly; nullopt if inconsistent.
std::optional<SVec> solve_columns(const Field& f, const std::vector<SVec>& columns,
                                  const SVec& target);

int rank_of(const Field& f, const std::vector<SVec>& vectors);

}  // namespace sq

#endif
