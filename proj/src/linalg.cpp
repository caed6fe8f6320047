#include "superquot/linalg.hpp"

namespace sq {

SVec svec_scale(const SVec& v, const Scalar& c) {
  SVec r;
  if (c.is_zero()) return r;
  r.reserve(v.size());
  for (auto& [i, x] : v) r.emplace_back(i, x * c);
  return r;
}

SVec svec_axpy(const SVec& a, const Scalar& c, const SVec& b) {
  SVec r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Scalar s = c * b[j].second;
      if (!s.is_zero()) r.emplace_back(b[j].first, s);
      ++j;
    } else {
      Scalar s = a[i].second + c * b[j].second;
      if (!s.is_zero()) r.emplace_back(a[i].first, s);
      ++i, ++j;
    }
  }
  return r;
}

SVec svec_unit(int idx, const Scalar& one) { return SVec{{idx, one}}; }

bool svec_is_zero(const SVec& v) { return v.empty(); }

std::pair<bool, SVec> RowSpace::insert(SVec v) {
  SVec combo;
  if (track_) combo = svec_unit(n_inserted_, Scalar::one(field_));
  ++n_inserted_;
  while (!v.empty()) {
    int piv = v.front().first;
    auto it = rows_.find(piv);
    if (it == rows_.end()) {
      Scalar lead = v.front().second;
      Scalar inv = lead.inverse();
      v = svec_scale(v, inv);
      if (track_) {
        combo = svec_scale(combo, inv);
        combos_[piv] = combo;
      }
      rows_[piv] = v;
      return {true, combo};
    }
    Scalar c = -v.front().second;
    v = svec_axpy(v, c, it->second);
    if (track_) combo = svec_axpy(combo, c, combos_.at(piv));
  }
  return {false, combo};
}

SVec RowSpace::reduce(SVec v) const {
  // echelon rows have entries only at indices >= their pivot, so once the
  // front coordinate has no matching pivot it is final
  SVec out;
  while (!v.empty()) {
    auto it = rows_.find(v.front().first);
    if (it == rows_.end()) {
      out.push_back(v.front());
      v.erase(v.begin());
      continue;
    }
    v = svec_axpy(v, -v.front().second, it->second);
  }
  return out;
}

std::optional<SVec> RowSpace::express(const SVec& v) const {
  SVec cur = v, combo;
  while (!cur.empty()) {
    auto it = rows_.find(cur.front().first);
    if (it == rows_.end()) return std::nullopt;
    Scalar c = cur.front().second;
    cur = svec_axpy(cur, -c, it->second);
    combo = svec_axpy(combo, c, combos_.at(it->first));
  }
  return combo;
}

std::vector<SVec> kernel_basis(const Field& f, const std::vector<SVec>& columns) {
  RowSpace rs(f, true);
  std::vector<SVec> ker;
  for (auto& col : columns) {
    auto [added, combo] = rs.insert(col);
    if (!added) ker.push_back(combo);
  }
  return ker;
}

std::optional<SVec> solve_columns(const Field& f, const std::vector<SVec>& columns,
                                  const SVec& target) {
  RowSpace rs(f, true);
  for (auto& col : columns) rs.insert(col);
  return rs.express(target);
}

int rank_of(const Field& f, const std::vector<SVec>& vectors) {
  RowSpace rs(f);
  for (auto& v : vectors) rs.insert(v);
  return rs.rank();
}

}  // namespace sq
