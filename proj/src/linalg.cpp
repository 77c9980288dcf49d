#include <flagbord/linalg.hpp>

#include <algorithm>

namespace flagbord {

namespace {

// a += factor * b
void axpy(SparseRow& a, const Rational& factor, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, factor * j->second);
      ++j;
    } else {
      Rational v = i->second + factor * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

}  // namespace

SparseRow Echelon::reduce(const SparseRow& row) const {
  // Pivot rows carry no other pivot columns, so one subtraction per pivot
  // entry of the input suffices.
  SparseRow out = row;
  for (const auto& [col, value] : row) {
    auto it = rows_.find(col);
    if (it == rows_.end()) continue;
    Rational factor = -value;
    axpy(out, factor, it->second);
  }
  return out;
}

bool Echelon::insert(SparseRow row) {
  for (const auto& [col, v] : row)
    if (col >= columns_) throw StructuralError("sparse row column out of range");
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  Rational lead = r.front().second;
  if (lead != 1) {
    Rational inv = 1 / lead;
    for (auto& [c, v] : r) v *= inv;
  }
  std::size_t pivot = r.front().first;
  for (auto& [p, existing] : rows_) {
    auto it = std::lower_bound(existing.begin(), existing.end(), pivot,
                               [](const auto& entry, std::size_t c) { return entry.first < c; });
    if (it == existing.end() || it->first != pivot) continue;
    Rational factor = -it->second;
    axpy(existing, factor, r);
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<std::size_t> Echelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, r] : rows_) out.push_back(p);
  return out;
}

std::vector<std::size_t> Echelon::non_pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < columns_; ++c)
    if (!rows_.count(c)) out.push_back(c);
  return out;
}

std::size_t DegreeSlice::column(const Exponents& e) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), e, [this](const Exponents& a, const Exponents& b) {
    return a < b;  // all basis monomials share one degree, so plain lex order agrees with graded lex
  });
  if (it == basis.end() || *it != e) throw StructuralError("monomial outside the slice basis");
  return static_cast<std::size_t>(it - basis.begin());
}

SparseRow DegreeSlice::to_row(const Polynomial& p) const {
  SparseRow row;
  row.reserve(p.size());
  for (const auto& [e, c] : p.terms()) row.emplace_back(column(e), c);
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

Polynomial DegreeSlice::to_polynomial(const TablePtr& table, const SparseRow& row) const {
  Polynomial p(table);
  for (const auto& [c, v] : row) p.add_term(basis[c], v);
  return p;
}

DegreeSlice degree_slice_reduce(const std::vector<Polynomial>& vectors, int degree, const TablePtr& table,
                                const MonomialBounds& bounds) {
  DegreeSlice slice;
  slice.degree = degree;
  slice.basis = monomials_of_degree(*table, degree, bounds);
  slice.echelon = Echelon(slice.basis.size());
  for (const auto& v : vectors) {
    if (!same_table(v.table(), table)) throw StructuralError("slice input lives on a different variable table");
    if (v.is_zero()) continue;
    auto d = v.degree();
    if (!d) throw StructuralError("slice input is not homogeneous: " + v.to_string());
    if (*d != degree)
      throw StructuralError("slice input has degree " + std::to_string(*d) + ", expected " + std::to_string(degree));
    slice.echelon.insert(slice.to_row(v));
  }
  return slice;
}

SparseRow to_sparse(const std::vector<Rational>& dense) {
  SparseRow row;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) row.emplace_back(i, dense[i]);
  return row;
}

std::vector<Rational> to_dense(const SparseRow& row, std::size_t columns) {
  std::vector<Rational> out(columns);
  for (const auto& [c, v] : row) out.at(c) = v;
  return out;
}

Rational determinant(Matrix m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw StructuralError("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::size_t matrix_rank(const Matrix& m) {
  if (m.empty()) return 0;
  Echelon e(m.front().size());
  for (const auto& row : m) e.insert(to_sparse(row));
  return e.rank();
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b.front().size();
  Matrix out(a.size(), std::vector<Rational>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw StructuralError("matrix dimensions do not match");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

}  // namespace flagbord
