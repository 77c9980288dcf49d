#pragma once

#include <flagbord/poly.hpp>

#include <map>
#include <utility>
#include <vector>

namespace flagbord {

// Sparse vector: (column, value) pairs, strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Dense rational matrix, row-major.
using Matrix = std::vector<std::vector<Rational>>;

// Incrementally maintained reduced row-echelon form over Q.
//
// The pivot of a row is its smallest column. Every stored row has a 1 in its
// pivot column and zeros in all other pivot columns, so the form depends only
// on the span of the inserted rows and not on their order or scaling.
class Echelon {
 public:
  explicit Echelon(std::size_t columns = 0) : columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true if the row enlarged the span.
  bool insert(SparseRow row);
  // Remainder of `row` after eliminating all pivot columns.
  SparseRow reduce(const SparseRow& row) const;

  bool is_pivot(std::size_t column) const { return rows_.count(column) != 0; }
  std::vector<std::size_t> pivots() const;
  std::vector<std::size_t> non_pivots() const;
  // Rows keyed by pivot column.
  const std::map<std::size_t, SparseRow>& rows() const { return rows_; }

 private:
  std::size_t columns_;
  std::map<std::size_t, SparseRow> rows_;
};

// Row space of a set of homogeneous polynomials inside the full monomial
// basis of one degree.
struct DegreeSlice {
  int degree = 0;
  std::vector<Exponents> basis;  // ascending graded-lex order
  Echelon echelon;

  std::size_t rank() const { return echelon.rank(); }
  std::size_t column(const Exponents& e) const;
  SparseRow to_row(const Polynomial& p) const;
  Polynomial to_polynomial(const TablePtr& table, const SparseRow& row) const;
};

// Throws StructuralError for non-homogeneous inputs or inputs of the wrong
// degree. Bounds only matter for tables that are not positively graded.
DegreeSlice degree_slice_reduce(const std::vector<Polynomial>& vectors, int degree, const TablePtr& table,
                                const MonomialBounds& bounds = {});

SparseRow to_sparse(const std::vector<Rational>& dense);
std::vector<Rational> to_dense(const SparseRow& row, std::size_t columns);

Rational determinant(Matrix m);
std::size_t matrix_rank(const Matrix& m);
Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);

}  // namespace flagbord
