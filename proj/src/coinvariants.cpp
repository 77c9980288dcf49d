#include <flagbord/coinvariants.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flagbord {

bool LambdaClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q == 0; });
}

CoinvariantAlgebra::CoinvariantAlgebra(WeylGroup weyl, InvariantSet invariants)
    : weyl_(std::move(weyl)), invariants_(std::move(invariants)) {
  const auto& table = invariants_.table;
  std::size_t r = table->size();
  int expected_top = 0;
  for (int d : invariants_.degrees) expected_top += d - 1;

  // Degree 0: no invariant of positive degree contributes.
  ideal_.push_back(degree_slice_reduce({}, 0, table));
  for (int d = 1;; ++d) {
    if (d > expected_top + 1)
      throw ConsistencyError("coinvariant algebra does not vanish above degree " + std::to_string(expected_top));
    DegreeSlice next = degree_slice_reduce({}, d, table);
    const DegreeSlice& prev = ideal_.back();
    for (const auto& [pivot, row] : prev.echelon.rows()) {
      for (std::size_t j = 0; j < r; ++j) {
        SparseRow shifted;
        shifted.reserve(row.size());
        for (const auto& [col, v] : row) {
          Exponents e = prev.basis[col];
          ++e[j];
          shifted.emplace_back(next.column(e), v);
        }
        std::sort(shifted.begin(), shifted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        next.echelon.insert(std::move(shifted));
      }
    }
    for (std::size_t i = 0; i < invariants_.sigmas.size(); ++i)
      if (invariants_.degrees[i] == d) next.echelon.insert(next.to_row(invariants_.sigmas[i]));
    if (next.rank() == next.basis.size()) break;
    ideal_.push_back(std::move(next));
  }
  top_degree_ = static_cast<int>(ideal_.size()) - 1;
  for (const auto& s : ideal_) basis_columns_.push_back(s.echelon.non_pivots());

  if (dimension() != weyl_.size())
    throw ConsistencyError("dim Lambda = " + std::to_string(dimension()) + " but |W| = " +
                           std::to_string(weyl_.size()));
  if (dimension(top_degree_) != 1)
    throw ConsistencyError("top piece Lambda_N has dimension " + std::to_string(dimension(top_degree_)));
  if (weyl_.datum && static_cast<std::size_t>(top_degree_) != weyl_.datum->positive_roots.size())
    throw ConsistencyError("top degree " + std::to_string(top_degree_) + " differs from the number of positive roots " +
                           std::to_string(weyl_.datum->positive_roots.size()));
}

std::size_t CoinvariantAlgebra::dimension() const {
  std::size_t total = 0;
  for (const auto& b : basis_columns_) total += b.size();
  return total;
}

std::size_t CoinvariantAlgebra::dimension(int degree) const {
  if (degree < 0 || degree > top_degree_) return 0;
  return basis_columns_[degree].size();
}

std::vector<std::size_t> CoinvariantAlgebra::dimensions() const {
  std::vector<std::size_t> out;
  for (const auto& b : basis_columns_) out.push_back(b.size());
  return out;
}

std::vector<Exponents> CoinvariantAlgebra::basis(int degree) const {
  std::vector<Exponents> out;
  if (degree < 0 || degree > top_degree_) return out;
  for (auto c : basis_columns_[degree]) out.push_back(ideal_[degree].basis[c]);
  return out;
}

Polynomial CoinvariantAlgebra::basis_element(int degree, std::size_t i) const {
  return Polynomial::monomial(table(), ideal_.at(degree).basis[basis_columns_.at(degree).at(i)]);
}

LambdaClass CoinvariantAlgebra::basis_class(int degree, std::size_t i) const {
  LambdaClass c{degree, std::vector<Rational>(dimension(degree))};
  c.coords.at(i) = 1;
  return c;
}

const DegreeSlice& CoinvariantAlgebra::slice(int degree) const { return ideal_.at(degree); }

std::size_t CoinvariantAlgebra::ideal_rank(int degree) const {
  if (degree < 0) return 0;
  if (degree > top_degree_) return monomials_of_degree(*table(), degree).size();
  return ideal_[degree].rank();
}

LambdaClass CoinvariantAlgebra::reduce(const Polynomial& homogeneous) const {
  if (!same_table(homogeneous.table(), table()))
    throw StructuralError("element does not live on the coinvariant algebra's table");
  if (homogeneous.is_zero()) return {0, std::vector<Rational>(dimension(0))};
  auto d = homogeneous.degree();
  if (!d) throw StructuralError("reduce expects a homogeneous polynomial: " + homogeneous.to_string());
  LambdaClass out{*d, std::vector<Rational>(dimension(*d))};
  if (*d < 0 || *d > top_degree_) return out;
  const auto& s = slice(*d);
  SparseRow rest = s.echelon.reduce(s.to_row(homogeneous));
  const auto& cols = basis_columns_[*d];
  for (const auto& [c, v] : rest) {
    auto it = std::lower_bound(cols.begin(), cols.end(), c);
    out.coords[it - cols.begin()] = v;
  }
  return out;
}

Polynomial CoinvariantAlgebra::lift(const LambdaClass& c) const {
  Polynomial p(table());
  auto b = basis(c.degree);
  for (std::size_t i = 0; i < c.coords.size() && i < b.size(); ++i) p.add_term(b[i], c.coords[i]);
  return p;
}

Polynomial CoinvariantAlgebra::normal_form(const Polynomial& p) const {
  std::map<int, Polynomial> pieces;
  for (const auto& [e, c] : p.terms()) {
    int d = table()->degree(e);
    pieces.try_emplace(d, table()).first->second.add_term(e, c);
  }
  Polynomial out(table());
  for (const auto& [d, piece] : pieces) out += lift(reduce(piece));
  return out;
}

std::vector<long> poincare_coefficients(const CoinvariantAlgebra& lambda) {
  std::vector<long> out;
  for (auto d : lambda.dimensions()) out.push_back(static_cast<long>(d));
  return out;
}

std::vector<long> poincare_product(const std::vector<int>& degrees) {
  std::vector<long> acc{1};
  for (int d : degrees) {
    std::vector<long> next(acc.size() + d - 1, 0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (int k = 0; k < d; ++k) next[i + k] += acc[i];
    acc = std::move(next);
  }
  return acc;
}

Polynomial poincare_polynomial(const CoinvariantAlgebra& lambda) {
  auto coeffs = poincare_coefficients(lambda);
  if (coeffs != poincare_product(lambda.invariants().degrees))
    throw ConsistencyError("Poincare polynomial " + format_univariate(coeffs) +
                           " differs from the product over invariant degrees " +
                           format_univariate(poincare_product(lambda.invariants().degrees)));
  auto table = make_table({{"t", 1, false, 0}});
  Polynomial p(table);
  for (std::size_t d = 0; d < coeffs.size(); ++d) p.add_term({static_cast<int>(d)}, coeffs[d]);
  return p;
}

std::string format_univariate(const std::vector<long>& coefficients, const std::string& var) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t d = 0; d < coefficients.size(); ++d) {
    long c = coefficients[d];
    if (c == 0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << '-';
    first = false;
    long mag = c < 0 ? -c : c;
    if (d == 0) {
      out << mag;
      continue;
    }
    if (mag != 1) out << mag;
    out << var;
    if (d > 1) out << '^' << d;
  }
  return first ? "0" : out.str();
}

LambdaClass lambda_multiply(const CoinvariantAlgebra& lambda, const LambdaClass& a, const LambdaClass& b) {
  int d = a.degree + b.degree;
  Polynomial product = lambda.lift(a) * lambda.lift(b);
  if (product.is_zero()) return {d, std::vector<Rational>(lambda.dimension(d))};
  return lambda.reduce(product);
}

PairingMatrix pairing_matrix(const CoinvariantAlgebra& lambda, int degree) {
  int n = lambda.top_degree();
  if (degree < 0 || degree > n)
    throw ParameterError("pairing degree " + std::to_string(degree) + " outside 0.." + std::to_string(n));
  std::size_t rows = lambda.dimension(degree), cols = lambda.dimension(n - degree);
  if (rows != cols)
    throw ConsistencyError("pairing in degree " + std::to_string(degree) + " is not square (" + std::to_string(rows) +
                           " x " + std::to_string(cols) + ")");
  PairingMatrix out{degree, Matrix(rows, std::vector<Rational>(cols)), 0};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      auto c = lambda_multiply(lambda, lambda.basis_class(degree, i), lambda.basis_class(n - degree, j));
      out.matrix[i][j] = c.coords.at(0);
    }
  out.determinant = determinant(out.matrix);
  if (out.determinant == 0)
    throw ConsistencyError("pairing in degree " + std::to_string(degree) + " is degenerate");
  return out;
}

namespace {

Matrix action_matrix_with(const CoinvariantAlgebra& lambda, const Substitution& act, int degree) {
  std::size_t dim = lambda.dimension(degree);
  Matrix m(dim, std::vector<Rational>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    auto image = lambda.reduce(poly_substitute(lambda.basis_element(degree, k), act));
    if (image.coords.size() != dim) image.coords.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) m[i][k] = image.coords[i];
  }
  return m;
}

}  // namespace

Matrix action_matrix(const CoinvariantAlgebra& lambda, const IntMatrix& w, int degree) {
  return action_matrix_with(lambda, linear_action(w, lambda.table()), degree);
}

std::vector<std::vector<Rational>> invariant_subspace(std::size_t dimension, const std::vector<Matrix>& action) {
  if (action.empty()) throw ParameterError("invariant_subspace needs at least one group element");
  Matrix avg(dimension, std::vector<Rational>(dimension));
  for (const auto& m : action)
    for (std::size_t i = 0; i < dimension; ++i)
      for (std::size_t j = 0; j < dimension; ++j) avg[i][j] += m[i][j];
  Rational scale(1, static_cast<long>(action.size()));
  // Image = span of columns.
  Echelon e(dimension);
  for (std::size_t j = 0; j < dimension; ++j) {
    std::vector<Rational> col(dimension);
    for (std::size_t i = 0; i < dimension; ++i) col[i] = avg[i][j] * scale;
    e.insert(to_sparse(col));
  }
  std::vector<std::vector<Rational>> out;
  for (const auto& [p, row] : e.rows()) out.push_back(to_dense(row, dimension));
  return out;
}

std::map<int, std::vector<LambdaClass>> w_invariants(const CoinvariantAlgebra& lambda, const WeylGroup& group) {
  std::vector<Substitution> actions;
  for (const auto& w : group.elements) actions.push_back(linear_action(w, lambda.table()));
  std::map<int, std::vector<LambdaClass>> out;
  for (int d = 0; d <= lambda.top_degree(); ++d) {
    std::vector<Matrix> mats;
    for (const auto& a : actions) mats.push_back(action_matrix_with(lambda, a, d));
    auto& classes = out[d];
    for (auto& v : invariant_subspace(lambda.dimension(d), mats)) classes.push_back({d, std::move(v)});
  }
  return out;
}

}  // namespace flagbord
