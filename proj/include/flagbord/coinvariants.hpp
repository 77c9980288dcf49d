#pragma once

#include <flagbord/linalg.hpp>
#include <flagbord/weyl.hpp>

#include <map>
#include <vector>

namespace flagbord {

// An element of one graded piece of the coinvariant algebra, in coordinates
// of that piece's monomial basis.
struct LambdaClass {
  int degree = 0;
  std::vector<Rational> coords;

  bool is_zero() const;
  bool operator==(const LambdaClass&) const = default;
};

// Lambda = S / I with I generated by the fundamental invariants, built
// degree by degree: I_d = sum_j x_j I_{d-1} + span{sigma_i : deg sigma_i = d}.
// The basis of Lambda_d is the set of monomials that are not pivots of I_d's
// reduced echelon form (pivots are the smallest monomials in graded lex
// order), and each basis monomial is its own lift.
class CoinvariantAlgebra {
 public:
  // Throws ConsistencyError if the result does not have dimension |W|, a
  // one-dimensional top piece, or top degree equal to the number of positive
  // roots.
  CoinvariantAlgebra(WeylGroup weyl, InvariantSet invariants);

  const WeylGroup& weyl() const { return weyl_; }
  const InvariantSet& invariants() const { return invariants_; }
  const TablePtr& table() const { return invariants_.table; }

  int top_degree() const { return top_degree_; }
  std::size_t dimension() const;
  std::size_t dimension(int degree) const;
  std::vector<std::size_t> dimensions() const;  // degrees 0..N

  // Basis monomials of Lambda_d (empty outside 0..N).
  std::vector<Exponents> basis(int degree) const;
  Polynomial basis_element(int degree, std::size_t i) const;
  LambdaClass basis_class(int degree, std::size_t i) const;
  LambdaClass unit() const { return basis_class(0, 0); }
  // p_N: the monomial lifting the top class rho_N.
  Exponents top_monomial() const { return basis(top_degree_).front(); }

  // Class of a homogeneous element of S.
  LambdaClass reduce(const Polynomial& homogeneous) const;
  // Normal form of an arbitrary element of S (sum of its reduced pieces).
  Polynomial normal_form(const Polynomial& p) const;
  Polynomial lift(const LambdaClass& c) const;

  // Rank of the ideal slice I_d inside S_d.
  std::size_t ideal_rank(int degree) const;

 private:
  const DegreeSlice& slice(int degree) const;

  WeylGroup weyl_;
  InvariantSet invariants_;
  int top_degree_ = 0;
  std::vector<DegreeSlice> ideal_;  // degrees 0..N
  std::vector<std::vector<std::size_t>> basis_columns_;
};

// Sum_d dim(Lambda_d) t^d on the table [t]. Throws ConsistencyError if it
// differs from prod_i (1 + t + ... + t^{d_i - 1}).
Polynomial poincare_polynomial(const CoinvariantAlgebra& lambda);
std::vector<long> poincare_coefficients(const CoinvariantAlgebra& lambda);
// prod_i (1 + t + ... + t^{d_i - 1}) as a coefficient list.
std::vector<long> poincare_product(const std::vector<int>& degrees);
// "1 + 2t + 2t^2 + t^3"
std::string format_univariate(const std::vector<long>& coefficients, const std::string& var = "t");

LambdaClass lambda_multiply(const CoinvariantAlgebra& lambda, const LambdaClass& a, const LambdaClass& b);

struct PairingMatrix {
  int degree = 0;
  Matrix matrix;  // (i, j): coefficient of rho_N in b^d_i * b^{N-d}_j
  Rational determinant;
};

// Throws ParameterError for d outside 0..N and ConsistencyError for a
// singular pairing.
PairingMatrix pairing_matrix(const CoinvariantAlgebra& lambda, int degree);

// Matrix of w acting on Lambda_d: column k holds the coordinates of w . b_k.
Matrix action_matrix(const CoinvariantAlgebra& lambda, const IntMatrix& w, int degree);

// Image of the averaging operator (1/|G|) sum_g rho(g) on a module of the
// given dimension, as RREF rows.
std::vector<std::vector<Rational>> invariant_subspace(std::size_t dimension, const std::vector<Matrix>& action);

// Basis of Lambda^G per degree, for a subgroup G of W (e.g. W_P).
std::map<int, std::vector<LambdaClass>> w_invariants(const CoinvariantAlgebra& lambda, const WeylGroup& group);

}  // namespace flagbord
