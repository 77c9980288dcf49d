#pragma once

#include <flagbord/poly.hpp>

#include <memory>
#include <string>
#include <vector>

namespace flagbord {

enum class RootType { GL, A, B, C, D, G2 };

std::string to_string(RootType type);
RootType parse_root_type(std::string_view text);  // throws ParameterError

using IntVector = std::vector<int>;
using IntMatrix = std::vector<IntVector>;  // row-major, acts on column vectors

IntMatrix int_identity(std::size_t n);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);
IntVector int_apply(const IntMatrix& m, const IntVector& v);

// Root datum of a classical (or G2) group in explicit lattice coordinates.
//
// Coordinates of the character lattice:
//   GL_n        epsilon basis of Z^n, simple roots e_i - e_{i+1}
//   A_n         fundamental weights w_1..w_n
//   B_n, C_n    epsilon basis of Z^n, last simple root e_n resp. 2e_n
//   D_n         epsilon basis of Z^n, last simple root e_{n-1} + e_n
//   G2          fundamental weights, alpha_1 short (Bourbaki numbering)
// Simple roots are numbered as in Bourbaki.
struct RootDatum {
  RootType type = RootType::GL;
  int rank = 0;          // the n of the type
  int lattice_rank = 0;  // rank of the maximal torus, r
  std::vector<IntVector> simple_roots;
  std::vector<IntMatrix> reflections;  // one per simple root
  std::vector<IntVector> positive_roots;

  std::size_t simple_count() const { return simple_roots.size(); }
};

// Throws ParameterError for unsupported (type, rank); ranks are limited to 6.
RootDatum build_root_datum(RootType type, int rank);

long expected_weyl_order(RootType type, int rank);
long expected_positive_roots(RootType type, int rank);

struct WeylGroup {
  std::shared_ptr<const RootDatum> datum;
  std::vector<int> generators;  // 0-based simple-root indices
  std::vector<IntMatrix> elements;  // BFS by word length, lexicographic within a length

  std::size_t size() const { return elements.size(); }
};

WeylGroup enumerate_weyl(const RootDatum& datum);

// Subgroup generated by the simple reflections in `subset` (1-based).
WeylGroup parabolic_weyl(const RootDatum& datum, const std::vector<int>& subset);

// Fundamental invariants sigma_1..sigma_r of W acting on S = Q[x1..xr].
struct InvariantSet {
  TablePtr table;
  std::vector<Polynomial> sigmas;
  std::vector<int> degrees;  // non-decreasing
};

InvariantSet fundamental_invariants(const RootDatum& datum);

// Table x1..xr, all of degree 1.
TablePtr root_table(const RootDatum& datum);

// x_j -> sum_i m[i][j] x_i on a table that holds x1..xr: the action of the
// lattice automorphism m on Chern roots through the additive law.
Substitution linear_action(const IntMatrix& m, const TablePtr& table);

// Invariants of the matrix group `group` among polynomials of degree d, as
// the span of Reynolds averages of monomials (RREF rows, in polynomial form).
std::vector<Polynomial> invariants_of_degree(const std::vector<IntMatrix>& group, const TablePtr& table, int degree);

}  // namespace flagbord
