#pragma once

#include <flagbord/error.hpp>
#include <flagbord/rational.hpp>

#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagbord {

using Exponents = std::vector<int>;

inline constexpr int kUnbounded = INT_MAX / 4;

// Ordered list of named, graded variables.
//
// Variables flagged as `coefficient` (the Lazard generators b_i when they
// sit next to Chern roots) do not count towards the truncation order of a
// monomial; they are bounded separately through the coefficient weight.
// For a table without coefficient variables the order of a monomial is the
// sum of |degree| over its factors, i.e. the absolute value of its degree
// when all variables are graded with the same sign.
//
// `aux` is an optional secondary label (the n of CH^i(X, n)); it is additive
// over products and otherwise inert.
class VariableTable {
 public:
  struct Variable {
    std::string name;
    int degree = 1;
    bool coefficient = false;
    int aux = 0;

    bool operator==(const Variable&) const = default;
  };

  explicit VariableTable(std::vector<Variable> variables);

  std::size_t size() const { return variables_.size(); }
  const Variable& operator[](std::size_t i) const { return variables_[i]; }
  const std::vector<Variable>& variables() const { return variables_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws StructuralError for unknown names.
  std::size_t index(std::string_view name) const;

  int degree(const Exponents& e) const;
  int order(const Exponents& e) const;
  int weight(const Exponents& e) const;
  int aux(const Exponents& e) const;

  bool has_coefficients() const;
  bool positively_graded() const;

  bool operator==(const VariableTable& other) const { return variables_ == other.variables_; }

 private:
  std::vector<Variable> variables_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

TablePtr make_table(std::vector<VariableTable::Variable> variables);
bool same_table(const TablePtr& a, const TablePtr& b);

// Monomial order used for storage: total degree first, then lexicographic
// in the table's declared variable order (x1 > x2 > ...).
struct GradedLexLess {
  const VariableTable* table = nullptr;
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Exact multivariate polynomial over Q on a shared variable table.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexLess>;

  explicit Polynomial(TablePtr table);

  static Polynomial constant(TablePtr table, const Rational& c);
  static Polynomial variable(TablePtr table, std::string_view name);
  static Polynomial monomial(TablePtr table, Exponents e, const Rational& c = 1);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;
  void add_term(const Exponents& e, const Rational& c);

  // Degree of a homogeneous polynomial; nullopt for zero or mixed degrees.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  std::optional<int> aux() const;
  int min_order() const;
  int max_order() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial& other) const;

  // Terms by increasing order, larger monomials first within an order,
  // e.g. "u + v - 2*b1*u*v".
  std::string to_string() const;

 private:
  void check_table(const Polynomial& other) const;

  TablePtr table_;
  TermMap terms_;
};

// Product with every term of order > max_order discarded.
Polynomial poly_mul(const Polynomial& p, const Polynomial& q, int max_order = kUnbounded);
Polynomial poly_pow(const Polynomial& p, int n, int max_order = kUnbounded);

// Drops terms of order > max_order or coefficient weight > max_weight.
Polynomial truncate(const Polynomial& p, int max_order, int max_weight = kUnbounded);

Polynomial homogeneous_part(const Polynomial& p, int degree);

// Simultaneous substitution. All substituted polynomials share one target
// table; variables of p that are not substituted are carried over by name
// and must exist there. Unknown keys raise StructuralError.
using Substitution = std::map<std::string, Polynomial>;
Polynomial poly_substitute(const Polynomial& p, const Substitution& sigma,
                           int max_order = kUnbounded, int max_weight = kUnbounded);

// Re-expresses p over another table, matching variables by name.
Polynomial rebase(const Polynomial& p, const TablePtr& target);

Polynomial derivative(const Polynomial& p, std::size_t variable);
Rational evaluate(const Polynomial& p, std::span<const Rational> point);

struct MonomialBounds {
  int max_order = kUnbounded;
  int max_weight = kUnbounded;
  std::optional<int> aux;
};

// All monomials of the given degree within the bounds, ascending in
// GradedLexLess. Throws ParameterError if the set would be infinite.
std::vector<Exponents> monomials_of_degree(const VariableTable& table, int degree,
                                           const MonomialBounds& bounds = {});

// Every monomial within the bounds (which must make the set finite).
std::vector<Exponents> monomials_within(const VariableTable& table, const MonomialBounds& bounds);

std::string monomial_to_string(const VariableTable& table, const Exponents& e);

}  // namespace flagbord
