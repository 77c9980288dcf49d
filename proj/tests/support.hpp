#pragma once

// Small seeded generators for property tests.

#include <flagbord/poly.hpp>

#include <doctest.h>

#include <random>

namespace flagbord::testing {

class Sampler {
 public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    int num = integer(-5, 5);
    int den = integer(1, 4);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Exponents exponents(const VariableTable& table, int max_exponent) {
    Exponents e(table.size());
    for (auto& x : e) x = integer(0, max_exponent);
    return e;
  }

  Polynomial polynomial(const TablePtr& table, int terms = 4, int max_exponent = 2) {
    Polynomial p(table);
    for (int i = 0; i < terms; ++i) {
      Rational c = rational();
      if (c != 0) p.add_term(exponents(*table, max_exponent), c);
    }
    return p;
  }

  // Homogeneous of the given degree; bounds are needed when the table has
  // negatively graded variables.
  Polynomial homogeneous(const TablePtr& table, int degree, int terms = 3, const MonomialBounds& bounds = {}) {
    auto basis = monomials_of_degree(*table, degree, bounds);
    Polynomial p(table);
    for (int i = 0; i < terms && !basis.empty(); ++i)
      p.add_term(basis[integer(0, static_cast<int>(basis.size()) - 1)], rational());
    return p;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace flagbord::testing

namespace doctest {
template <>
struct StringMaker<flagbord::Polynomial> {
  static String convert(const flagbord::Polynomial& p) { return p.to_string().c_str(); }
};
template <>
struct StringMaker<flagbord::Rational> {
  static String convert(const flagbord::Rational& q) { return q.get_str().c_str(); }
};
}  // namespace doctest
