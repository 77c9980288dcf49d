#include <doctest.h>

#include <flagbord/coinvariants.hpp>
#include <flagbord/expr.hpp>
#include <flagbord/oracle.hpp>

#include "support.hpp"

#include <memory>

using namespace flagbord;

namespace {

struct Built {
  std::shared_ptr<const RootDatum> datum;
  std::shared_ptr<CoinvariantAlgebra> lambda;
};

Built build(RootType type, int rank) {
  auto d = std::make_shared<const RootDatum>(build_root_datum(type, rank));
  return {d, std::make_shared<CoinvariantAlgebra>(enumerate_weyl(*d), fundamental_invariants(*d))};
}

Exponents exps(const CoinvariantAlgebra& l, const std::string& monomial) {
  Polynomial p = parse_polynomial(monomial, l.table());
  return p.terms().begin()->first;
}

LambdaClass cls(const CoinvariantAlgebra& l, const std::string& text) {
  return l.reduce(parse_polynomial(text, l.table()));
}

std::vector<long> as_long(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("coinvariant algebra") {
  TEST_CASE("GL2 bases") {
    auto [d, l] = build(RootType::GL, 2);
    CHECK(l->dimension() == 2);
    CHECK(l->top_degree() == 1);
    CHECK(l->basis(0) == std::vector<Exponents>{{0, 0}});
    CHECK(l->basis(1) == std::vector<Exponents>{exps(*l, "x1")});
    CHECK(l->basis(2).empty());
    CHECK(l->ideal_rank(2) == 3);
  }

  TEST_CASE("per-degree dimensions against the kernel oracle") {
    auto [d3, gl3] = build(RootType::GL, 3);
    CHECK(as_long(gl3->dimensions()) == std::vector<long>{1, 2, 2, 1});
    CHECK(as_long(gl3->dimensions()) == kernel_dimensions(gl3->invariants(), 3));
    auto [db, b2] = build(RootType::B, 2);
    CHECK(as_long(b2->dimensions()) == std::vector<long>{1, 2, 2, 2, 1});
    CHECK(as_long(b2->dimensions()) == kernel_dimensions(b2->invariants(), 4));
    CHECK(b2->top_degree() == 4);
  }

  TEST_CASE("dimension, top degree and symmetry for small types") {
    std::vector<std::pair<RootType, int>> cases{{RootType::GL, 1}, {RootType::GL, 4}, {RootType::A, 1},
                                                {RootType::A, 3},  {RootType::B, 3},  {RootType::C, 2},
                                                {RootType::D, 3},  {RootType::D, 2}};
#ifdef FLAGBORD_WITH_G2
    cases.emplace_back(RootType::G2, 2);
#endif
    for (auto [type, rank] : cases) {
      CAPTURE(to_string(type) + std::to_string(rank));
      auto [d, l] = build(type, rank);
      CHECK(static_cast<long>(l->dimension()) == expected_weyl_order(type, rank));
      CHECK(static_cast<std::size_t>(l->top_degree()) == d->positive_roots.size());
      CHECK(l->dimension(l->top_degree()) == 1);
      CHECK(l->dimension(l->top_degree() + 1) == 0);
      CHECK(l->dimension(-1) == 0);
      CHECK(l->dimension(0) == 1);
      for (int k = 0; k <= l->top_degree(); ++k) CHECK(l->dimension(k) == l->dimension(l->top_degree() - k));
      auto molien = molien_dimensions(l->weyl(), l->top_degree() + 1);
      CHECK(as_long(l->dimensions()) == std::vector<long>(molien.begin(), molien.end() - 1));
      CHECK(molien.back() == 0);
    }
  }

  TEST_CASE("normal forms") {
    auto [d, l] = build(RootType::B, 2);
    testing::Sampler s(31);
    for (int i = 0; i < 20; ++i) {
      Polynomial p = s.polynomial(l->table(), 5, 4);
      Polynomial n = l->normal_form(p);
      CHECK(l->normal_form(n) == n);
      // p - nf(p) lies in the ideal: adding invariant multiples changes nothing.
      Polynomial shifted = p + l->invariants().sigmas[0] * s.polynomial(l->table(), 3, 2);
      CHECK(l->normal_form(shifted) == n);
    }
    for (const auto& sigma : l->invariants().sigmas) CHECK(l->reduce(sigma).is_zero());
  }

  TEST_CASE("lift and reduce") {
    auto [d, l] = build(RootType::A, 2);
    for (int k = 0; k <= l->top_degree(); ++k)
      for (std::size_t i = 0; i < l->dimension(k); ++i) {
        LambdaClass c = l->basis_class(k, i);
        CHECK(l->reduce(l->lift(c)) == c);
        CHECK(l->lift(c) == l->basis_element(k, i));
      }
  }
}

TEST_SUITE("poincare") {
  TEST_CASE("examples") {
    auto [d2, gl2] = build(RootType::GL, 2);
    CHECK(format_univariate(poincare_coefficients(*gl2)) == "1 + t");
    auto [d3, gl3] = build(RootType::GL, 3);
    CHECK(format_univariate(poincare_coefficients(*gl3)) == "1 + 2t + 2t^2 + t^3");
    auto [db, b2] = build(RootType::B, 2);
    CHECK(format_univariate(poincare_coefficients(*b2)) == "1 + 2t + 2t^2 + 2t^3 + t^4");
    CHECK(poincare_polynomial(*gl3).to_string() == "1 + 2*t + 2*t^2 + t^3");
  }

  TEST_CASE("product formula") {
    CHECK(poincare_product({1, 2, 3}) == std::vector<long>{1, 2, 2, 1});
    CHECK(poincare_product({2, 4}) == std::vector<long>{1, 2, 2, 2, 1});
    CHECK(poincare_product({}) == std::vector<long>{1});
  }

  TEST_CASE("formatting") {
    CHECK(format_univariate({1}) == "1");
    CHECK(format_univariate({0, 0, 3}) == "3t^2");
    CHECK(format_univariate({1, 1}, "q") == "1 + q");
  }
}

TEST_SUITE("lambda_multiply") {
  TEST_CASE("unit") {
    auto [d, l] = build(RootType::GL, 3);
    for (int k = 0; k <= l->top_degree(); ++k)
      for (std::size_t i = 0; i < l->dimension(k); ++i)
        CHECK(lambda_multiply(*l, l->unit(), l->basis_class(k, i)) == l->basis_class(k, i));
  }

  TEST_CASE("GL2 x1 * x1 vanishes") {
    auto [d, l] = build(RootType::GL, 2);
    LambdaClass x1 = cls(*l, "x1");
    CHECK(lambda_multiply(*l, x1, x1).is_zero());
  }

  TEST_CASE("GL3 x1 * x1 x2 against the pairing") {
    auto [d, l] = build(RootType::GL, 3);
    LambdaClass a = cls(*l, "x1");
    LambdaClass b = cls(*l, "x1*x2");
    LambdaClass product = lambda_multiply(*l, a, b);
    REQUIRE(product.degree == 3);
    REQUIRE(product.coords.size() == 1);
    auto M = pairing_matrix(*l, 1).matrix;
    Rational expected = 0;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
      for (std::size_t j = 0; j < b.coords.size(); ++j) expected += a.coords[i] * M[i][j] * b.coords[j];
    CHECK(product.coords[0] == expected);
    // x1^2 x2 is a monomial of the Vandermonde kind and does not vanish.
    CHECK(expected != 0);
  }

  TEST_CASE("associative and commutative on all basis triples") {
    for (auto [type, rank] : std::vector<std::pair<RootType, int>>{
             {RootType::GL, 3}, {RootType::GL, 4}, {RootType::B, 2}, {RootType::B, 3}, {RootType::C, 3}}) {
      CAPTURE(to_string(type) + std::to_string(rank));
      auto [d, l] = build(type, rank);
      std::vector<LambdaClass> basis;
      for (int k = 0; k <= l->top_degree(); ++k)
        for (std::size_t i = 0; i < l->dimension(k); ++i) basis.push_back(l->basis_class(k, i));
      for (const auto& a : basis)
        for (const auto& b : basis) {
          LambdaClass ab = lambda_multiply(*l, a, b);
          CHECK(ab == lambda_multiply(*l, b, a));
          if (a.degree + b.degree > l->top_degree()) continue;
          for (const auto& c : basis) {
            if (a.degree + b.degree + c.degree > l->top_degree()) continue;
            CHECK(lambda_multiply(*l, ab, c) == lambda_multiply(*l, a, lambda_multiply(*l, b, c)));
          }
        }
    }
  }
}

TEST_SUITE("pairing") {
  TEST_CASE("examples") {
    auto [d2, gl2] = build(RootType::GL, 2);
    auto p0 = pairing_matrix(*gl2, 0);
    CHECK(p0.matrix == Matrix{{1}});
    CHECK(p0.determinant == 1);
    auto [d3, gl3] = build(RootType::GL, 3);
    auto p1 = pairing_matrix(*gl3, 1);
    CHECK(p1.matrix.size() == 2);
    CHECK(p1.matrix[0].size() == 2);
    CHECK(p1.determinant != 0);
    CHECK(p1.determinant == determinant(p1.matrix));
    CHECK_THROWS_AS(pairing_matrix(*gl3, 4), ParameterError);
    CHECK_THROWS_AS(pairing_matrix(*gl3, -1), ParameterError);
  }

  TEST_CASE("d = 0 pairs the unit with the top class") {
    auto [d, l] = build(RootType::C, 2);
    auto p = pairing_matrix(*l, 0);
    REQUIRE(p.matrix.size() == 1);
    CHECK(p.matrix[0][0] != 0);
  }
}

TEST_SUITE("invariants of Lambda") {
  TEST_CASE("GL2 full group") {
    auto [d, l] = build(RootType::GL, 2);
    auto inv = w_invariants(*l, l->weyl());
    long total = 0;
    for (const auto& [k, classes] : inv) total += static_cast<long>(classes.size());
    CHECK(total == 1);
    CHECK(inv[0].size() == 1);
    CHECK(inv[1].empty());
  }

  TEST_CASE("trivial group keeps everything") {
    auto [d, l] = build(RootType::GL, 3);
    auto inv = w_invariants(*l, parabolic_weyl(*d, {}));
    for (int k = 0; k <= l->top_degree(); ++k) CHECK(inv[k].size() == l->dimension(k));
  }

  TEST_CASE("GL3 with an S2") {
    auto [d, l] = build(RootType::GL, 3);
    auto inv = w_invariants(*l, parabolic_weyl(*d, {2}));
    long total = 0;
    for (const auto& [k, classes] : inv) total += static_cast<long>(classes.size());
    CHECK(total == 3);
  }

  TEST_CASE("dimension is |W| / |W_P| for every parabolic") {
    for (auto [type, rank] : std::vector<std::pair<RootType, int>>{
             {RootType::GL, 3}, {RootType::A, 3}, {RootType::B, 3}, {RootType::C, 3}, {RootType::D, 3}}) {
      auto [d, l] = build(type, rank);
      int k = static_cast<int>(d->simple_count());
      for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < k; ++i)
          if (mask & (1 << i)) subset.push_back(i + 1);
        auto wp = parabolic_weyl(*d, subset);
        long total = 0;
        for (const auto& [deg, classes] : w_invariants(*l, wp)) total += static_cast<long>(classes.size());
        CAPTURE(to_string(type) + std::to_string(rank));
        CAPTURE(mask);
        CHECK(total == static_cast<long>(l->dimension() / wp.size()));
      }
    }
  }

  TEST_CASE("action is a representation") {
    auto [d, l] = build(RootType::B, 2);
    const auto& W = l->weyl().elements;
    for (int k = 0; k <= l->top_degree(); ++k) {
      bool hom = true, anti = true;
      for (const auto& g : W)
        for (const auto& h : W) {
          Matrix gh = action_matrix(*l, int_multiply(g, h), k);
          hom = hom && gh == multiply(action_matrix(*l, g, k), action_matrix(*l, h, k));
          anti = anti && gh == multiply(action_matrix(*l, h, k), action_matrix(*l, g, k));
        }
      CHECK((hom || anti));
      CHECK(action_matrix(*l, int_identity(2), k) == identity_matrix(l->dimension(k)));
    }
  }
}
