#include <flagbord/linalg.hpp>
#include <flagbord/weyl.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace flagbord {

std::string to_string(RootType type) {
  switch (type) {
    case RootType::GL: return "GL";
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::C: return "C";
    case RootType::D: return "D";
    case RootType::G2: return "G2";
  }
  return "?";
}

RootType parse_root_type(std::string_view text) {
  if (text == "GL") return RootType::GL;
  if (text == "A") return RootType::A;
  if (text == "B") return RootType::B;
  if (text == "C") return RootType::C;
  if (text == "D") return RootType::D;
  if (text == "G2") return RootType::G2;
  throw ParameterError("unknown root type '" + std::string(text) + "' (expected GL, A, B, C, D or G2)");
}

IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), k = b.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, IntVector(cols, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

IntVector int_apply(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

long expected_weyl_order(RootType type, int rank) {
  auto factorial = [](int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (type) {
    case RootType::GL: return factorial(rank);
    case RootType::A: return factorial(rank + 1);
    case RootType::B:
    case RootType::C: return (1L << rank) * factorial(rank);
    case RootType::D: return (1L << (rank - 1)) * factorial(rank);
    case RootType::G2: return 12;
  }
  return 0;
}

long expected_positive_roots(RootType type, int rank) {
  switch (type) {
    case RootType::GL: return rank * (rank - 1) / 2;
    case RootType::A: return rank * (rank + 1) / 2;
    case RootType::B:
    case RootType::C: return rank * rank;
    case RootType::D: return rank * (rank - 1);
    case RootType::G2: return 6;
  }
  return 0;
}

namespace {

// s(v) = v - <v, coroot> root
IntMatrix reflection(const IntVector& root, const IntVector& coroot) {
  std::size_t n = root.size();
  IntMatrix m = int_identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] -= root[i] * coroot[j];
  return m;
}

IntVector unit(std::size_t n, std::size_t i, int scale = 1) {
  IntVector v(n, 0);
  v[i] = scale;
  return v;
}

// Any functional taking the value 1 on every simple root.
std::vector<Rational> height_functional(const std::vector<IntVector>& simple, std::size_t n) {
  Matrix a;
  for (const auto& root : simple) {
    std::vector<Rational> row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = root[j];
    row[n] = 1;
    a.push_back(row);
  }
  Echelon e(n + 1);
  for (const auto& row : a) e.insert(to_sparse(row));
  std::vector<Rational> f(n);
  for (const auto& [pivot, row] : e.rows()) {
    if (pivot == n) throw ConsistencyError("simple roots are linearly dependent");
    for (const auto& [c, v] : row)
      if (c == n) f[pivot] = v;
  }
  return f;
}

}  // namespace

RootDatum build_root_datum(RootType type, int rank) {
  int min_rank = type == RootType::D ? 2 : 1;
  if (type == RootType::G2) {
#ifndef FLAGBORD_WITH_G2
    throw ParameterError("G2 support is disabled in this build");
#endif
    if (rank != 2) throw ParameterError("G2 has rank 2, got " + std::to_string(rank));
  } else if (rank < min_rank || rank > 6) {
    throw ParameterError("unsupported rank " + std::to_string(rank) + " for type " + to_string(type) +
                         " (supported: " + std::to_string(min_rank) + "..6)");
  }

  RootDatum datum;
  datum.type = type;
  datum.rank = rank;
  std::vector<IntVector> coroots;

  auto cartan_lattice = [&](const std::vector<IntVector>& cartan) {
    std::size_t n = cartan.size();
    datum.lattice_rank = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
      datum.simple_roots.push_back(cartan[i]);
      coroots.push_back(unit(n, i));
    }
  };

  switch (type) {
    case RootType::GL: {
      std::size_t n = rank;
      datum.lattice_rank = rank;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        IntVector a(n, 0);
        a[i] = 1;
        a[i + 1] = -1;
        datum.simple_roots.push_back(a);
        coroots.push_back(a);
      }
      break;
    }
    case RootType::A: {
      std::vector<IntVector> cartan(rank, IntVector(rank, 0));
      for (int i = 0; i < rank; ++i) {
        cartan[i][i] = 2;
        if (i > 0) cartan[i][i - 1] = -1;
        if (i + 1 < rank) cartan[i][i + 1] = -1;
      }
      cartan_lattice(cartan);
      break;
    }
    case RootType::B:
    case RootType::C:
    case RootType::D: {
      std::size_t n = rank;
      datum.lattice_rank = rank;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        IntVector a(n, 0);
        a[i] = 1;
        a[i + 1] = -1;
        datum.simple_roots.push_back(a);
        coroots.push_back(a);
      }
      if (type == RootType::B) {
        datum.simple_roots.push_back(unit(n, n - 1));
        coroots.push_back(unit(n, n - 1, 2));
      } else if (type == RootType::C) {
        datum.simple_roots.push_back(unit(n, n - 1, 2));
        coroots.push_back(unit(n, n - 1));
      } else {
        IntVector a(n, 0);
        a[n - 2] = 1;
        a[n - 1] = 1;
        datum.simple_roots.push_back(a);
        coroots.push_back(a);
      }
      break;
    }
    case RootType::G2:
      cartan_lattice({{2, -1}, {-3, 2}});
      break;
  }

  for (std::size_t i = 0; i < datum.simple_roots.size(); ++i)
    datum.reflections.push_back(reflection(datum.simple_roots[i], coroots[i]));

  // Roots are the orbit of the simple roots; positivity is read off a height
  // functional.
  std::set<IntVector> roots(datum.simple_roots.begin(), datum.simple_roots.end());
  std::vector<IntVector> frontier(roots.begin(), roots.end());
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& r : frontier)
      for (const auto& s : datum.reflections) {
        auto image = int_apply(s, r);
        if (roots.insert(image).second) next.push_back(image);
      }
    frontier = std::move(next);
  }
  if (!datum.simple_roots.empty()) {
    auto f = height_functional(datum.simple_roots, datum.lattice_rank);
    for (const auto& r : roots) {
      Rational h = 0;
      for (std::size_t j = 0; j < r.size(); ++j) h += f[j] * r[j];
      if (h > 0) datum.positive_roots.push_back(r);
    }
  }
  return datum;
}

namespace {

WeylGroup generate(const RootDatum& datum, std::vector<int> generators) {
  WeylGroup group;
  group.datum = std::make_shared<const RootDatum>(datum);
  group.generators = generators;
  std::set<IntMatrix> seen;
  std::vector<IntMatrix> level{int_identity(datum.lattice_rank)};
  seen.insert(level.front());
  while (!level.empty()) {
    group.elements.insert(group.elements.end(), level.begin(), level.end());
    std::vector<IntMatrix> next;
    for (const auto& w : level)
      for (int g : generators) {
        auto product = int_multiply(datum.reflections[g], w);
        if (seen.insert(product).second) next.push_back(std::move(product));
      }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return group;
}

}  // namespace

WeylGroup enumerate_weyl(const RootDatum& datum) {
  std::vector<int> all(datum.simple_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return generate(datum, all);
}

WeylGroup parabolic_weyl(const RootDatum& datum, const std::vector<int>& subset) {
  std::set<int> indices;
  for (int i : subset) {
    if (i < 1 || i > static_cast<int>(datum.simple_count()))
      throw ParameterError("parabolic index " + std::to_string(i) + " out of range 1.." +
                           std::to_string(datum.simple_count()));
    indices.insert(i - 1);
  }
  return generate(datum, std::vector<int>(indices.begin(), indices.end()));
}

TablePtr root_table(const RootDatum& datum) {
  std::vector<VariableTable::Variable> vars;
  for (int i = 1; i <= datum.lattice_rank; ++i) vars.push_back({"x" + std::to_string(i), 1, false, 0});
  return make_table(std::move(vars));
}

Substitution linear_action(const IntMatrix& m, const TablePtr& table) {
  Substitution sigma;
  std::size_t n = m.size();
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial image(table);
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][j] != 0) image += Polynomial::variable(table, "x" + std::to_string(i + 1)) * Rational(m[i][j]);
    sigma.emplace("x" + std::to_string(j + 1), std::move(image));
  }
  return sigma;
}

std::vector<Polynomial> invariants_of_degree(const std::vector<IntMatrix>& group, const TablePtr& table, int degree) {
  auto slice = degree_slice_reduce({}, degree, table);
  std::vector<Substitution> actions;
  for (const auto& g : group) actions.push_back(linear_action(g, table));
  Rational scale = Rational(1, static_cast<long>(group.size()));
  for (const auto& m : slice.basis) {
    Polynomial mono = Polynomial::monomial(table, m);
    Polynomial avg(table);
    for (const auto& a : actions) avg += poly_substitute(mono, a);
    avg *= scale;
    if (!avg.is_zero()) slice.echelon.insert(slice.to_row(avg));
  }
  std::vector<Polynomial> out;
  for (const auto& [pivot, row] : slice.echelon.rows()) out.push_back(slice.to_polynomial(table, row));
  return out;
}

namespace {

std::vector<Polynomial> elementary_symmetric(const std::vector<Polynomial>& ys, const TablePtr& table) {
  std::vector<Polynomial> e(ys.size() + 1, Polynomial(table));
  e[0] = Polynomial::constant(table, 1);
  for (const auto& y : ys)
    for (std::size_t k = ys.size(); k >= 1; --k) e[k] += e[k - 1] * y;
  return e;
}

// Generators of the invariant ring found degree by degree: invariants of
// degree d that are not polynomials in the generators found so far.
std::vector<Polynomial> averaged_generators(const WeylGroup& w, const TablePtr& table, std::size_t count) {
  std::vector<Polynomial> gens;
  for (int d = 1; gens.size() < count; ++d) {
    if (d > 64) throw ConsistencyError("invariant generators not found by degree 64");
    auto invariants = invariants_of_degree(w.elements, table, d);
    if (invariants.empty()) continue;
    // Span of products of existing generators in degree d.
    std::vector<Polynomial> products{Polynomial::constant(table, 1)};
    std::vector<int> degrees{0};
    for (const auto& g : gens) {
      int gd = *g.degree();
      std::size_t existing = products.size();
      for (std::size_t i = 0; i < existing; ++i)
        for (int k = 1; degrees[i] + k * gd <= d; ++k) {
          products.push_back(products[i] * poly_pow(g, k));
          degrees.push_back(degrees[i] + k * gd);
        }
    }
    std::vector<Polynomial> in_degree;
    for (std::size_t i = 0; i < products.size(); ++i)
      if (degrees[i] == d) in_degree.push_back(products[i]);
    auto slice = degree_slice_reduce(in_degree, d, table);
    for (const auto& inv : invariants)
      if (slice.echelon.insert(slice.to_row(inv))) gens.push_back(inv);
  }
  return gens;
}

}  // namespace

InvariantSet fundamental_invariants(const RootDatum& datum) {
  InvariantSet set;
  set.table = root_table(datum);
  const auto& table = set.table;
  int n = datum.rank;
  std::vector<Polynomial> xs;
  for (int i = 1; i <= datum.lattice_rank; ++i) xs.push_back(Polynomial::variable(table, "x" + std::to_string(i)));

  switch (datum.type) {
    case RootType::GL: {
      auto e = elementary_symmetric(xs, table);
      for (int k = 1; k <= n; ++k) set.sigmas.push_back(e[k]);
      break;
    }
    case RootType::A: {
      // Chern roots of the epsilon characters: e_1 = w_1, e_k = w_k - w_{k-1},
      // e_{n+1} = -w_n.
      std::vector<Polynomial> ys;
      ys.push_back(xs[0]);
      for (int k = 1; k < n; ++k) ys.push_back(xs[k] - xs[k - 1]);
      ys.push_back(-xs[n - 1]);
      auto e = elementary_symmetric(ys, table);
      for (int k = 2; k <= n + 1; ++k) set.sigmas.push_back(e[k]);
      break;
    }
    case RootType::B:
    case RootType::C:
    case RootType::D: {
      std::vector<Polynomial> squares;
      for (const auto& x : xs) squares.push_back(x * x);
      auto e = elementary_symmetric(squares, table);
      int top = datum.type == RootType::D ? n - 1 : n;
      for (int k = 1; k <= top; ++k) set.sigmas.push_back(e[k]);
      if (datum.type == RootType::D) {
        Polynomial pf = Polynomial::constant(table, 1);
        for (const auto& x : xs) pf = pf * x;
        set.sigmas.push_back(pf);
      }
      break;
    }
    case RootType::G2:
      set.sigmas = averaged_generators(enumerate_weyl(datum), table, datum.lattice_rank);
      break;
  }

  // Sort by degree; among equal degrees the product x1...xn of type D goes first.
  std::stable_sort(set.sigmas.begin(), set.sigmas.end(), [](const Polynomial& a, const Polynomial& b) {
    if (*a.degree() != *b.degree()) return *a.degree() < *b.degree();
    return a.size() < b.size();
  });
  for (const auto& s : set.sigmas) set.degrees.push_back(*s.degree());

  for (std::size_t g = 0; g < datum.reflections.size(); ++g) {
    auto act = linear_action(datum.reflections[g], table);
    for (std::size_t i = 0; i < set.sigmas.size(); ++i)
      if (!(poly_substitute(set.sigmas[i], act) == set.sigmas[i]))
        throw ConsistencyError("sigma_" + std::to_string(i + 1) + " is not fixed by simple reflection " +
                               std::to_string(g + 1));
  }

  // Algebraic independence: the Jacobian has full rank at some rational point.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dist(1, 97);
  std::size_t r = set.sigmas.size();
  bool independent = r == 0;
  for (int attempt = 0; attempt < 8 && !independent; ++attempt) {
    std::vector<Rational> point(table->size());
    for (auto& v : point) v = dist(rng);
    Matrix jac(r, std::vector<Rational>(table->size()));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < table->size(); ++j) jac[i][j] = evaluate(derivative(set.sigmas[i], j), point);
    independent = matrix_rank(jac) == r;
  }
  if (!independent) throw ConsistencyError("fundamental invariants are not algebraically independent");
  return set;
}

}  // namespace flagbord
