#include <flagbord/oracle.hpp>

#include <algorithm>
#include <set>

namespace flagbord {

namespace {

using Series = std::vector<Rational>;

Series series_mul(const Series& a, const Series& b, std::size_t length) {
  Series out(length);
  for (std::size_t i = 0; i < a.size() && i < length; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < length; ++j) out[i + j] += a[i] * b[j];
  return out;
}

Series series_inverse(const Series& a, std::size_t length) {
  if (a.empty() || a[0] == 0) throw ConsistencyError("series without a constant term cannot be inverted");
  Series out(length);
  out[0] = 1 / a[0];
  for (std::size_t n = 1; n < length; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) acc += a[k] * out[n - k];
    out[n] = -acc / a[0];
  }
  return out;
}

// det(1 - t w) by Faddeev-LeVerrier on the characteristic polynomial.
Series det_one_minus_tw(const IntMatrix& w) {
  std::size_t r = w.size();
  Matrix m(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = w[i][j];
  Series c(r + 1);
  c[0] = 1;
  Matrix mk(r, std::vector<Rational>(r));
  for (std::size_t k = 1; k <= r; ++k) {
    Matrix next = multiply(m, mk);
    for (std::size_t i = 0; i < r; ++i) next[i][i] += c[k - 1];
    mk = std::move(next);
    Matrix wm = multiply(m, mk);
    Rational trace = 0;
    for (std::size_t i = 0; i < r; ++i) trace += wm[i][i];
    c[k] = -trace / static_cast<long>(k);
  }
  return c;
}

// Terms of p whose order (non-coefficient degree) is exactly n.
Polynomial order_part(const Polynomial& p, int n) {
  Polynomial out(p.table());
  for (const auto& [e, c] : p.terms())
    if (p.table()->order(e) == n) out.add_term(e, c);
  return out;
}

// Coefficient of the given monomial in the listed series variables, as a
// polynomial in the remaining variables, rebased onto `target`.
Polynomial coefficient_of(const Polynomial& p, const std::vector<std::size_t>& vars, const std::vector<int>& exps,
                          const TablePtr& target) {
  Polynomial out(p.table());
  for (const auto& [e, c] : p.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < vars.size(); ++i) match &= e[vars[i]] == exps[i];
    if (!match) continue;
    Exponents f = e;
    for (auto v : vars) f[v] = 0;
    out.add_term(f, c);
  }
  return rebase(out, target);
}

struct ConstraintRow {
  std::vector<Rational> coeffs;
  Polynomial rhs;
};

std::vector<Polynomial> solve_constraints(std::vector<ConstraintRow> rows, std::size_t unknowns) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot].coeffs[col] == 0) ++pivot;
    if (pivot == rows.size()) throw ConsistencyError("constraint system does not determine a_ij uniquely");
    std::swap(rows[rank], rows[pivot]);
    Rational inv = 1 / rows[rank].coeffs[col];
    for (auto& c : rows[rank].coeffs) c *= inv;
    rows[rank].rhs *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i].coeffs[col] == 0) continue;
      Rational f = rows[i].coeffs[col];
      for (std::size_t j = 0; j < unknowns; ++j) rows[i].coeffs[j] -= f * rows[rank].coeffs[j];
      rows[i].rhs -= f * rows[rank].rhs;
    }
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i)
    if (!rows[i].rhs.is_zero()) throw ConsistencyError("constraint system is inconsistent: " + rows[i].rhs.to_string());
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < unknowns; ++i) out.push_back(rows[i].rhs);
  return out;
}

}  // namespace

std::map<std::pair<int, int>, Polynomial> lazard_coefficients_by_constraints(int truncation) {
  if (truncation < 1) throw ParameterError("truncation degree must be at least 1");
  int top = truncation;
  CoefficientRing ring = CoefficientRing::lazard(top);
  auto law_table = series_table({"u", "v"}, ring);
  auto cube = series_table({"u", "v", "w"}, ring);
  auto line = series_table({"t"}, ring);
  auto plain = series_table({"u", "v", "w"}, CoefficientRing::rational());

  // 1 / log'(t) with log(t) = t + sum b_i t^(i+1).
  Polynomial h(line);
  for (int i = 1; i < top; ++i) {
    Exponents e(line->size(), 0);
    e[0] = i;
    e[line->index(lazard_generator_name(i))] = 1;
    h.add_term(e, i + 1);
  }
  Polynomial inv_dlog = Polynomial::constant(line, 1), power = Polynomial::constant(line, 1);
  for (int k = 1; k < top; ++k) {
    power = poly_mul(power, -h, top);
    inv_dlog += power;
  }

  Polynomial u = Polynomial::variable(cube, "u"), v = Polynomial::variable(cube, "v"),
             w = Polynomial::variable(cube, "w");
  Polynomial pu = Polynomial::variable(plain, "u"), pv = Polynomial::variable(plain, "v"),
             pw = Polynomial::variable(plain, "w");
  std::vector<std::size_t> uvw{0, 1, 2};

  std::map<std::pair<int, int>, Polynomial> out;
  Polynomial law = Polynomial::variable(law_table, "u") + Polynomial::variable(law_table, "v");
  for (int n = 2; n <= top; ++n) {
    Polynomial f_uv = poly_substitute(law, {{"u", u}, {"v", v}}, n);
    Polynomial f_vw = poly_substitute(law, {{"u", v}, {"v", w}}, n);
    Polynomial defect = order_part(
        poly_substitute(law, {{"u", f_uv}, {"v", w}}, n) - poly_substitute(law, {{"u", u}, {"v", f_vw}}, n), n);

    std::size_t unknowns = static_cast<std::size_t>(n - 1);  // a_{k, n-k}, k = 1..n-1
    std::vector<Polynomial> cobound;
    for (int k = 1; k < n; ++k) {
      auto m = [&](const Polynomial& a, const Polynomial& b) { return poly_pow(a, k) * poly_pow(b, n - k); };
      cobound.push_back(m(pu + pv, pw) + m(pu, pv) - m(pu, pv + pw) - m(pv, pw));
    }
    std::vector<ConstraintRow> rows;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        Exponents e{a, b, n - a - b};
        ConstraintRow row{std::vector<Rational>(unknowns), Polynomial(law_table)};
        for (std::size_t k = 0; k < unknowns; ++k) row.coeffs[k] = cobound[k].coefficient(e);
        row.rhs = -coefficient_of(defect, uvw, e, law_table);
        rows.push_back(std::move(row));
      }
    for (int k = 1; 2 * k < n; ++k) {
      ConstraintRow row{std::vector<Rational>(unknowns), Polynomial(law_table)};
      row.coeffs[k - 1] = 1;
      row.coeffs[n - k - 1] = -1;
      rows.push_back(std::move(row));
    }
    ConstraintRow pin{std::vector<Rational>(unknowns), coefficient_of(inv_dlog, {0}, {n - 1}, law_table)};
    pin.coeffs[n - 2] = 1;
    rows.push_back(std::move(pin));

    auto solution = solve_constraints(std::move(rows), unknowns);
    for (int k = 1; k < n; ++k) {
      Exponents e(law_table->size(), 0);
      e[0] = k;
      e[1] = n - k;
      law += solution[k - 1] * Polynomial::monomial(law_table, e);
      out.emplace(std::make_pair(k, n - k), solution[k - 1]);
    }
  }
  return out;
}

Polynomial exp_by_lagrange_inversion(int truncation) {
  if (truncation < 1) throw ParameterError("truncation degree must be at least 1");
  auto line = series_table({"t"}, CoefficientRing::lazard(truncation));
  Polynomial h(line);
  for (int i = 1; i < truncation; ++i) {
    Exponents e(line->size(), 0);
    e[0] = i;
    e[line->index(lazard_generator_name(i))] = 1;
    h.add_term(e, 1);
  }
  // z / log z = 1 / (1 + h)
  Polynomial ratio = Polynomial::constant(line, 1), power = Polynomial::constant(line, 1);
  for (int k = 1; k < truncation; ++k) {
    power = poly_mul(power, -h, truncation);
    ratio += power;
  }
  Polynomial exp(line);
  for (int n = 1; n <= truncation; ++n) {
    Polynomial p = poly_pow(ratio, n, n - 1);
    for (const auto& [e, c] : p.terms()) {
      if (e[0] != n - 1) continue;
      Exponents f = e;
      f[0] = n;
      exp.add_term(f, c / n);
    }
  }
  return exp;
}

std::vector<long> molien_dimensions(const WeylGroup& weyl, int max_degree) {
  if (weyl.elements.empty()) throw ParameterError("empty group");
  std::size_t length = static_cast<std::size_t>(max_degree) + 1;
  std::size_t r = weyl.elements.front().size();
  Series molien(length);
  for (const auto& w : weyl.elements) {
    Series term = series_inverse(det_one_minus_tw(w), length);
    for (std::size_t i = 0; i < length; ++i) molien[i] += term[i];
  }
  for (auto& c : molien) c /= static_cast<long>(weyl.size());
  Series one_minus_t{1, -1};
  Series denom = molien;
  for (std::size_t i = 0; i < r; ++i) denom = series_mul(denom, one_minus_t, length);
  Series hilb = series_inverse(denom, length);
  std::vector<long> out;
  for (auto& c : hilb) {
    c.canonicalize();
    if (c.get_den() != 1 || !c.get_num().fits_slong_p())
      throw ConsistencyError("Molien series produced a non-integral coefficient " + c.get_str());
    out.push_back(c.get_num().get_si());
  }
  return out;
}

std::vector<long> kernel_dimensions(const InvariantSet& invariants, int max_degree) {
  const auto& table = invariants.table;
  std::vector<long> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto basis = monomials_of_degree(*table, d);
    std::map<Exponents, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    Matrix rows;
    for (std::size_t i = 0; i < invariants.sigmas.size(); ++i) {
      int rest = d - invariants.degrees[i];
      if (rest < 0) continue;
      for (const auto& m : monomials_of_degree(*table, rest)) {
        Polynomial p = invariants.sigmas[i] * Polynomial::monomial(table, m);
        std::vector<Rational> row(basis.size());
        for (const auto& [e, c] : p.terms()) row[index.at(e)] = c;
        rows.push_back(std::move(row));
      }
    }
    out.push_back(static_cast<long>(basis.size()) - static_cast<long>(rows.empty() ? 0 : matrix_rank(rows)));
  }
  return out;
}

long rank_by_weyl_quotient(const RootDatum& datum, const std::vector<int>& parabolic) {
  auto w = enumerate_weyl(datum);
  auto wp = parabolic_weyl(datum, parabolic);
  if (w.size() % wp.size() != 0) throw ConsistencyError("|W_P| does not divide |W|");
  return static_cast<long>(w.size() / wp.size());
}

std::map<int, long> gl_partial_flag_ranks(const RingPresentation& base, const CharacteristicMap& cmap, int n,
                                          const std::vector<int>& parabolic, int truncation) {
  if (base.mode != Mode::chow) throw ParameterError("the block presentation is a Chow-mode oracle");
  if (static_cast<int>(cmap.values.size()) != n) throw ParameterError("GL_n needs n characteristic classes");
  std::set<int> joined;
  for (int i : parabolic) {
    if (i < 1 || i >= n) throw ParameterError("parabolic index " + std::to_string(i) + " out of range");
    joined.insert(i);
  }
  std::vector<int> blocks{1};
  for (int i = 1; i < n; ++i) {
    if (joined.count(i)) ++blocks.back();
    else blocks.push_back(1);
  }

  std::set<std::string> taken;
  for (const auto& g : base.generators) taken.insert(g.name);
  std::string prefix = "y";
  auto clash = [&] {
    for (const auto& t : taken)
      if (t.rfind(prefix, 0) == 0) return true;
    return false;
  };
  while (clash()) prefix += "_";

  std::vector<VariableTable::Variable> vars;
  for (const auto& g : base.generators) vars.push_back({g.name, g.degree, false, g.weight});
  std::vector<std::vector<std::string>> names(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int k = 1; k <= blocks[b]; ++k) {
      names[b].push_back(prefix + std::to_string(b + 1) + "_" + std::to_string(k));
      vars.push_back({names[b].back(), k, false, 0});
    }
  auto table = make_table(std::move(vars));

  std::vector<Polynomial> relations;
  for (const auto& r : base.relations) relations.push_back(rebase(r, table));
  Polynomial total = Polynomial::constant(table, 1);
  for (const auto& block : names) {
    Polynomial c = Polynomial::constant(table, 1);
    for (const auto& name : block) c += Polynomial::variable(table, name);
    total = poly_mul(total, c, truncation);
  }
  for (int k = 1; k <= n; ++k) relations.push_back(homogeneous_part(total, k) - rebase(cmap.values[k - 1], table));
  QuotientRing ring(table, relations, {truncation, truncation, std::nullopt});
  return ring.ranks();
}

std::map<int, long> principal_ranks_by_localization(const PrincipalBundleSpec& spec) {
  const RingPresentation& base = spec.base;
  const QuotientRing& x = *base.ring;
  int trunc = base.truncation;

  std::vector<Polynomial> classes;
  if (spec.generating_characters.empty()) {
    for (const auto& [name, value] : spec.character_classes) classes.push_back(value);
  } else if (base.mode == Mode::chow) {
    for (const auto& chi : spec.generating_characters) {
      if (chi.coefficients.size() != spec.character_classes.size())
        throw ParameterError("generating character does not match the basis characters");
      Polynomial c(base.table);
      for (std::size_t i = 0; i < chi.coefficients.size(); ++i)
        c += Rational(chi.coefficients[i]) * spec.character_classes[i].second;
      classes.push_back(c);
    }
  } else {
    FormalGroupLaw fgl = universal_fgl(trunc);
    int r = static_cast<int>(spec.character_classes.size());
    auto torus = torus_table(r, base.coefficients);
    Substitution to_base;
    for (int i = 0; i < r; ++i) to_base.emplace(root_name(i + 1), spec.character_classes[i].second);
    for (const auto& chi : spec.generating_characters) {
      Polynomial c = chern_of_character(fgl, chi, torus, trunc);
      classes.push_back(c.is_zero() ? Polynomial(base.table) : poly_substitute(c, to_base, trunc, trunc));
    }
  }

  std::map<int, long> out;
  for (const auto& key : x.keys()) {
    long dim = static_cast<long>(x.standard_monomials(key).size());
    Matrix image;
    for (const auto& c : classes) {
      if (c.is_zero()) continue;
      for (const auto& s : x.standard_monomials({key.first - 1, key.second})) {
        auto coords = x.coordinates(key, c * Polynomial::monomial(base.table, s));
        if (!coords.empty()) image.push_back(std::move(coords));
      }
    }
    long r = image.empty() || dim == 0 ? 0 : static_cast<long>(matrix_rank(image));
    out[key.first] += dim - r;
  }
  return out;
}

}  // namespace flagbord
