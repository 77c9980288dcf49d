#include <flagbord/fgl.hpp>

namespace flagbord {

std::string to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::rational: return "rational";
    case CoefficientKind::lazard_truncated: return "lazard-truncated";
    case CoefficientKind::user_specialized: return "user-specialized";
  }
  return "unknown";
}

std::string lazard_generator_name(int i) { return "b" + std::to_string(i); }

std::string root_name(int i) { return "x" + std::to_string(i); }

CoefficientRing CoefficientRing::rational() { return {}; }

CoefficientRing CoefficientRing::lazard(int truncation) {
  if (truncation < 1) throw ParameterError("truncation degree must be at least 1");
  CoefficientRing ring;
  ring.kind = CoefficientKind::lazard_truncated;
  ring.truncation = truncation;
  for (int i = 1; i <= truncation; ++i) ring.generators.push_back({lazard_generator_name(i), -i, true, 0});
  return ring;
}

long lazard_dimension(int k, int max_index) {
  if (k < 0) return 0;
  std::vector<long> ways(k + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= std::min(k, max_index); ++part)
    for (int s = part; s <= k; ++s) ways[s] += ways[s - part];
  return ways[k];
}

TablePtr series_table(const std::vector<std::string>& names, const CoefficientRing& ring) {
  std::vector<VariableTable::Variable> vars;
  for (const auto& n : names) vars.push_back({n, 1, false, 0});
  vars.insert(vars.end(), ring.generators.begin(), ring.generators.end());
  return make_table(std::move(vars));
}

TablePtr torus_table(int rank, const CoefficientRing& ring) {
  std::vector<std::string> names;
  for (int i = 1; i <= rank; ++i) names.push_back(root_name(i));
  return series_table(names, ring);
}

Polynomial FormalGroupLaw::coefficient(int i, int j) const {
  const auto& table = law.table();
  std::size_t u = table->index("u"), v = table->index("v");
  Polynomial out(table);
  for (const auto& [e, c] : law.terms()) {
    if (e[u] != i || e[v] != j) continue;
    Exponents f = e;
    f[u] = f[v] = 0;
    out.add_term(f, c);
  }
  return out;
}

namespace {

Polynomial compose(const Polynomial& outer, const std::string& var, const Polynomial& inner, int truncation) {
  return poly_substitute(outer, {{var, inner}}, truncation);
}

// Compositional inverse of a series t + O(t^2) by fixed-point iteration;
// each round fixes one more order.
Polynomial series_inverse(const Polynomial& f, int truncation) {
  const auto& table = f.table();
  Polynomial t = Polynomial::variable(table, "t");
  Polynomial g = t;
  for (int round = 0; round < truncation; ++round) {
    Polynomial residual = compose(f, "t", g, truncation) - t;
    if (residual.is_zero()) break;
    g -= residual;
  }
  return g;
}

}  // namespace

FormalGroupLaw universal_fgl(int truncation) {
  if (truncation < 1) throw ParameterError("universal_fgl: truncation degree must be at least 1");
  FormalGroupLaw fgl{CoefficientRing::lazard(truncation), truncation, Polynomial(series_table({"u", "v"}, {}))};

  auto log_table = series_table({"t"}, fgl.ring);
  Polynomial log = Polynomial::variable(log_table, "t");
  for (int i = 1; i + 1 <= truncation; ++i) {
    Exponents e(log_table->size(), 0);
    e[0] = i + 1;
    e[log_table->index(lazard_generator_name(i))] = 1;
    log.add_term(e, 1);
  }
  Polynomial exp = series_inverse(log, truncation);

  auto law_table = series_table({"u", "v"}, fgl.ring);
  Polynomial u = Polynomial::variable(law_table, "u");
  Polynomial v = Polynomial::variable(law_table, "v");
  Polynomial sum = compose(log, "t", u, truncation) + compose(log, "t", v, truncation);
  fgl.law = compose(exp, "t", sum, truncation);
  fgl.log = std::move(log);
  fgl.exp = std::move(exp);
  return fgl;
}

FormalGroupLaw additive_fgl(int truncation) {
  if (truncation < 1) throw ParameterError("additive_fgl: truncation degree must be at least 1");
  CoefficientRing ring = CoefficientRing::rational();
  auto law_table = series_table({"u", "v"}, ring);
  auto log_table = series_table({"t"}, ring);
  FormalGroupLaw fgl{ring, truncation,
                     Polynomial::variable(law_table, "u") + Polynomial::variable(law_table, "v")};
  fgl.log = Polynomial::variable(log_table, "t");
  fgl.exp = fgl.log;
  return fgl;
}

FormalGroupLaw specialize(const FormalGroupLaw& fgl, const std::map<std::string, Rational>& values) {
  CoefficientRing ring = fgl.ring;
  ring.generators.clear();
  for (const auto& g : fgl.ring.generators)
    if (!values.count(g.name)) ring.generators.push_back(g);
  for (const auto& [name, value] : values) {
    bool known = false;
    for (const auto& g : fgl.ring.generators) known |= g.name == name;
    if (!known) throw ParameterError("specialize: '" + name + "' is not a generator of the coefficient ring");
  }
  if (!values.empty()) ring.kind = CoefficientKind::user_specialized;

  auto apply = [&](const Polynomial& p, const std::vector<std::string>& series_vars) {
    auto table = series_table(series_vars, ring);
    Substitution sigma;
    for (const auto& [name, value] : values) sigma.emplace(name, Polynomial::constant(table, value));
    for (const auto& s : series_vars) sigma.emplace(s, Polynomial::variable(table, s));
    return poly_substitute(p, sigma, fgl.truncation);
  };

  FormalGroupLaw out{ring, fgl.truncation, apply(fgl.law, {"u", "v"})};
  if (fgl.log) out.log = apply(*fgl.log, {"t"});
  if (fgl.exp) out.exp = apply(*fgl.exp, {"t"});
  return out;
}

Polynomial fgl_sum(const FormalGroupLaw& fgl, const Polynomial& p, const Polynomial& q, int truncation) {
  if (p.constant_term() != 0 || q.constant_term() != 0)
    throw ParameterError("fgl_sum: arguments must have zero constant term");
  if (!same_table(p.table(), q.table())) throw StructuralError("fgl_sum: arguments live on different tables");
  return poly_substitute(fgl.law, {{"u", p}, {"v", q}}, truncation);
}

Polynomial formal_inverse(const FormalGroupLaw& fgl, const Polynomial& p, int truncation) {
  if (p.constant_term() != 0) throw ParameterError("formal_inverse: argument must have zero constant term");
  // F(p, -p + e) = e + (higher order), so subtracting the residual gains at
  // least one order per round.
  Polynomial inv = truncate(-p, truncation);
  for (int round = 0; round < truncation; ++round) {
    Polynomial residual = fgl_sum(fgl, p, inv, truncation);
    if (residual.is_zero()) break;
    inv -= residual;
  }
  return inv;
}

Polynomial n_series(const FormalGroupLaw& fgl, int n, int truncation) {
  auto table = series_table({"x"}, fgl.ring);
  Polynomial x = Polynomial::variable(table, "x");
  Polynomial acc(table);
  for (int k = 0; k < std::abs(n); ++k) acc = k == 0 ? truncate(x, truncation) : fgl_sum(fgl, acc, x, truncation);
  if (n < 0) acc = formal_inverse(fgl, acc, truncation);
  return acc;
}

Polynomial chern_of_character(const FormalGroupLaw& fgl, const Character& chi, const TablePtr& table,
                              int truncation) {
  for (std::size_t i = 0; i < chi.coefficients.size(); ++i)
    if (!table->find(root_name(static_cast<int>(i) + 1)))
      throw ParameterError("chern_of_character: character of rank " + std::to_string(chi.coefficients.size()) +
                           " does not fit the torus table");
  std::map<int, Polynomial> series;
  Polynomial acc(table);
  for (std::size_t i = 0; i < chi.coefficients.size(); ++i) {
    int n = chi.coefficients[i];
    if (n == 0) continue;
    auto it = series.find(n);
    if (it == series.end()) it = series.emplace(n, n_series(fgl, n, truncation)).first;
    Polynomial term =
        poly_substitute(it->second, {{"x", Polynomial::variable(table, root_name(static_cast<int>(i) + 1))}},
                        truncation);
    acc = acc.is_zero() ? term : fgl_sum(fgl, acc, term, truncation);
  }
  return acc;
}

Polynomial log_transport(const FormalGroupLaw& fgl, const Polynomial& p, int rank, int truncation) {
  if (!fgl.log) throw ParameterError("log_transport: formal group law has no logarithm");
  Substitution sigma;
  for (int i = 1; i <= rank; ++i) {
    Polynomial xi = Polynomial::variable(p.table(), root_name(i));
    sigma.emplace(root_name(i), poly_substitute(*fgl.log, {{"t", xi}}, truncation));
  }
  return poly_substitute(p, sigma, truncation);
}

AxiomResiduals fgl_axiom_residuals(const FormalGroupLaw& fgl) {
  int d = fgl.truncation;
  auto table = series_table({"u", "v", "w"}, fgl.ring);
  Polynomial u = Polynomial::variable(table, "u");
  Polynomial v = Polynomial::variable(table, "v");
  Polynomial w = Polynomial::variable(table, "w");
  Polynomial zero(table);

  Polynomial f_uv = fgl_sum(fgl, u, v, d);
  Polynomial f_vu = fgl_sum(fgl, v, u, d);
  Polynomial left = fgl_sum(fgl, f_uv, w, d);
  Polynomial right = fgl_sum(fgl, u, fgl_sum(fgl, v, w, d), d);
  return {poly_substitute(fgl.law, {{"u", u}, {"v", zero}}, d) - u, f_uv - f_vu, left - right};
}

}  // namespace flagbord
