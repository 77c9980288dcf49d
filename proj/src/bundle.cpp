#include <flagbord/bundle.hpp>
#include <flagbord/expr.hpp>

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace flagbord {

std::string to_string(Mode mode) { return mode == Mode::chow ? "chow" : "cobordism"; }

Mode parse_mode(std::string_view text) {
  if (text == "chow") return Mode::chow;
  if (text == "cobordism") return Mode::cobordism;
  throw ParameterError("unknown mode '" + std::string(text) + "' (expected chow or cobordism)");
}

std::string to_string(ChernConvention convention) {
  return convention == ChernConvention::roots ? "roots" : "dual";
}

ChernConvention parse_convention(std::string_view text) {
  if (text == "roots") return ChernConvention::roots;
  if (text == "dual") return ChernConvention::dual;
  throw ParameterError("unknown convention '" + std::string(text) + "' (expected roots or dual)");
}

long RingPresentation::total_rank() const {
  long total = 0;
  for (const auto& [d, r] : ranks) total += r;
  return total;
}

bool RingPresentation::has_aux() const {
  return std::any_of(generators.begin(), generators.end(), [](const Generator& g) { return g.weight != 0; });
}

namespace {

const std::regex kReserved("(x|b)[0-9]+|t|u|v|w");

CoefficientRing ring_for(Mode mode, int truncation) {
  return mode == Mode::cobordism ? CoefficientRing::lazard(truncation) : CoefficientRing::rational();
}

FormalGroupLaw fgl_for(Mode mode, int truncation) {
  return mode == Mode::cobordism ? universal_fgl(truncation) : additive_fgl(truncation);
}

TablePtr table_for(const std::vector<Generator>& generators, const CoefficientRing& ring) {
  std::vector<VariableTable::Variable> vars;
  for (const auto& g : generators) vars.push_back({g.name, g.degree, false, g.weight});
  vars.insert(vars.end(), ring.generators.begin(), ring.generators.end());
  return make_table(std::move(vars));
}

MonomialBounds bounds_for(int truncation) { return {truncation, truncation, std::nullopt}; }

void fill_ranks(RingPresentation& pres) {
  pres.ranks = pres.ring->ranks();
  pres.bigraded_ranks = pres.ring->bigraded_ranks();
}

void check_truncation(int truncation) {
  if (truncation < 1) throw ParameterError("truncation degree must be at least 1");
}

// x_j -> c_1(w e_j): linear in Chow mode, through the formal group law
// otherwise.
Substitution torus_action(const IntMatrix& w, const TablePtr& table, Mode mode, const FormalGroupLaw& fgl,
                          int truncation) {
  if (mode == Mode::chow) return linear_action(w, table);
  Substitution sigma;
  for (std::size_t j = 0; j < w.size(); ++j) {
    Character chi;
    for (const auto& row : w) chi.coefficients.push_back(row[j]);
    sigma.emplace(root_name(static_cast<int>(j) + 1), chern_of_character(fgl, chi, table, truncation));
  }
  return sigma;
}

// Ranks of the invariant part of `ring` under the group acting through
// `actions`: the rank of the averaging operator on every slice.
void invariant_ranks(RingPresentation& pres, const std::vector<Substitution>& actions) {
  const QuotientRing& ring = *pres.ring;
  int d = pres.truncation;
  pres.ranks.clear();
  pres.bigraded_ranks.clear();
  for (const auto& key : ring.keys()) {
    auto standard = ring.standard_monomials(key);
    std::size_t n = standard.size();
    Matrix avg(n, std::vector<Rational>(n));
    for (const auto& act : actions)
      for (std::size_t k = 0; k < n; ++k) {
        Polynomial image = poly_substitute(Polynomial::monomial(ring.table(), standard[k]), act, d, d);
        auto coords = ring.coordinates(key, image);
        for (std::size_t i = 0; i < n; ++i) avg[i][k] += coords[i];
      }
    long r = static_cast<long>(matrix_rank(avg));
    pres.bigraded_ranks[key] = r;
    pres.ranks[key.first] += r;
  }
}

std::vector<Substitution> symmetry_actions(const RingPresentation& pres, const FormalGroupLaw& fgl) {
  std::vector<Substitution> out;
  for (const auto& w : pres.symmetry) out.push_back(torus_action(w, pres.table, pres.mode, fgl, pres.truncation));
  return out;
}

std::string parabolic_label(const std::vector<int>& parabolic) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < parabolic.size(); ++i) out << (i ? "," : "") << parabolic[i];
  out << '}';
  return out.str();
}

}  // namespace

RingPresentation make_base(const std::string& name, const std::vector<Generator>& generators,
                           const std::vector<std::string>& relations, Mode mode, int truncation) {
  check_truncation(truncation);
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (g.degree < 1)
      throw ParameterError("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                           "; base generators need degree >= 1");
    if (g.weight < 0) throw ParameterError("generator '" + g.name + "' has a negative weight label");
    if (std::regex_match(g.name, kReserved)) throw ParameterError("generator name '" + g.name + "' is reserved");
    if (!seen.insert(g.name).second) throw ParameterError("duplicate generator '" + g.name + "'");
  }
  RingPresentation pres;
  pres.name = name;
  pres.mode = mode;
  pres.truncation = truncation;
  pres.coefficients = ring_for(mode, truncation);
  pres.generators = generators;
  pres.table = table_for(generators, pres.coefficients);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    Polynomial r = parse_polynomial(relations[i], pres.table);
    if (!r.is_zero() && (!r.is_homogeneous() || !r.aux()))
      throw ValidationError("relation " + std::to_string(i) + " '" + relations[i] + "' is not homogeneous");
    pres.relations.push_back(std::move(r));
  }
  pres.ring = std::make_shared<QuotientRing>(pres.table, pres.relations, bounds_for(truncation));
  fill_ranks(pres);
  pres.metadata["mode"] = to_string(mode);
  pres.metadata["coefficients"] = to_string(pres.coefficients.kind);
  return pres;
}

RingPresentation point_base(Mode mode, int truncation) { return make_base("point", {}, {}, mode, truncation); }

GroupData make_group_data(RootType type, int rank) {
  GroupData g;
  g.datum = std::make_shared<RootDatum>(build_root_datum(type, rank));
  g.weyl = enumerate_weyl(*g.datum);
  g.invariants = fundamental_invariants(*g.datum);
  g.lambda = std::make_shared<CoinvariantAlgebra>(g.weyl, g.invariants);
  return g;
}

Polynomial imposed_invariant(const GroupData& group, std::size_t i, const TablePtr& table, Mode mode,
                             const FormalGroupLaw& fgl, int truncation) {
  Polynomial sigma = rebase(group.invariants.sigmas.at(i), table);
  if (mode == Mode::chow || group.datum->type == RootType::GL) return sigma;
  return log_transport(fgl, sigma, group.datum->lattice_rank, truncation);
}

RingPresentation flag_bundle_ring(const RingPresentation& base, const CharacteristicMap& cmap, const GroupData& group,
                                  const std::vector<int>& parabolic, const FlagOptions& options) {
  check_truncation(options.truncation);
  if (base.mode != options.mode) throw ParameterError("base ring and flag computation use different modes");
  if (base.truncation != options.truncation)
    throw ParameterError("base ring and flag computation use different truncation degrees");
  const auto& degrees = group.invariants.degrees;
  if (cmap.values.size() != degrees.size())
    throw ParameterError("characteristic map has " + std::to_string(cmap.values.size()) + " values but the group has " +
                         std::to_string(degrees.size()) + " fundamental invariants");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const Polynomial& v = cmap.values[i];
    if (!same_table(v.table(), base.table)) throw StructuralError("characteristic class does not live on the base");
    if (v.is_zero()) continue;
    auto d = v.degree();
    if (!d || *d != degrees[i])
      throw ParameterError("characteristic class of sigma" + std::to_string(i + 1) + " has degree " +
                           (d ? std::to_string(*d) : std::string("mixed")) + " but sigma" + std::to_string(i + 1) +
                           " has degree " + std::to_string(degrees[i]));
    if (v.aux() != 0)
      throw ParameterError("characteristic class of sigma" + std::to_string(i + 1) + " must have weight label 0");
  }
  WeylGroup wp = parabolic_weyl(*group.datum, parabolic);
  int r = group.datum->lattice_rank;
  int trunc = options.truncation;
  FormalGroupLaw fgl = fgl_for(options.mode, trunc);

  RingPresentation pres;
  pres.name = parabolic.empty() ? "E/B" : "E/P" + parabolic_label(parabolic);
  pres.mode = options.mode;
  pres.truncation = trunc;
  pres.coefficients = base.coefficients;
  pres.generators = base.generators;
  for (const auto& g : base.generators)
    if (std::regex_match(g.name, kReserved)) throw ParameterError("generator name '" + g.name + "' is reserved");
  for (int i = 1; i <= r; ++i) pres.generators.push_back({root_name(i), 1, 0});
  pres.table = table_for(pres.generators, pres.coefficients);
  pres.torus_rank = r;

  for (const auto& rel : base.relations) pres.relations.push_back(rebase(rel, pres.table));
  Substitution inverse;
  if (options.convention == ChernConvention::dual)
    for (int i = 1; i <= r; ++i)
      inverse.emplace(root_name(i), formal_inverse(fgl, Polynomial::variable(pres.table, root_name(i)), trunc));
  std::vector<Polynomial> classes;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    Polynomial sigma = imposed_invariant(group, i, pres.table, options.mode, fgl, trunc);
    if (!inverse.empty()) sigma = poly_substitute(sigma, inverse, trunc, trunc);
    classes.push_back(rebase(cmap.values[i], pres.table));
    pres.relations.push_back(truncate(sigma - classes.back(), trunc, trunc));
  }
  pres.ring = std::make_shared<QuotientRing>(pres.table, pres.relations, bounds_for(trunc));

  if (parabolic.empty()) {
    fill_ranks(pres);
  } else {
    pres.symmetry = wp.elements;
    invariant_ranks(pres, symmetry_actions(pres, fgl));
  }

  FreeBasis basis;
  basis.over = base.name;
  bool transport = options.mode == Mode::cobordism && group.datum->type != RootType::GL;
  for (const auto& [d, classes_d] : w_invariants(*group.lambda, wp))
    for (const auto& c : classes_d) {
      Polynomial lift = rebase(group.lambda->lift(c), pres.table);
      if (transport) lift = log_transport(fgl, lift, r, trunc);
      basis.elements.push_back(std::move(lift));
      basis.degrees.push_back(d);
    }
  pres.basis = std::move(basis);

  if (group.datum->type == RootType::GL) {
    // prod_i (xi - x_i) = sum_k (-1)^k e_k xi^(n-k) with xi = x1.
    int n = r;
    Polynomial xi = Polynomial::variable(pres.table, root_name(1));
    if (!inverse.empty()) xi = inverse.at(root_name(1));
    Polynomial expr(pres.table);
    for (int k = 0; k <= n; ++k) {
      Polynomial ck = k == 0 ? Polynomial::constant(pres.table, 1) : classes[k - 1];
      Polynomial term = poly_mul(ck, poly_pow(xi, n - k, trunc), trunc);
      expr += (k % 2 ? Rational(-1) : Rational(1)) * term;
    }
    expr = truncate(expr, trunc, trunc);
    std::string label = "sum_k (-1)^k c_k xi^(" + std::to_string(n) + "-k) with xi = " +
                        (inverse.empty() ? std::string("x1") : std::string("i(x1)"));
    pres.identities.push_back({label, expr, pres.ring->reduces_to_zero(expr)});
  }

  pres.metadata["mode"] = to_string(options.mode);
  pres.metadata["coefficients"] = to_string(pres.coefficients.kind);
  pres.metadata["convention"] = to_string(options.convention);
  pres.metadata["group"] = to_string(group.datum->type) + std::to_string(group.datum->rank);
  pres.metadata["parabolic"] = parabolic_label(parabolic);
  pres.metadata["ranks"] = parabolic.empty() ? "full flag ring" : "W_P-invariant part of the full flag ring";
  pres.metadata["structure"] = "ring presentation when the base is smooth; module presentation over the base otherwise";
  return pres;
}

RingPresentation trivial_flag_ring(const RingPresentation& base, const GroupData& group,
                                   const std::vector<int>& parabolic, const FlagOptions& options) {
  CharacteristicMap cmap;
  for (std::size_t i = 0; i < group.invariants.degrees.size(); ++i) cmap.values.emplace_back(base.table);
  RingPresentation pres = flag_bundle_ring(base, cmap, group, parabolic, options);
  std::map<int, long> profile;
  for (int d : pres.basis->degrees) ++profile[d];
  std::ostringstream out;
  out << base.name << " (x) Lambda^(P), Lambda^(P) ranks";
  for (const auto& [d, n] : profile) out << ' ' << d << ':' << n;
  pres.metadata["tensor_decomposition"] = out.str();
  return pres;
}

RingPresentation principal_bundle_ring(const PrincipalBundleSpec& spec, Mode mode, int truncation) {
  const RingPresentation& base = spec.base;
  check_truncation(truncation);
  if (base.mode != mode || base.truncation != truncation)
    throw ParameterError("base ring does not match the requested mode and truncation");
  for (const auto& [name, value] : spec.character_classes) {
    if (!same_table(value.table(), base.table)) throw StructuralError("character class does not live on the base");
    if (value.is_zero()) continue;
    auto d = value.degree();
    if (!d || *d != 1)
      throw ParameterError("character class '" + name + "' has degree " +
                           (d ? std::to_string(*d) : std::string("mixed")) + "; first Chern classes have degree 1");
    if (value.aux() != 0) throw ParameterError("character class '" + name + "' must have weight label 0");
  }

  std::vector<Polynomial> generators;
  if (spec.generating_characters.empty()) {
    for (const auto& [name, value] : spec.character_classes) generators.push_back(value);
  } else {
    FormalGroupLaw fgl = fgl_for(mode, truncation);
    int r = static_cast<int>(spec.character_classes.size());
    auto torus = torus_table(r, base.coefficients);
    Substitution to_base;
    for (int i = 0; i < r; ++i) to_base.emplace(root_name(i + 1), spec.character_classes[i].second);
    for (const auto& chi : spec.generating_characters) {
      if (static_cast<int>(chi.coefficients.size()) != r)
        throw ParameterError("generating character has " + std::to_string(chi.coefficients.size()) +
                             " coordinates but " + std::to_string(r) + " basis characters are given");
      if (r == 0) continue;
      Polynomial c = chern_of_character(fgl, chi, torus, truncation);
      generators.push_back(c.is_zero() ? Polynomial(base.table) : poly_substitute(c, to_base, truncation, truncation));
    }
  }

  RingPresentation pres = base;
  pres.name = base.name + "/(c1)";
  for (const auto& g : generators)
    if (!g.is_zero()) pres.relations.push_back(truncate(g, truncation, truncation));
  pres.basis.reset();
  pres.identities.clear();
  pres.symmetry.clear();
  pres.ring = std::make_shared<QuotientRing>(pres.table, pres.relations, bounds_for(truncation));
  fill_ranks(pres);
  pres.metadata["mode"] = to_string(mode);
  pres.metadata["coefficients"] = to_string(pres.coefficients.kind);
  pres.metadata["structure"] = "ring presentation when the base is smooth; module presentation over the base otherwise";
  return pres;
}

bool RankReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const RankCheck& c) { return c.ok(); });
}

RankReport verify_rank(const RingPresentation& pres, const RingPresentation& base, const GroupData& group,
                       const std::vector<int>& parabolic, bool throw_on_mismatch) {
  if (!pres.basis) throw ParameterError("verify_rank needs a presentation with a declared free basis");
  WeylGroup wp = parabolic_weyl(*group.datum, parabolic);
  RankReport report;
  if (group.weyl.size() % wp.size() != 0) throw ConsistencyError("|W_P| does not divide |W|");
  report.weyl_quotient = static_cast<long>(group.weyl.size() / wp.size());
  for (const auto& [d, classes] : w_invariants(*group.lambda, wp))
    report.invariant_dimension += static_cast<long>(classes.size());
  report.declared = static_cast<long>(pres.basis->size());
  report.checks.push_back({"rank: |W|/|W_P| vs declared basis", report.weyl_quotient, report.declared});
  report.checks.push_back({"rank: dim Lambda^W_P vs declared basis", report.invariant_dimension, report.declared});

  if (pres.mode == Mode::chow) {
    std::map<int, long> profile;
    for (int d : pres.basis->degrees) ++profile[d];
    auto expected = convolve(base.ranks, profile, pres.truncation);
    for (int d = 0; d <= pres.truncation; ++d) {
      long e = expected.count(d) ? expected.at(d) : 0;
      long a = pres.ranks.count(d) ? pres.ranks.at(d) : 0;
      report.checks.push_back({"rank in degree " + std::to_string(d) + ": base (x) basis vs presentation", e, a});
    }
  }
  if (throw_on_mismatch)
    for (const auto& c : report.checks)
      if (!c.ok())
        throw ConsistencyError(c.name + ": expected " + std::to_string(c.expected) + ", got " +
                               std::to_string(c.actual));
  return report;
}

RingPresentation specialize_lazard(const RingPresentation& pres) {
  if (pres.mode != Mode::cobordism) return pres;
  RingPresentation out = pres;
  out.mode = Mode::chow;
  out.coefficients = CoefficientRing::rational();
  out.table = table_for(out.generators, out.coefficients);
  Substitution zero;
  for (const auto& g : pres.coefficients.generators) zero.emplace(g.name, Polynomial(out.table));
  for (const auto& v : out.table->variables()) zero.emplace(v.name, Polynomial::variable(out.table, v.name));
  auto specialize = [&](const Polynomial& p) {
    return poly_substitute(p, zero, out.truncation, out.truncation);
  };
  out.relations.clear();
  for (const auto& r : pres.relations) out.relations.push_back(specialize(r));
  if (out.basis)
    for (auto& e : out.basis->elements) e = specialize(e);
  for (auto& id : out.identities) id.expression = specialize(id.expression);
  out.ring = std::make_shared<QuotientRing>(out.table, out.relations, bounds_for(out.truncation));
  if (out.symmetry.empty()) {
    fill_ranks(out);
  } else {
    invariant_ranks(out, symmetry_actions(out, additive_fgl(out.truncation)));
  }
  for (auto& id : out.identities) id.reduces_to_zero = out.ring->reduces_to_zero(id.expression);
  out.metadata["mode"] = to_string(Mode::chow);
  out.metadata["coefficients"] = to_string(out.coefficients.kind);
  out.metadata["specialized"] = "b_i -> 0";
  return out;
}

std::map<int, long> tensor_with_lazard(const std::map<int, long>& chow_ranks, int truncation) {
  std::map<int, long> out;
  for (const auto& [d, r] : chow_ranks) {
    if (d < 0) throw ParameterError("tensor_with_lazard expects a positively graded profile");
    if (d > truncation || r == 0) continue;
    for (int k = 0; k <= truncation; ++k) out[d - k] += r * lazard_dimension(k, truncation);
  }
  return out;
}

std::map<int, long> convolve(const std::map<int, long>& a, const std::map<int, long>& b, int max_degree) {
  std::map<int, long> out;
  for (const auto& [da, ra] : a)
    for (const auto& [db, rb] : b)
      if (da + db <= max_degree) out[da + db] += ra * rb;
  return out;
}

}  // namespace flagbord
