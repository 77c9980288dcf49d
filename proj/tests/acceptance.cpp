// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <flagbord/bundle.hpp>
#include <flagbord/coinvariants.hpp>
#include <flagbord/expr.hpp>
#include <flagbord/fgl.hpp>
#include <flagbord/oracle.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace flagbord;

namespace {

using Clock = std::chrono::steady_clock;
using Profile = std::map<int, long>;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (condition) return;
    if (ok) detail << what;
    ok = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Profile nonzero(const Profile& p) {
  Profile out;
  for (auto [d, r] : p)
    if (r) out[d] = r;
  return out;
}

std::string profile_text(const Profile& p) {
  std::ostringstream out;
  for (auto [d, r] : nonzero(p)) out << d << ':' << r << ' ';
  return out.str();
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Closed-form |W| and positive-root counts, kept separate from the library.
long weyl_order(RootType type, int n) {
  switch (type) {
    case RootType::GL: return factorial(n);
    case RootType::A: return factorial(n + 1);
    case RootType::B:
    case RootType::C: return (1L << n) * factorial(n);
    case RootType::D: return (1L << (n - 1)) * factorial(n);
    case RootType::G2: return 12;
  }
  return 0;
}

long positive_roots(RootType type, int n) {
  switch (type) {
    case RootType::GL: return n * (n - 1) / 2;
    case RootType::A: return n * (n + 1) / 2;
    case RootType::B:
    case RootType::C: return n * n;
    case RootType::D: return n * (n - 1);
    case RootType::G2: return 6;
  }
  return 0;
}

struct Case {
  RootType type;
  int rank;
  std::string name() const { return to_string(type) + std::to_string(rank); }
};

std::vector<Case> coinvariant_cases() {
  std::vector<Case> out;
  for (int n = 1; n <= 4; ++n) out.push_back({RootType::GL, n});
  for (int n = 1; n <= 3; ++n) out.push_back({RootType::A, n});
  for (int n = 1; n <= 3; ++n) out.push_back({RootType::B, n});
  for (int n = 1; n <= 3; ++n) out.push_back({RootType::C, n});
  out.push_back({RootType::D, 4});
  return out;
}

std::vector<Case> rank_sweep_cases() {
  std::vector<Case> out;
  for (int n = 1; n <= 3; ++n) out.push_back({RootType::GL, n});
  for (int n = 1; n <= 3; ++n) out.push_back({RootType::A, n});
  for (int n = 1; n <= 3; ++n) out.push_back({RootType::B, n});
  for (int n = 1; n <= 3; ++n) out.push_back({RootType::C, n});
  for (int n = 2; n <= 3; ++n) out.push_back({RootType::D, n});
#ifdef FLAGBORD_WITH_G2
  out.push_back({RootType::G2, 2});
#endif
  return out;
}

std::vector<std::vector<int>> all_subsets(int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

// Built once and shared by criteria 1-4.
std::map<std::string, GroupData>& group_cache() {
  static std::map<std::string, GroupData> cache;
  return cache;
}

std::map<std::string, double>& build_seconds() {
  static std::map<std::string, double> times;
  return times;
}

const GroupData& group(const Case& c) {
  auto& cache = group_cache();
  auto it = cache.find(c.name());
  if (it == cache.end()) {
    auto start = Clock::now();
    it = cache.emplace(c.name(), make_group_data(c.type, c.rank)).first;
    build_seconds()[c.name()] = seconds_since(start);
  }
  return it->second;
}

RingPresentation projective_space(int n, Mode mode, int D) {
  return make_base("P" + std::to_string(n), {{"h", 1, 0}}, {"h^" + std::to_string(n + 1)}, mode, D);
}

CharacteristicMap classes(const RingPresentation& base, const std::vector<std::string>& values) {
  CharacteristicMap cmap;
  for (const auto& v : values) cmap.values.push_back(parse_polynomial(v, base.table));
  return cmap;
}

CharacteristicMap zero_classes(const RingPresentation& base, const GroupData& g) {
  return CharacteristicMap{std::vector<Polynomial>(g.invariants.sigmas.size(), Polynomial(base.table))};
}

Profile lambda_profile(const CoinvariantAlgebra& lambda) {
  Profile out;
  for (int d = 0; d <= lambda.top_degree(); ++d) out[d] = static_cast<long>(lambda.dimension(d));
  return out;
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& o) {
  for (const auto& c : coinvariant_cases()) {
    const auto& g = group(c);
    long expected = weyl_order(c.type, c.rank);
    o.require(static_cast<long>(g.weyl.size()) == expected, c.name() + ": |W| enumerated differs from formula");
    o.require(static_cast<long>(g.lambda->dimension()) == expected,
              c.name() + ": dim Lambda = " + std::to_string(g.lambda->dimension()) + ", |W| = " +
                  std::to_string(expected));
    o.require(build_seconds()[c.name()] < 60, c.name() + ": construction took more than 60 s");
  }
  o.detail << "GL4 " << group({RootType::GL, 4}).lambda->dimension() << ", B3 "
           << group({RootType::B, 3}).lambda->dimension() << ", D4 " << group({RootType::D, 4}).lambda->dimension();
}

void criterion_2(Outcome& o) {
  for (const auto& c : coinvariant_cases()) {
    const auto& l = *group(c).lambda;
    o.require(l.top_degree() == positive_roots(c.type, c.rank), c.name() + ": top degree differs from #positive roots");
    o.require(l.dimension(l.top_degree()) == 1, c.name() + ": top piece is not one-dimensional");
    o.require(l.dimension(l.top_degree() + 1) == 0, c.name() + ": nonzero piece above the top degree");
  }
  o.detail << "D4 top degree " << group({RootType::D, 4}).lambda->top_degree();
}

void criterion_3(Outcome& o) {
  int matrices = 0;
  for (const auto& c : coinvariant_cases()) {
    const auto& l = *group(c).lambda;
    for (int d = 0; d <= l.top_degree(); ++d) {
      auto p = pairing_matrix(l, d);
      bool square = p.matrix.size() == l.dimension(d);
      for (const auto& row : p.matrix) square = square && row.size() == l.dimension(l.top_degree() - d);
      o.require(square, c.name() + ": pairing matrix in degree " + std::to_string(d) + " is not square");
      o.require(p.determinant != 0 && p.determinant == determinant(p.matrix),
                c.name() + ": pairing matrix in degree " + std::to_string(d) + " is singular");
      ++matrices;
    }
  }
  o.detail << matrices << " pairing matrices";
}

void criterion_4(Outcome& o) {
  for (const auto& c : coinvariant_cases()) {
    const auto& l = *group(c).lambda;
    auto coeffs = poincare_coefficients(l);
    o.require(coeffs == poincare_product(group(c).invariants.degrees), c.name() + ": Poincare polynomial differs");
    o.require(std::equal(coeffs.begin(), coeffs.end(), coeffs.rbegin()), c.name() + ": not palindromic");
  }
  std::string gl3 = format_univariate(poincare_coefficients(*group({RootType::GL, 3}).lambda));
  o.require(gl3 == "1 + 2t + 2t^2 + t^3", "GL3 Poincare polynomial is " + gl3);
  o.detail << "GL3: " << gl3;
}

void criterion_5(Outcome& o) {
  auto start = Clock::now();
  for (int D = 1; D <= 6; ++D) {
    auto r = fgl_axiom_residuals(universal_fgl(D));
    o.require(r.unit.is_zero(), "unit residual nonzero at D = " + std::to_string(D));
    o.require(r.commutativity.is_zero(), "commutativity residual nonzero at D = " + std::to_string(D));
    o.require(r.associativity.is_zero(), "associativity residual nonzero at D = " + std::to_string(D));
  }
  double t = seconds_since(start);
  o.require(t < 30, "axiom checks took more than 30 s");
  o.detail << "D = 1..6 in " << t << " s";
}

void criterion_6(Outcome& o) {
  const int D = 4;
  auto F = universal_fgl(D);
  auto solved = lazard_coefficients_by_constraints(D);
  int compared = 0;
  for (int i = 1; i < D; ++i)
    for (int j = 1; i + j <= D; ++j) {
      auto it = solved.find({i, j});
      o.require(it != solved.end(), "constraint route has no a_" + std::to_string(i) + std::to_string(j));
      if (it == solved.end()) continue;
      Polynomial main = F.coefficient(i, j);
      o.require(main == rebase(it->second, main.table()),
                "a_" + std::to_string(i) + std::to_string(j) + ": " + main.to_string() + " vs " + it->second.to_string());
      ++compared;
    }
  o.detail << compared << " coefficients";
}

void criterion_7(Outcome& o) {
  auto start = Clock::now();
  int computations = 0;
  for (const auto& c : rank_sweep_cases()) {
    const auto& g = group(c);
    const int D = static_cast<int>(g.datum->positive_roots.size()) + 1;
    auto base = point_base(Mode::chow, D);
    for (const auto& I : all_subsets(static_cast<int>(g.datum->simple_count()))) {
      auto pres = flag_bundle_ring(base, zero_classes(base, g), g, I, {Mode::chow, D, ChernConvention::roots});
      auto report = verify_rank(pres, base, g, I, false);
      long quotient = weyl_order(c.type, c.rank) / static_cast<long>(parabolic_weyl(*g.datum, I).size());
      std::string where = c.name() + " I=" + std::to_string(I.size());
      o.require(report.ok(), where + ": verify_rank disagrees");
      o.require(report.weyl_quotient == quotient && report.invariant_dimension == quotient &&
                    report.declared == quotient,
                where + ": rank not |W|/|W_P|");
      ++computations;
    }
  }
  double t = seconds_since(start);
  o.require(t < 300, "sweep took more than 5 min");
  o.detail << computations << " (type, parabolic) pairs in " << t << " s";
}

void criterion_8(Outcome& o) {
  FlagOptions chow{Mode::chow, 6, ChernConvention::roots};
  const auto& gl3 = group({RootType::GL, 3});
  auto point = point_base(Mode::chow, 6);
  auto full = flag_bundle_ring(point, zero_classes(point, gl3), gl3, {}, chow);
  o.require(nonzero(full.ranks) == Profile{{0, 1}, {1, 2}, {2, 2}, {3, 1}},
            "GL3 over a point: ranks " + profile_text(full.ranks));

  const auto& gl2 = group({RootType::GL, 2});
  auto p1 = projective_space(1, Mode::chow, 6);
  auto pres = flag_bundle_ring(p1, classes(p1, {"h", "0"}), gl2, {}, chow);
  o.require(pres.basis && pres.basis->size() == 2, "GL2 over P1: free rank is not 2");
  o.require(pres.ring->reduces_to_zero(parse_polynomial("x1^2 - h*x1", pres.table)),
            "GL2 over P1: xi^2 - h xi does not reduce to zero");
  o.require(!pres.identities.empty() && pres.identities.front().reduces_to_zero,
            "GL2 over P1: reported identity does not reduce");
  o.detail << "GL3 " << profile_text(full.ranks) << "| GL2/P1 " << profile_text(pres.ranks);
}

void criterion_9(Outcome& o) {
  const int D = 4;
  for (int n : {2, 3}) {
    const auto& g = group({RootType::GL, n});
    auto L = point_base(Mode::cobordism, D);
    auto pres = flag_bundle_ring(L, zero_classes(L, g), g, {}, {Mode::cobordism, D, ChernConvention::roots});
    Profile expected = nonzero(tensor_with_lazard(lambda_profile(*g.lambda), D));
    Profile actual;
    for (auto [d, r] : nonzero(pres.ranks))
      if (d <= D) actual[d] = r;
    o.require(actual == expected,
              "GL" + std::to_string(n) + ": " + profile_text(actual) + "vs " + profile_text(expected));
    o.detail << "GL" << n << " " << profile_text(actual) << (n == 2 ? "| " : "");
  }
}

void criterion_10(Outcome& o) {
  auto p1 = projective_space(1, Mode::chow, 6);
  PrincipalBundleSpec gm{p1, {{"L", parse_polynomial("h", p1.table)}}, {}};
  auto pres = principal_bundle_ring(gm, Mode::chow, 6);
  auto oracle = principal_ranks_by_localization(gm);
  o.require(pres.total_rank() == 1, "G_m over P1: total rank " + std::to_string(pres.total_rank()));
  o.require(nonzero(pres.ranks) == nonzero(oracle), "G_m over P1: localization oracle disagrees");

  PrincipalBundleSpec none{p1, {}, {}};
  auto same = principal_bundle_ring(none, Mode::chow, 6);
  o.require(same.ranks == p1.ranks, "empty character set changed the base");
  o.require(nonzero(principal_ranks_by_localization(none)) == nonzero(p1.ranks),
            "empty character set: localization oracle disagrees");
  o.detail << "G_m/P1 total " << pres.total_rank() << ", empty set " << profile_text(same.ranks);
}

void criterion_11(Outcome& o) {
  const int D = 4;
  int jobs = 0;
  auto compare = [&](const RingPresentation& cob, const RingPresentation& chow, const std::string& what) {
    o.require(nonzero(specialize_lazard(cob).ranks) == nonzero(chow.ranks),
              what + ": " + profile_text(specialize_lazard(cob).ranks) + "vs " + profile_text(chow.ranks));
    ++jobs;
  };
  FlagOptions cob_opt{Mode::cobordism, D, ChernConvention::roots};
  FlagOptions chow_opt{Mode::chow, D, ChernConvention::roots};

  for (int n : {2, 3}) {
    const auto& g = group({RootType::GL, n});
    auto L = point_base(Mode::cobordism, D);
    auto Q = point_base(Mode::chow, D);
    compare(flag_bundle_ring(L, zero_classes(L, g), g, {}, cob_opt),
            flag_bundle_ring(Q, zero_classes(Q, g), g, {}, chow_opt), "GL" + std::to_string(n) + " over a point");
  }
  {
    const auto& g = group({RootType::GL, 2});
    auto cb = projective_space(1, Mode::cobordism, D);
    auto ch = projective_space(1, Mode::chow, D);
    compare(flag_bundle_ring(cb, classes(cb, {"h", "0"}), g, {}, cob_opt),
            flag_bundle_ring(ch, classes(ch, {"h", "0"}), g, {}, chow_opt), "GL2 over P1");
    PrincipalBundleSpec cspec{cb, {{"L", parse_polynomial("h", cb.table)}}, {}};
    PrincipalBundleSpec hspec{ch, {{"L", parse_polynomial("h", ch.table)}}, {}};
    compare(principal_bundle_ring(cspec, Mode::cobordism, D), principal_bundle_ring(hspec, Mode::chow, D),
            "G_m over P1");
    compare(principal_bundle_ring({cb, {}, {}}, Mode::cobordism, D), principal_bundle_ring({ch, {}, {}}, Mode::chow, D),
            "empty character set");
  }
  for (const auto& c : rank_sweep_cases()) {
    const auto& g = group(c);
    if (g.weyl.size() > 12) continue;
    auto L = point_base(Mode::cobordism, D);
    auto Q = point_base(Mode::chow, D);
    for (const auto& I : all_subsets(static_cast<int>(g.datum->simple_count())))
      compare(flag_bundle_ring(L, zero_classes(L, g), g, I, cob_opt),
              flag_bundle_ring(Q, zero_classes(Q, g), g, I, chow_opt), c.name() + " with a parabolic");
  }
  o.detail << jobs << " cobordism jobs";
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"coinvariant dimension equals |W|", criterion_1},
      {"top degree is the number of positive roots, top piece one-dimensional", criterion_2},
      {"pairing matrices square and invertible", criterion_3},
      {"Poincare polynomial equals the degree product and is palindromic", criterion_4},
      {"formal group law axioms hold for D <= 6", criterion_5},
      {"Lazard coefficients agree by both routes for i + j <= 4", criterion_6},
      {"free rank is |W|/|W_P| for every parabolic, rank <= 3", criterion_7},
      {"Borel presentation at a point and over P1", criterion_8},
      {"fiber ring ranks equal L tensor Lambda up to D = 4", criterion_9},
      {"principal bundle quotients", criterion_10},
      {"cobordism jobs specialize to the Chow ranks", criterion_11},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << i + 1 << "] " << criteria[i].first << "  (" << o.detail.str()
              << ")" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
