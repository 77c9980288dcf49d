#pragma once

#include <flagbord/coinvariants.hpp>
#include <flagbord/fgl.hpp>
#include <flagbord/quotient.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flagbord {

enum class Mode { chow, cobordism };
std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);  // throws ParameterError

// roots: sigma_i(x) - c_i = 0, so a rank-2 flag gives xi^2 - c1 xi + c2 = 0.
// dual:  sigma_i(i(x)) - c_i = 0 with i the formal inverse (-x in Chow mode).
enum class ChernConvention { roots, dual };
std::string to_string(ChernConvention convention);
ChernConvention parse_convention(std::string_view text);

struct Generator {
  std::string name;
  int degree = 1;
  int weight = 0;  // auxiliary label, the n of CH^*(X, n)

  bool operator==(const Generator&) const = default;
};

// A free-module basis over a named base ring.
struct FreeBasis {
  std::string over;
  std::vector<Polynomial> elements;
  std::vector<int> degrees;

  std::size_t size() const { return elements.size(); }
};

// A polynomial asserted to vanish in the presented ring, with the outcome of
// the reduction.
struct Identity {
  std::string label;
  Polynomial expression;
  bool reduces_to_zero = false;
};

struct RingPresentation {
  std::string name;
  Mode mode = Mode::chow;
  int truncation = 6;
  CoefficientRing coefficients;
  std::vector<Generator> generators;
  TablePtr table;  // generators, then the Lazard generators in cobordism mode
  std::vector<Polynomial> relations;
  std::map<int, long> ranks;
  std::map<std::pair<int, int>, long> bigraded_ranks;
  std::optional<FreeBasis> basis;
  std::vector<Identity> identities;
  std::map<std::string, std::string> metadata;
  // Full-flag ring; for a parabolic the ranks above are those of its
  // W_P-invariant part.
  std::shared_ptr<const QuotientRing> ring;
  // W_P acting on x1..x_torus_rank (empty when no invariants are taken).
  std::vector<IntMatrix> symmetry;
  int torus_rank = 0;

  long total_rank() const;
  bool has_aux() const;
};

// Builds Q[gens] / (relations), or L[gens] / (relations) in cobordism mode,
// truncated at order D (and Lazard weight D). Generators of degree < 1,
// duplicate or reserved names raise ParameterError; relations that are not
// homogeneous raise ValidationError.
RingPresentation make_base(const std::string& name, const std::vector<Generator>& generators,
                           const std::vector<std::string>& relations, Mode mode, int truncation);

// The point: Q, or the truncated Lazard ring in cobordism mode.
RingPresentation point_base(Mode mode, int truncation);

// Value of each fundamental invariant in the base (Chern classes of E for
// GL_n), on the base's table.
struct CharacteristicMap {
  std::vector<Polynomial> values;
};

struct FlagOptions {
  Mode mode = Mode::chow;
  int truncation = 6;
  ChernConvention convention = ChernConvention::roots;
};

// The group-theoretic data a flag computation needs, built once and shared.
struct GroupData {
  std::shared_ptr<const RootDatum> datum;
  WeylGroup weyl;
  InvariantSet invariants;
  std::shared_ptr<const CoinvariantAlgebra> lambda;
};

GroupData make_group_data(RootType type, int rank);

// Invariant i as imposed in the relations for the given mode: sigma_i itself
// for GL and in Chow mode, sigma_i(log x) otherwise (W acts through the
// formal group law there). Lives on `table`.
Polynomial imposed_invariant(const GroupData& group, std::size_t i, const TablePtr& table, Mode mode,
                             const FormalGroupLaw& fgl, int truncation);

// base (x)_{C(G)} C(P): adjoins x1..xr, imposes sigma_i(x) - cmap(sigma_i)
// and declares the basis of Lambda^{W_P} as a free basis over the base.
// `parabolic` holds 1-based simple-root indices. Per-degree ranks are those
// of the W_P-invariant part of the full-flag ring.
RingPresentation flag_bundle_ring(const RingPresentation& base, const CharacteristicMap& cmap, const GroupData& group,
                                  const std::vector<int>& parabolic, const FlagOptions& options);

// flag_bundle_ring with every characteristic class zero; records the tensor
// decomposition base (x) Lambda^(P).
RingPresentation trivial_flag_ring(const RingPresentation& base, const GroupData& group,
                                   const std::vector<int>& parabolic, const FlagOptions& options);

struct PrincipalBundleSpec {
  RingPresentation base;
  // First Chern classes of the basis characters, in order.
  std::vector<std::pair<std::string, Polynomial>> character_classes;
  // Generating characters in that basis. Empty: the basis characters
  // themselves generate.
  std::vector<Character> generating_characters;
};

// base / (c_1 of the generating characters). Classes of degree other than 1
// raise ParameterError.
RingPresentation principal_bundle_ring(const PrincipalBundleSpec& spec, Mode mode, int truncation);

struct RankCheck {
  std::string name;
  long expected = 0;
  long actual = 0;
  bool ok() const { return expected == actual; }
};

struct RankReport {
  long weyl_quotient = 0;  // |W| / |W_P|
  long invariant_dimension = 0;  // dim Lambda^{W_P}
  long declared = 0;
  std::vector<RankCheck> checks;

  bool ok() const;
};

// Recomputes the free rank as |W|/|W_P| and as dim Lambda^{W_P}, compares
// both with the declared basis and the rank profile with the convolution of
// the base profile by the basis degrees. Throws ConsistencyError on any
// mismatch unless `throw_on_mismatch` is false.
RankReport verify_rank(const RingPresentation& pres, const RingPresentation& base, const GroupData& group,
                       const std::vector<int>& parabolic, bool throw_on_mismatch = true);

// Rebuilds a cobordism-mode presentation with every b_i set to 0 (same
// generators, Chow-mode coefficients).
RingPresentation specialize_lazard(const RingPresentation& pres);

// Ranks over Q of L (x) R for a positively graded rank profile R, with R
// truncated at order D and L at weight D.
std::map<int, long> tensor_with_lazard(const std::map<int, long>& chow_ranks, int truncation);

// Degreewise product of rank profiles, keeping degrees <= max_degree.
std::map<int, long> convolve(const std::map<int, long>& a, const std::map<int, long>& b, int max_degree);

}  // namespace flagbord
