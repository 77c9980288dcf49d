#pragma once

// Independent recomputations used to cross-check the main routes. Nothing in
// here is called by the main constructions.

#include <flagbord/bundle.hpp>

#include <map>
#include <utility>
#include <vector>

namespace flagbord {

// a_ij of the universal law for i + j <= D, found degree by degree by
// solving commutativity and associativity as a linear system in the
// unknowns of that degree, normalized by a_{n-1,1} = [u^{n-1}] 1/log'(u).
// Values live on series_table({"u", "v"}, CoefficientRing::lazard(D)).
std::map<std::pair<int, int>, Polynomial> lazard_coefficients_by_constraints(int truncation);

// exp as the compositional inverse of log by Lagrange inversion:
// [t^n] exp = (1/n) [z^(n-1)] (z / log z)^n. On series_table({"t"}, lazard(D)).
Polynomial exp_by_lagrange_inversion(int truncation);

// dim Lambda_d for d = 0..max_degree from Molien's formula:
// Hilb(Lambda) = 1 / ((1 - t)^r * (1/|W|) sum_w 1/det(1 - t w)).
std::vector<long> molien_dimensions(const WeylGroup& weyl, int max_degree);

// dim S_d - rank(sum_i sigma_i S_{d - d_i}) with the span built directly as a
// dense matrix, for d = 0..max_degree.
std::vector<long> kernel_dimensions(const InvariantSet& invariants, int max_degree);

long rank_by_weyl_quotient(const RootDatum& datum, const std::vector<int>& parabolic);

// GL_n partial flags in Chow mode presented directly: one block of
// elementary symmetric generators per Levi factor, with the product of the
// block total classes equal to 1 + c_1 + ... + c_n.
std::map<int, long> gl_partial_flag_ranks(const RingPresentation& base, const CharacteristicMap& cmap, int n,
                                          const std::vector<int>& parabolic, int truncation);

// Ranks of base / (c) as dim X_d - dim(sum_j c_j X_{d-1}) inside the base.
std::map<int, long> principal_ranks_by_localization(const PrincipalBundleSpec& spec);

}  // namespace flagbord
