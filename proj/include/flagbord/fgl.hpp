#pragma once

#include <flagbord/poly.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flagbord {

enum class CoefficientKind { rational, lazard_truncated, user_specialized };

std::string to_string(CoefficientKind kind);

// Coefficient ring of a formal group law. Over Q the Lazard ring is the free
// polynomial ring on the logarithm coefficients b1, b2, ... with deg b_i = -i;
// the truncated ring keeps b1..bD.
struct CoefficientRing {
  CoefficientKind kind = CoefficientKind::rational;
  int truncation = 0;
  // Lazard generators, flagged as coefficient variables. Empty in Chow mode.
  std::vector<VariableTable::Variable> generators;

  static CoefficientRing rational();
  static CoefficientRing lazard(int truncation);
};

std::string lazard_generator_name(int i);

// Dimension of the weight-k part of Q[b_1..b_max_index] (partitions of k into
// parts of size at most max_index).
long lazard_dimension(int k, int max_index);

// Truncated formal group law F(u, v) = u + v + sum a_ij u^i v^j.
struct FormalGroupLaw {
  CoefficientRing ring;
  int truncation = 1;
  Polynomial law;                 // on table [u, v, ring generators]
  std::optional<Polynomial> log = std::nullopt;  // on table [t, ring generators]
  std::optional<Polynomial> exp = std::nullopt;

  // a_ij as a polynomial in the ring generators (on the law's table).
  Polynomial coefficient(int i, int j) const;
};

// Table [u, v] (or [t], [x], ...) followed by the ring generators.
TablePtr series_table(const std::vector<std::string>& names, const CoefficientRing& ring);

// Over Q[b_1..b_{D-1}] with log(t) = t + sum b_i t^{i+1}: F = exp(log u + log v).
FormalGroupLaw universal_fgl(int truncation);
FormalGroupLaw additive_fgl(int truncation);

// Substitutes numeric values for Lazard generators. Generators without a
// value are kept. Substituting all of them yields a law over Q.
FormalGroupLaw specialize(const FormalGroupLaw& fgl, const std::map<std::string, Rational>& values);

// F(p, q) truncated at order D. p and q share a table that must contain every
// ring generator used by F. Nonzero constant terms raise ParameterError.
Polynomial fgl_sum(const FormalGroupLaw& fgl, const Polynomial& p, const Polynomial& q, int truncation);

// The formal inverse i(p) with F(p, i(p)) = 0.
Polynomial formal_inverse(const FormalGroupLaw& fgl, const Polynomial& p, int truncation);

// [n](x) on the table [x, ring generators].
Polynomial n_series(const FormalGroupLaw& fgl, int n, int truncation);

struct Character {
  std::vector<int> coefficients;
};

// Table [x1..xr, ring generators] for the Chern roots of a rank-r torus.
TablePtr torus_table(int rank, const CoefficientRing& ring);
std::string root_name(int i);  // "x1", "x2", ... (1-based)

// c_1(L_chi) = [n_1](x_1) +_F ... +_F [n_r](x_r) on `table`, which must hold
// x1..xr. The class of a dual character is the formal inverse, so
// c_1(L_{-chi}) = i(c_1(L_chi)).
Polynomial chern_of_character(const FormalGroupLaw& fgl, const Character& chi, const TablePtr& table,
                              int truncation);

// Substitutes x_i -> log_F(x_i) for i = 1..rank. The law must carry a
// logarithm.
Polynomial log_transport(const FormalGroupLaw& fgl, const Polynomial& p, int rank, int truncation);

struct AxiomResiduals {
  Polynomial unit;           // F(u, 0) - u
  Polynomial commutativity;  // F(u, v) - F(v, u)
  Polynomial associativity;  // F(F(u, v), w) - F(u, F(v, w))

  bool all_zero() const { return unit.is_zero() && commutativity.is_zero() && associativity.is_zero(); }
};

// Full symbolic expansion of the axioms modulo order D + 1.
AxiomResiduals fgl_axiom_residuals(const FormalGroupLaw& fgl);

}  // namespace flagbord
