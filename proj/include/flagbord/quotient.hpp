#pragma once

#include <flagbord/linalg.hpp>

#include <map>
#include <utility>
#include <vector>

namespace flagbord {

// Q[table] / (relations) restricted to monomials within `bounds`.
//
// Monomials beyond the bounds are set to zero, which is again an ideal since
// order and weight are additive and never negative. The quotient is
// assembled slice by slice, keyed by (degree, aux); the ideal slice is the
// span of all truncated products m * r with m a monomial and r a relation.
class QuotientRing {
 public:
  using Key = std::pair<int, int>;  // (degree, aux)

  // Relations must be homogeneous in degree and aux; StructuralError
  // otherwise.
  QuotientRing(TablePtr table, std::vector<Polynomial> relations, MonomialBounds bounds);

  const TablePtr& table() const { return table_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const MonomialBounds& bounds() const { return bounds_; }

  std::map<int, long> ranks() const;
  std::map<Key, long> bigraded_ranks() const;
  long total_rank() const;

  std::vector<Key> keys() const;
  std::vector<Exponents> standard_monomials(const Key& key) const;

  // Canonical representative: each (degree, aux) piece reduced to a
  // combination of standard monomials; terms outside the bounds dropped.
  Polynomial normal_form(const Polynomial& p) const;
  bool reduces_to_zero(const Polynomial& p) const { return normal_form(p).is_zero(); }

  // Coordinates of a homogeneous element in the standard monomials of its
  // slice; an empty vector for slices that do not exist.
  std::vector<Rational> coordinates(const Key& key, const Polynomial& homogeneous) const;

 private:
  struct Slice {
    DegreeSlice slice;
    std::vector<std::size_t> standard;  // non-pivot columns
  };

  const Slice* find(const Key& key) const;

  TablePtr table_;
  std::vector<Polynomial> relations_;
  MonomialBounds bounds_;
  std::map<Key, Slice> slices_;
};

}  // namespace flagbord
