#include <flagbord/quotient.hpp>

#include <algorithm>

namespace flagbord {

QuotientRing::QuotientRing(TablePtr table, std::vector<Polynomial> relations, MonomialBounds bounds)
    : table_(std::move(table)), relations_(std::move(relations)), bounds_(bounds) {
  for (const auto& r : relations_) {
    if (!same_table(r.table(), table_)) throw StructuralError("relation lives on a different table");
    if (!r.is_zero() && (!r.is_homogeneous() || !r.aux()))
      throw StructuralError("relation is not homogeneous: " + r.to_string());
  }

  MonomialBounds all = bounds_;
  all.aux.reset();
  auto monomials = monomials_within(*table_, all);
  std::map<Key, std::vector<Exponents>> grouped;
  for (auto& e : monomials) {
    Key key{table_->degree(e), table_->aux(e)};
    if (bounds_.aux && key.second != *bounds_.aux) continue;
    grouped[key].push_back(std::move(e));
  }
  GradedLexLess less{table_.get()};
  for (auto& [key, basis] : grouped) {
    std::sort(basis.begin(), basis.end(), less);
    Slice s;
    s.slice.degree = key.first;
    s.slice.basis = std::move(basis);
    s.slice.echelon = Echelon(s.slice.basis.size());
    slices_.emplace(key, std::move(s));
  }

  for (const auto& r : relations_) {
    if (r.is_zero()) continue;
    Key rkey{*r.degree(), *r.aux()};
    int rmin = r.min_order();
    for (const auto& [mkey, ms] : slices_) {
      auto target = slices_.find({mkey.first + rkey.first, mkey.second + rkey.second});
      if (target == slices_.end()) continue;
      for (const auto& m : ms.slice.basis) {
        if (table_->order(m) + rmin > bounds_.max_order) continue;
        Polynomial product = truncate(Polynomial::monomial(table_, m) * r, bounds_.max_order, bounds_.max_weight);
        if (product.is_zero()) continue;
        target->second.slice.echelon.insert(target->second.slice.to_row(product));
      }
    }
  }
  for (auto& [key, s] : slices_) s.standard = s.slice.echelon.non_pivots();
}

const QuotientRing::Slice* QuotientRing::find(const Key& key) const {
  auto it = slices_.find(key);
  return it == slices_.end() ? nullptr : &it->second;
}

std::map<int, long> QuotientRing::ranks() const {
  std::map<int, long> out;
  for (const auto& [key, s] : slices_) out[key.first] += static_cast<long>(s.standard.size());
  return out;
}

std::map<QuotientRing::Key, long> QuotientRing::bigraded_ranks() const {
  std::map<Key, long> out;
  for (const auto& [key, s] : slices_) out[key] = static_cast<long>(s.standard.size());
  return out;
}

long QuotientRing::total_rank() const {
  long total = 0;
  for (const auto& [key, s] : slices_) total += static_cast<long>(s.standard.size());
  return total;
}

std::vector<QuotientRing::Key> QuotientRing::keys() const {
  std::vector<Key> out;
  for (const auto& [key, s] : slices_) out.push_back(key);
  return out;
}

std::vector<Exponents> QuotientRing::standard_monomials(const Key& key) const {
  std::vector<Exponents> out;
  if (const Slice* s = find(key))
    for (auto c : s->standard) out.push_back(s->slice.basis[c]);
  return out;
}

std::vector<Rational> QuotientRing::coordinates(const Key& key, const Polynomial& homogeneous) const {
  const Slice* s = find(key);
  if (!s) return {};
  std::vector<Rational> out(s->standard.size());
  Polynomial p = truncate(homogeneous, bounds_.max_order, bounds_.max_weight);
  if (p.is_zero()) return out;
  SparseRow rest = s->slice.echelon.reduce(s->slice.to_row(p));
  for (const auto& [c, v] : rest) {
    auto it = std::lower_bound(s->standard.begin(), s->standard.end(), c);
    out[it - s->standard.begin()] = v;
  }
  return out;
}

Polynomial QuotientRing::normal_form(const Polynomial& p) const {
  if (!same_table(p.table(), table_)) throw StructuralError("element lives on a different table");
  std::map<Key, Polynomial> pieces;
  Polynomial kept = truncate(p, bounds_.max_order, bounds_.max_weight);
  for (const auto& [e, c] : kept.terms())
    pieces.try_emplace(Key{table_->degree(e), table_->aux(e)}, table_).first->second.add_term(e, c);
  Polynomial out(table_);
  for (const auto& [key, piece] : pieces) {
    const Slice* s = find(key);
    if (!s) continue;  // outside the bounds or a filtered aux label
    out += s->slice.to_polynomial(table_, s->slice.echelon.reduce(s->slice.to_row(piece)));
  }
  return out;
}

}  // namespace flagbord
