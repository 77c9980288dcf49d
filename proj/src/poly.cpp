#include <flagbord/poly.hpp>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace flagbord {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return ValidationError("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto slash = s.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits(start, s.size())) throw bad();
  } else if (!digits(start, slash) || !digits(slash + 1, s.size())) {
    throw bad();
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// VariableTable

VariableTable::VariableTable(std::vector<Variable> variables) : variables_(std::move(variables)) {
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.name.empty()) throw StructuralError("empty variable name");
    if (!seen.insert(v.name).second) throw StructuralError("duplicate variable name '" + v.name + "'");
    if (v.degree == 0) throw StructuralError("variable '" + v.name + "' has degree 0");
  }
}

std::optional<std::size_t> VariableTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i].name == name) return i;
  return std::nullopt;
}

std::size_t VariableTable::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw StructuralError("unknown variable '" + std::string(name) + "'");
  return *i;
}

int VariableTable::degree(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * variables_[i].degree;
  return d;
}

int VariableTable::order(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!variables_[i].coefficient) d += e[i] * std::abs(variables_[i].degree);
  return d;
}

int VariableTable::weight(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (variables_[i].coefficient) d += e[i] * std::abs(variables_[i].degree);
  return d;
}

int VariableTable::aux(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * variables_[i].aux;
  return d;
}

bool VariableTable::has_coefficients() const {
  return std::any_of(variables_.begin(), variables_.end(), [](const Variable& v) { return v.coefficient; });
}

bool VariableTable::positively_graded() const {
  return std::all_of(variables_.begin(), variables_.end(), [](const Variable& v) { return v.degree > 0; });
}

TablePtr make_table(std::vector<VariableTable::Variable> variables) {
  return std::make_shared<const VariableTable>(std::move(variables));
}

bool same_table(const TablePtr& a, const TablePtr& b) { return a == b || (a && b && *a == *b); }

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  int da = table->degree(a), db = table->degree(b);
  if (da != db) return da < db;
  return a < b;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(TablePtr table) : table_(std::move(table)), terms_(GradedLexLess{table_.get()}) {
  if (!table_) throw StructuralError("polynomial without a variable table");
}

Polynomial Polynomial::constant(TablePtr table, const Rational& c) {
  Polynomial p(std::move(table));
  p.add_term(Exponents(p.table_->size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(TablePtr table, std::string_view name) {
  Polynomial p(std::move(table));
  Exponents e(p.table_->size(), 0);
  e[p.table_->index(name)] = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(TablePtr table, Exponents e, const Rational& c) {
  Polynomial p(std::move(table));
  if (e.size() != p.table_->size()) throw StructuralError("exponent vector length does not match table");
  p.add_term(e, c);
  return p;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Exponents(table_->size(), 0)); }

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = table_->degree(terms_.begin()->first);
  if (table_->degree(terms_.rbegin()->first) != d) return std::nullopt;
  return d;
}

bool Polynomial::is_homogeneous() const { return terms_.empty() || degree().has_value(); }

std::optional<int> Polynomial::aux() const {
  std::optional<int> a;
  for (const auto& [e, c] : terms_) {
    int x = table_->aux(e);
    if (a && *a != x) return std::nullopt;
    a = x;
  }
  return a;
}

int Polynomial::min_order() const {
  int m = kUnbounded;
  for (const auto& [e, c] : terms_) m = std::min(m, table_->order(e));
  return m;
}

int Polynomial::max_order() const {
  int m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, table_->order(e));
  return m;
}

void Polynomial::check_table(const Polynomial& other) const {
  if (!same_table(table_, other.table_)) throw StructuralError("polynomials live on different variable tables");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_table(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_table(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

namespace {

Polynomial multiply(const Polynomial& p, const Polynomial& q, int max_order, int max_weight) {
  if (!same_table(p.table(), q.table())) throw StructuralError("polynomials live on different variable tables");
  const auto& table = *p.table();
  Polynomial out(p.table());
  if (p.is_zero() || q.is_zero()) return out;

  struct Term {
    const Exponents* e;
    const Rational* c;
    int order;
    int weight;
  };
  auto collect = [&](const Polynomial& x) {
    std::vector<Term> v;
    v.reserve(x.size());
    for (const auto& [e, c] : x.terms()) v.push_back({&e, &c, table.order(e), table.weight(e)});
    return v;
  };
  auto pt = collect(p), qt = collect(q);

  Exponents e(table.size());
  for (const auto& a : pt) {
    if (a.order > max_order || a.weight > max_weight) continue;
    for (const auto& b : qt) {
      if (a.order + b.order > max_order || a.weight + b.weight > max_weight) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = (*a.e)[i] + (*b.e)[i];
      out.add_term(e, (*a.c) * (*b.c));
    }
  }
  return out;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b, kUnbounded, kUnbounded); }

bool Polynomial::operator==(const Polynomial& other) const {
  return same_table(table_, other.table_) && terms_ == other.terms_;
}

std::string monomial_to_string(const VariableTable& table, const Exponents& e) {
  // Coefficient variables first: "b1*u*v".
  std::string s;
  for (bool coefficients : {true, false})
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0 || table[i].coefficient != coefficients) continue;
      if (!s.empty()) s += '*';
      s += table[i].name;
      if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
  return s.empty() ? "1" : s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<const Exponents*, const Rational*>> order;
  for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
  GradedLexLess less{table_.get()};
  std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    int oa = table_->order(*a.first), ob = table_->order(*b.first);
    if (oa != ob) return oa < ob;
    return less(*b.first, *a.first);
  });

  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : order) {
    Rational mag = abs(*c);
    bool negative = *c < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool is_constant = std::all_of(e->begin(), e->end(), [](int x) { return x == 0; });
    if (is_constant) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << monomial_to_string(*table_, *e);
    } else {
      out << mag.get_str() << '*' << monomial_to_string(*table_, *e);
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Free functions

Polynomial poly_mul(const Polynomial& p, const Polynomial& q, int max_order) {
  return multiply(p, q, max_order, kUnbounded);
}

Polynomial poly_pow(const Polynomial& p, int n, int max_order) {
  if (n < 0) throw ParameterError("negative polynomial power");
  Polynomial result = truncate(Polynomial::constant(p.table(), 1), max_order);
  Polynomial base = truncate(p, max_order);
  while (n > 0) {
    if (n & 1) result = poly_mul(result, base, max_order);
    n >>= 1;
    if (n) base = poly_mul(base, base, max_order);
  }
  return result;
}

Polynomial truncate(const Polynomial& p, int max_order, int max_weight) {
  Polynomial out(p.table());
  for (const auto& [e, c] : p.terms())
    if (p.table()->order(e) <= max_order && p.table()->weight(e) <= max_weight) out.add_term(e, c);
  return out;
}

Polynomial homogeneous_part(const Polynomial& p, int degree) {
  Polynomial out(p.table());
  for (const auto& [e, c] : p.terms())
    if (p.table()->degree(e) == degree) out.add_term(e, c);
  return out;
}

Polynomial poly_substitute(const Polynomial& p, const Substitution& sigma, int max_order, int max_weight) {
  const auto& source = *p.table();
  for (const auto& [name, value] : sigma) {
    if (!source.find(name)) throw StructuralError("substitution for unknown variable '" + name + "'");
  }
  TablePtr target = sigma.empty() ? p.table() : sigma.begin()->second.table();
  for (const auto& [name, value] : sigma)
    if (!same_table(value.table(), target))
      throw StructuralError("substituted polynomials live on different variable tables");

  // images[i] is the image of source variable i; powers are cached lazily.
  std::vector<std::optional<Polynomial>> images(source.size());
  std::vector<std::vector<Polynomial>> powers(source.size());
  auto image = [&](std::size_t i) -> const Polynomial& {
    if (!images[i]) {
      auto it = sigma.find(source[i].name);
      if (it != sigma.end()) {
        images[i] = it->second;
      } else {
        if (!target->find(source[i].name))
          throw StructuralError("variable '" + source[i].name + "' has no counterpart in the target table");
        images[i] = Polynomial::variable(target, source[i].name);
      }
    }
    return *images[i];
  };
  auto power = [&](std::size_t i, int k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (static_cast<int>(cache.size()) <= k)
      cache.push_back(multiply(cache.back(), image(i), max_order, max_weight));
    return cache[k];
  };

  Polynomial out(target);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
      if (e[i] != 0) term = multiply(term, power(i, e[i]), max_order, max_weight);
    out += truncate(term, max_order, max_weight);
  }
  return out;
}

Polynomial rebase(const Polynomial& p, const TablePtr& target) {
  if (same_table(p.table(), target)) {
    Polynomial out(target);
    for (const auto& [e, c] : p.terms()) out.add_term(e, c);
    return out;
  }
  const auto& source = *p.table();
  std::vector<std::optional<std::size_t>> map(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) map[i] = target->find(source[i].name);
  Polynomial out(target);
  Exponents f(target->size());
  for (const auto& [e, c] : p.terms()) {
    std::fill(f.begin(), f.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) throw StructuralError("variable '" + source[i].name + "' has no counterpart in the target table");
      f[*map[i]] = e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

Polynomial derivative(const Polynomial& p, std::size_t variable) {
  if (variable >= p.table()->size()) throw StructuralError("derivative variable out of range");
  Polynomial out(p.table());
  for (const auto& [e, c] : p.terms()) {
    if (e[variable] == 0) continue;
    Exponents f = e;
    --f[variable];
    out.add_term(f, c * e[variable]);
  }
  return out;
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.table()->size()) throw StructuralError("evaluation point has wrong length");
  Rational total = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      pw.canonicalize();
      t *= pw;
    }
    total += t;
  }
  return total;
}

namespace {

void enumerate(const VariableTable& table, std::size_t i, Exponents& e, int order, int weight,
               const MonomialBounds& bounds, std::optional<int> degree, std::vector<Exponents>& out) {
  if (i == table.size()) {
    if (degree && table.degree(e) != *degree) return;
    if (bounds.aux && table.aux(e) != *bounds.aux) return;
    out.push_back(e);
    return;
  }
  const auto& v = table[i];
  int step = std::abs(v.degree);
  for (int k = 0;; ++k) {
    int o = order + (v.coefficient ? 0 : k * step);
    int w = weight + (v.coefficient ? k * step : 0);
    if (o > bounds.max_order || w > bounds.max_weight) break;
    e[i] = k;
    enumerate(table, i + 1, e, o, w, bounds, degree, out);
  }
  e[i] = 0;
}

MonomialBounds effective_bounds(const VariableTable& table, MonomialBounds bounds, std::optional<int> degree) {
  bool order_needed = false, weight_needed = false;
  for (const auto& v : table.variables()) (v.coefficient ? weight_needed : order_needed) = true;
  bool finite = (!order_needed || bounds.max_order < kUnbounded) && (!weight_needed || bounds.max_weight < kUnbounded);
  if (finite) return bounds;
  if (degree && table.positively_graded()) {
    if (*degree < 0) {
      bounds.max_order = -1;
      return bounds;
    }
    bounds.max_order = std::min(bounds.max_order, *degree);
    bounds.max_weight = std::min(bounds.max_weight, *degree);
    return bounds;
  }
  throw ParameterError("monomial enumeration would be infinite; supply truncation bounds");
}

}  // namespace

std::vector<Exponents> monomials_of_degree(const VariableTable& table, int degree, const MonomialBounds& bounds) {
  auto b = effective_bounds(table, bounds, degree);
  std::vector<Exponents> out;
  if (b.max_order < 0) return out;
  Exponents e(table.size(), 0);
  enumerate(table, 0, e, 0, 0, b, degree, out);
  std::sort(out.begin(), out.end(), GradedLexLess{&table});
  return out;
}

std::vector<Exponents> monomials_within(const VariableTable& table, const MonomialBounds& bounds) {
  auto b = effective_bounds(table, bounds, std::nullopt);
  std::vector<Exponents> out;
  Exponents e(table.size(), 0);
  enumerate(table, 0, e, 0, 0, b, std::nullopt, out);
  std::sort(out.begin(), out.end(), GradedLexLess{&table});
  return out;
}

}  // namespace flagbord
