#include "paretoelim/polyring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "paretoelim/errors.hpp"

namespace paretoelim {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::decision: return "decision";
    case Role::weight: return "weight";
    case Role::multiplier: return "multiplier";
    case Role::objective: return "objective";
  }
  return "decision";
}

Role role_from_string(std::string_view text) {
  if (text == "decision") return Role::decision;
  if (text == "weight") return Role::weight;
  if (text == "multiplier") return Role::multiplier;
  if (text == "objective") return Role::objective;
  throw InvalidArgument("unknown variable role '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// VariableSpace

VariableSpace::VariableSpace(std::vector<std::string> names, std::vector<Role> roles)
    : names_(std::move(names)), roles_(std::move(roles)) {
  if (names_.size() != roles_.size())
    throw InvalidArgument("variable space: names and roles differ in length");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InvalidArgument("variable space: empty variable name");
    if (!lookup_.emplace(names_[i], i).second)
      throw InvalidArgument("variable space: duplicate variable '" + names_[i] + "'");
  }
}

SpacePtr VariableSpace::create(std::vector<std::string> names, std::vector<Role> roles) {
  return SpacePtr(new VariableSpace(std::move(names), std::move(roles)));
}

SpacePtr VariableSpace::create(std::vector<std::string> names, Role role) {
  std::vector<Role> roles(names.size(), role);
  return create(std::move(names), std::move(roles));
}

std::optional<std::size_t> VariableSpace::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t VariableSpace::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InvalidArgument("unknown variable '" + std::string(name) + "'");
}

std::vector<std::size_t> VariableSpace::indices_with_role(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roles_.size(); ++i)
    if (roles_[i] == role) out.push_back(i);
  return out;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Monomials

Monomial Monomial::unit(std::size_t nvars, std::size_t var, Exponent power) {
  Monomial m(nvars);
  m.exps_.at(var) = power;
  return m;
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

bool GradedOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t monomial_count(std::size_t nvars, int d) {
  if (d < 0) return 0;
  return static_cast<std::size_t>(binomial(nvars + d, static_cast<std::uint64_t>(d)));
}

namespace {

void fill_degree(std::size_t var, int remaining, Monomial& cur, std::vector<Monomial>& out) {
  const std::size_t n = cur.size();
  if (var + 1 == n) {
    cur[var] = static_cast<Exponent>(remaining);
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = static_cast<Exponent>(e);
    fill_degree(var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  out.reserve(static_cast<std::size_t>(binomial(nvars - 1 + d, nvars - 1)));
  Monomial cur(nvars);
  fill_degree(0, d, cur, out);
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  out.reserve(monomial_count(nvars, d));
  for (int k = 0; k <= d; ++k) {
    auto block = monomials_of_degree(nvars, k);
    out.insert(out.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
  }
  return out;
}

std::size_t monomial_index(const Monomial& m) {
  const std::size_t n = m.size();
  const int d = m.degree();
  if (d == 0) return 0;
  // Monomials of lower degree come first.
  std::uint64_t index = binomial(n + d - 1, n);
  // Within the degree block, count monomials with the same prefix and a
  // larger exponent at position i (hockey-stick identity).
  std::uint64_t remaining = static_cast<std::uint64_t>(d);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::uint64_t e = m[i];
    if (remaining > e) {
      const std::uint64_t rest = n - 1 - i;
      index += binomial(remaining - e - 1 + rest, rest);
    }
    remaining -= e;
  }
  return static_cast<std::size_t>(index);
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw InvalidArgument("polynomial needs a variable space");
}

Polynomial::Polynomial(SpacePtr space, TermMap terms) : Polynomial(std::move(space)) {
  for (auto& [m, c] : terms) {
    if (m.size() != space_->size())
      throw InvalidArgument("monomial length does not match the variable space");
    if (c != 0.0) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::constant(SpacePtr space, double value) {
  Polynomial p(std::move(space));
  if (value != 0.0) p.terms_.emplace(Monomial(p.space_->size()), value);
  return p;
}

Polynomial Polynomial::variable(SpacePtr space, std::string_view name) {
  const std::size_t i = space->index(name);
  return variable(std::move(space), i);
}

Polynomial Polynomial::variable(SpacePtr space, std::size_t index) {
  Polynomial p(std::move(space));
  if (index >= p.space_->size()) throw InvalidArgument("variable index out of range");
  p.terms_.emplace(Monomial::unit(p.space_->size(), index), 1.0);
  return p;
}

Polynomial Polynomial::monomial(SpacePtr space, Monomial m, double coeff) {
  Polynomial p(std::move(space));
  if (m.size() != p.space_->size()) throw InvalidArgument("monomial length does not match the variable space");
  if (coeff != 0.0) p.terms_.emplace(std::move(m), coeff);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // The term map is graded, so the last key has maximal degree.
  return terms_.rbegin()->first.degree();
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double best = 0.0;
  for (const auto& [m, c] : terms_) best = std::max(best, std::abs(c));
  return best;
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] > 0; });
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != space_->size())
    throw InvalidArgument("evaluation point has " + std::to_string(point.size()) + " entries, space has " +
                          std::to_string(space_->size()));
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (Exponent k = 0; k < m[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

double Polynomial::evaluate(const std::map<std::string, double>& point) const {
  std::vector<double> dense(space_->size(), 0.0);
  std::vector<bool> assigned(space_->size(), false);
  for (const auto& [name, value] : point) {
    if (auto i = space_->find(name)) {
      dense[*i] = value;
      assigned[*i] = true;
    }
  }
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!assigned[i] && involves(i))
      throw InvalidArgument("missing assignment for variable '" + space_->name(i) + "'");
  return evaluate(dense);
}

Polynomial Polynomial::pruned(double rel_tol) const {
  const double cut = rel_tol * max_abs_coefficient();
  Polynomial out(space_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) >= cut && c != 0.0) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

namespace {

void require_same_space(const Polynomial& a, const Polynomial& b) {
  if (!same_space(a.space(), b.space())) throw InvalidArgument("polynomials live in different variable spaces");
}

Polynomial::TermMap combine(const Polynomial::TermMap& a, const Polynomial::TermMap& b, double sign) {
  Polynomial::TermMap out = a;
  for (const auto& [m, c] : b) out[m] += sign * c;
  return out;
}

}  // namespace

Polynomial add(const Polynomial& a, const Polynomial& b, double prune_rel) {
  require_same_space(a, b);
  return Polynomial(a.space(), combine(a.terms(), b.terms(), 1.0)).pruned(prune_rel);
}

Polynomial subtract(const Polynomial& a, const Polynomial& b, double prune_rel) {
  require_same_space(a, b);
  return Polynomial(a.space(), combine(a.terms(), b.terms(), -1.0)).pruned(prune_rel);
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, double prune_rel) {
  require_same_space(a, b);
  Polynomial::TermMap out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out[ma * mb] += ca * cb;
  return Polynomial(a.space(), std::move(out)).pruned(prune_rel);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) { return *this = add(*this, other); }
Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this = subtract(*this, other); }
Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = multiply(*this, other); }

Polynomial& Polynomial::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator+(Polynomial a, double c) {
  return add(a, Polynomial::constant(a.space(), c));
}

bool Polynomial::operator==(const Polynomial& other) const {
  return same_space(space_, other.space_) && terms_ == other.terms_;
}

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.space(), 1.0);
  for (unsigned i = 0; i < exponent; ++i) result = multiply(result, p);
  return result;
}

Polynomial differentiate(const Polynomial& p, std::size_t var) {
  if (var >= p.space()->size()) throw InvalidArgument("differentiate: variable index out of range");
  Polynomial::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    out[dm] += c * m[var];
  }
  return Polynomial(p.space(), std::move(out));
}

Polynomial differentiate(const Polynomial& p, std::string_view var) {
  return differentiate(p, p.space()->index(var));
}

Polynomial embed(const Polynomial& p, const SpacePtr& target) {
  const auto& src = *p.space();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->find(src.name(i));
  Polynomial::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    Monomial tm(target->size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!map[i]) throw InvalidArgument("embed: variable '" + src.name(i) + "' missing from target space");
      tm[*map[i]] = m[i];
    }
    out[tm] += c;
  }
  return Polynomial(target, std::move(out));
}

Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value) {
  require_same_space(p, value);
  Polynomial out(p.space());
  std::vector<Polynomial> powers{Polynomial::constant(p.space(), 1.0)};
  for (const auto& [m, c] : p.terms()) {
    while (powers.size() <= m[var]) powers.push_back(multiply(powers.back(), value));
    Monomial rest = m;
    rest[var] = 0;
    out = add(out, multiply(Polynomial::monomial(p.space(), rest, c), powers[m[var]]));
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  const auto& space = *p.space();
  for (const auto& [m, c] : p.terms()) {
    double mag = c;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      mag = std::abs(c);
    }
    first = false;
    const bool constant = m.is_constant();
    if (constant || mag != 1.0) {
      os << mag;
      if (!constant) os << '*';
    } else if (mag == -1.0) {
      os << '-';
    }
    bool first_var = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_var) os << '*';
      first_var = false;
      os << space.name(i);
      if (m[i] > 1) os << '^' << m[i];
    }
  }
  return os.str();
}

nlohmann::json to_json(const Polynomial& p) {
  auto terms = nlohmann::json::array();
  const auto& space = *p.space();
  for (const auto& [m, c] : p.terms()) {
    auto mono = nlohmann::json::object();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) mono[space.name(i)] = m[i];
    terms.push_back({{"coeff", c}, {"monomial", mono}});
  }
  return terms;
}

Polynomial polynomial_from_json(const nlohmann::json& terms, const SpacePtr& space) {
  if (!terms.is_array()) throw SchemaError("polynomial must be a term list (JSON array)");
  Polynomial::TermMap out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    const std::string where = "term " + std::to_string(k);
    if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_number())
      throw SchemaError(where + ": expected {\"coeff\": <number>, \"monomial\": {...}}");
    Monomial m(space->size());
    if (t.contains("monomial")) {
      const auto& mono = t["monomial"];
      if (!mono.is_object()) throw SchemaError(where + ": 'monomial' must be an object");
      for (const auto& [name, e] : mono.items()) {
        auto idx = space->find(name);
        if (!idx) throw SchemaError(where + ": undeclared variable '" + name + "'");
        if (!e.is_number_integer() || e.get<long long>() < 0)
          throw SchemaError(where + ": exponent of '" + name + "' must be a nonnegative integer");
        m[*idx] = static_cast<Exponent>(e.get<long long>());
      }
    }
    out[m] += t["coeff"].get<double>();
  }
  return Polynomial(space, std::move(out));
}

}  // namespace paretoelim
