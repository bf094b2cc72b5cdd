#pragma once

// Sparse multivariate polynomials over a named, ordered variable space.
//
// Monomials are ordered by total degree first and lexicographically within a
// degree, following the variable order of the space (the first variable is the
// most significant). With the role ordering used throughout the library
// (decisions, weights, multipliers, objectives) this reproduces the Macaulay
// column layout 1, x1, ..., w1, ..., s1, s2, x1^2, x1*x2, ...

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace paretoelim {

enum class Role { decision, weight, multiplier, objective };

std::string_view to_string(Role role);
Role role_from_string(std::string_view text);

class VariableSpace;
using SpacePtr = std::shared_ptr<const VariableSpace>;

/// Ordered list of uniquely named variables, each carrying one role.
/// Immutable once created; share it through SpacePtr.
class VariableSpace {
 public:
  static SpacePtr create(std::vector<std::string> names, std::vector<Role> roles);
  /// Every variable gets the same role.
  static SpacePtr create(std::vector<std::string> names, Role role);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  Role role(std::size_t i) const { return roles_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws InvalidArgument for an unknown name.
  std::size_t index(std::string_view name) const;
  std::vector<std::size_t> indices_with_role(Role role) const;

  bool operator==(const VariableSpace& other) const {
    return names_ == other.names_ && roles_ == other.roles_;
  }

 private:
  VariableSpace(std::vector<std::string> names, std::vector<Role> roles);

  std::vector<std::string> names_;
  std::vector<Role> roles_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);

using Exponent = std::uint16_t;

/// Exponent vector, one entry per variable of the owning space.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial unit(std::size_t nvars, std::size_t var, Exponent power = 1);

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  std::span<const Exponent> exponents() const { return exps_; }

  int degree() const;
  bool is_constant() const { return degree() == 0; }

  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Exponent> exps_;
};

/// Canonical term order: strictly increasing total degree, then lexicographic
/// with larger exponents on earlier variables first. Returns true when `a`
/// comes before `b`.
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(nvars + d, d).
std::size_t monomial_count(std::size_t nvars, int d);
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d);
/// All monomials of total degree <= d in canonical order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, int d);
/// Position of `m` in monomials_up_to(m.size(), d) for any d >= m.degree().
std::size_t monomial_index(const Monomial& m);

/// Relative pruning threshold applied after arithmetic.
inline constexpr double kDefaultPruneTolerance = 1e-14;

class Polynomial {
 public:
  using TermMap = std::map<Monomial, double, GradedOrder>;

  explicit Polynomial(SpacePtr space);
  /// Zero coefficients are dropped; no relative pruning.
  Polynomial(SpacePtr space, TermMap terms);

  static Polynomial constant(SpacePtr space, double value);
  static Polynomial variable(SpacePtr space, std::string_view name);
  static Polynomial variable(SpacePtr space, std::size_t index);
  static Polynomial monomial(SpacePtr space, Monomial m, double coeff = 1.0);

  const SpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  double coefficient(const Monomial& m) const;
  double max_abs_coefficient() const;
  bool involves(std::size_t var) const;

  /// `point` holds one value per space variable, in space order.
  double evaluate(std::span<const double> point) const;
  /// Throws InvalidArgument if a variable occurring in the polynomial is unassigned.
  double evaluate(const std::map<std::string, double>& point) const;

  /// Drops terms below rel_tol * max |coefficient|.
  Polynomial pruned(double rel_tol = kDefaultPruneTolerance) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(double c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, double c) { return a *= c; }
  friend Polynomial operator*(double c, Polynomial a) { return a *= c; }
  friend Polynomial operator+(Polynomial a, double c);
  friend Polynomial operator-(Polynomial a, double c) { return std::move(a) + (-c); }
  friend Polynomial operator+(double c, Polynomial a) { return std::move(a) + c; }
  friend Polynomial operator-(double c, const Polynomial& a) { return (-a) + c; }

  /// Exact term-map equality (same space, same monomials, identical coefficients).
  bool operator==(const Polynomial& other) const;

 private:
  SpacePtr space_;
  TermMap terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b, double prune_rel = kDefaultPruneTolerance);
Polynomial subtract(const Polynomial& a, const Polynomial& b, double prune_rel = kDefaultPruneTolerance);
Polynomial multiply(const Polynomial& a, const Polynomial& b, double prune_rel = kDefaultPruneTolerance);
Polynomial pow(const Polynomial& p, unsigned exponent);

Polynomial differentiate(const Polynomial& p, std::size_t var);
Polynomial differentiate(const Polynomial& p, std::string_view var);

/// Re-express `p` over `target`, matching variables by name.
Polynomial embed(const Polynomial& p, const SpacePtr& target);
/// Replace variable `var` by `value` (same space).
Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value);

std::string to_string(const Polynomial& p);

/// Term-list form: [{"coeff": c, "monomial": {"x1": 2, ...}}, ...].
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& terms, const SpacePtr& space);

}  // namespace paretoelim
