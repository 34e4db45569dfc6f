#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "jetham/coordinate.hpp"
#include "jetham/rational.hpp"

namespace jetham {

struct Factor {
  CoordinateId coord;
  int exponent;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Product of coordinate powers; factors sorted by coordinate, exponents > 0.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(CoordinateId c, int exponent = 1);
  /// Sorts and merges; drops zero exponents.
  explicit Monomial(std::vector<Factor> factors);

  std::span<const Factor> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent_of(const CoordinateId& c) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Term order used for normal forms and rendering. The factor lists are
  /// compared from the largest coordinate downwards; a smaller coordinate
  /// sorts first, on equal coordinates a higher exponent sorts first, and a
  /// proper suffix sorts before its extensions. This prints the KdV density
  /// as u_x^3 - 1/2*u_t*u_x + 1/2*u_xx^2.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Polynomial with exact rational coefficients in canonical form: sorted by
/// the monomial order, like monomials merged, no zero coefficients. Two
/// Exprs are structurally equal iff they are equal as polynomials.
class Expr {
 public:
  Expr() = default;
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Expr variable(const CoordinateId& c);
  static Expr monomial(Monomial m, Rational coeff = 1);
  /// Normalizes an arbitrary term list.
  static Expr from_terms(std::vector<Term> terms);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rational constant_term() const;
  int degree() const;

  /// Every coordinate that occurs, in coordinate order.
  std::set<CoordinateId> coordinates() const;
  bool depends_on(const CoordinateId& c) const;
  bool any_coordinate(const std::function<bool(const CoordinateId&)>& pred) const;
  /// Highest total degree in coordinates satisfying pred.
  int degree_in(const std::function<bool(const CoordinateId&)>& pred) const;

  Expr& operator+=(const Expr& b);
  Expr& operator-=(const Expr& b);
  Expr& operator*=(const Expr& b);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  Expr scaled(const Rational& c) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::vector<Term> terms_;
};

Expr pow(const Expr& base, unsigned exponent);

/// Total order on canonical expressions (term by term).
std::strong_ordering compare(const Expr& a, const Expr& b);

/// Formal partial derivative; distinct coordinates are independent symbols.
Expr partial(const Expr& e, const CoordinateId& c);

/// Simultaneous substitution followed by normalization.
Expr substitute(const Expr& e, const std::map<CoordinateId, Expr>& bindings);

/// Overall sign fixed so that the greatest monomial has a positive
/// coefficient. Used to compare equations "up to sign".
Expr sign_normalized(const Expr& e);

/// Coefficient of `c` when e is viewed as affine in the coordinates selected
/// by pred: e = sum_c coeff_c * c + rest. Throws DomainError if e is not
/// affine in those coordinates.
std::map<CoordinateId, Expr> linear_coefficients(
    const Expr& e, const std::function<bool(const CoordinateId&)>& pred, Expr* rest);

}  // namespace jetham
