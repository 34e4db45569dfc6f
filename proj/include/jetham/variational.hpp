#pragma once

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jetham/expr.hpp"

namespace jetham {

/// L d^n x with a declared order l+1. The declared order may exceed the
/// highest jet order that actually occurs; constructions downstream depend
/// on the declared value.
class LagrangianDensity {
 public:
  /// Throws DomainError when L has momentum coordinates, or when a jet in L
  /// exceeds the declared order. Without a declared order the smallest
  /// admissible one (at least 1) is used. The stored context admits jets up
  /// to order 2(l+1), which the Euler-Lagrange operator needs.
  LagrangianDensity(const JetContext& ctx, Expr density, std::optional<int> declared_order = std::nullopt);

  const JetContext& context() const { return ctx_; }
  const Expr& density() const { return density_; }
  /// l + 1.
  int order() const { return order_; }
  /// l, the order of its Legendre forms.
  int level() const { return order_ - 1; }

 private:
  JetContext ctx_;
  Expr density_;
  int order_;
};

/// Coefficients (α, I) -> Expr of an element of CΛ¹ ⊗ Λ̄ⁿ in the basis
/// (du^α_I - u^α_{Ii} dx^i) ⊗ dⁿx. Absent keys are zero.
class CartanValuedForm {
 public:
  using Key = std::pair<int, MultiIndex>;

  const Expr& at(int alpha, const MultiIndex& I) const;
  void set(int alpha, const MultiIndex& I, Expr value);
  void add(int alpha, const MultiIndex& I, const Expr& value);
  const std::map<Key, Expr>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  CartanValuedForm& operator+=(const CartanValuedForm& b);
  CartanValuedForm& operator-=(const CartanValuedForm& b);
  friend CartanValuedForm operator+(CartanValuedForm a, const CartanValuedForm& b) { return a += b; }
  friend CartanValuedForm operator-(CartanValuedForm a, const CartanValuedForm& b) { return a -= b; }
  friend bool operator==(const CartanValuedForm&, const CartanValuedForm&) = default;

 private:
  std::map<Key, Expr> coeffs_;
};

/// Element of the source-form submodule: only |I| = 0 components.
class SourceForm {
 public:
  explicit SourceForm(std::vector<Expr> components) : components_(std::move(components)) {}
  /// Throws DomainError when `form` has a component with |I| > 0.
  static SourceForm from_cartan(const CartanValuedForm& form, int m);

  const Expr& component(int alpha) const { return components_.at(static_cast<std::size_t>(alpha)); }
  const std::vector<Expr>& components() const { return components_; }
  CartanValuedForm as_cartan() const;

  friend bool operator==(const SourceForm&, const SourceForm&) = default;

 private:
  std::vector<Expr> components_;
};

/// ϑ = ϑ_α^{I.i} (du^α_I - u^α_{Ii} dx^i) ⊗ d^{n-1}x_i with |I| <= order.
class LegendreForm {
 public:
  struct Key {
    int alpha;
    MultiIndex multi;
    int index;
    friend bool operator==(const Key&, const Key&) = default;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  explicit LegendreForm(int order) : order_(order) {}

  int order() const { return order_; }
  const Expr& at(int alpha, const MultiIndex& I, int i) const;
  /// Throws DomainError when |I| > order.
  void set(int alpha, const MultiIndex& I, int i, Expr value);
  const std::map<Key, Expr>& coefficients() const { return coeffs_; }

  friend LegendreForm operator-(const LegendreForm& a, const LegendreForm& b);
  friend bool operator==(const LegendreForm&, const LegendreForm&) = default;

 private:
  int order_;
  std::map<Key, Expr> coeffs_;
};

/// E_α = Σ_I (-1)^{|I|} D_I ∂L/∂u^α_I, each unordered I counted once.
SourceForm euler_lagrange(const LagrangianDensity& lag);

/// d^V L: coefficient at (α, I) is ∂L/∂u^α_I.
CartanValuedForm vertical_differential(const LagrangianDensity& lag);

/// d̄ϑ: coefficient at (α, I) is -Σ_i D_i ϑ_α^{I.i} - Σ_{(J,i): Ji = I} ϑ_α^{J.i},
/// the second sum running over distinct removals without multiplicity.
CartanValuedForm horizontal_d_legendre(const LegendreForm& theta, const JetContext& ctx);

/// Result of the top-down construction, before and after self-checks.
struct LegendreConstruction {
  LegendreForm theta;
  /// ∂L/∂u^α - Σ_i D_i ϑ_α^{∅.i}, the source form produced by the recursion.
  std::vector<Expr> level_zero;
};

/// Runs the recursion without verification.
LegendreConstruction legendre_construction(const LagrangianDensity& lag);

/// Canonical Legendre form of order l. Each level-k equation
///   Σ_{(J,i): Ji=I} ϑ^{J.i} = ∂^I L - Σ_i D_i ϑ^{I.i}
/// is solved with weights I[i]/|I|. Verified against euler_lagrange and the
/// first-variation identity; a mismatch throws InternalError.
LegendreForm legendre_form(const LagrangianDensity& lag);

}  // namespace jetham
