#pragma once

#include <vector>

#include "jetham/equation_system.hpp"
#include "jetham/expr.hpp"

namespace jetham {

/// A way of writing I = J + (i): the remaining multiindex, the removed
/// index and the multiplicity I[i].
struct Removal {
  MultiIndex rest;
  int index;
  int multiplicity;

  friend bool operator==(const Removal&, const Removal&) = default;
};

/// Distinct removals of one index from I, ordered by removed index.
/// Multiplicities sum to |I|; the empty multiindex has none.
std::vector<Removal> remove_one(const MultiIndex& I);

/// D_i = ∂/∂x^i + u^α_{Ii} ∂/∂u^α_I on jet-side expressions. Throws
/// DomainError on momenta or comma coordinates and OrderOverflow when the
/// result leaves the context (unless it auto-extends).
Expr total_derivative(const Expr& e, int i, const JetContext& ctx);

/// D_J = D_{j1} ∘ ... ∘ D_{jk}; D_∅ is the identity.
Expr iterated_total_derivative(const Expr& e, const MultiIndex& J, const JetContext& ctx);

/// Total derivative on the momentum side, where every jet and momentum
/// coordinate y is an unknown of its own: D'_i = ∂/∂x^i + y,_i ∂/∂y.
Expr total_derivative_primed(const Expr& e, int i, const JetContext& ctx);

/// Adds D_J Φ = 0 for every row Φ and every J with 1 <= |J| <= levels.
/// Labels of new rows are "<label>/D_<J>". Jet-side systems only.
EquationSystem prolong(const EquationSystem& system, int levels);

}  // namespace jetham
