#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jetham/expr.hpp"

namespace jetham {

/// One row `residual = 0`.
struct Equation {
  std::string label;
  Expr residual;
};

/// Ordered list of labelled residuals with declared unknowns.
///
/// A coordinate may occur in a residual when it is an independent variable,
/// a declared unknown, a jet u^α_I of a declared dependent u^α, or the comma
/// derivative y,_j of a declared unknown y.
class EquationSystem {
 public:
  EquationSystem(JetContext ctx, std::vector<CoordinateId> unknowns, std::vector<Equation> equations);

  const JetContext& context() const { return ctx_; }
  const std::vector<CoordinateId>& unknowns() const { return unknowns_; }
  const std::vector<Equation>& equations() const { return equations_; }
  std::size_t size() const { return equations_.size(); }

  /// Throws DomainError when no row has this label.
  const Equation& at(std::string_view label) const;
  bool declares(const CoordinateId& c) const;

  /// Residuals with sign fixed, sorted, zero rows dropped. Two systems that
  /// agree up to row order and per-row sign have equal canonical residuals.
  std::vector<Expr> canonical_residuals() const;

 private:
  JetContext ctx_;
  std::vector<CoordinateId> unknowns_;
  std::vector<Equation> equations_;
};

/// Row-wise comparison up to sign and order.
bool same_up_to_sign_and_order(const EquationSystem& a, const EquationSystem& b);

}  // namespace jetham
