#include "jetham/jetcalc.hpp"

#include "jetham/errors.hpp"

namespace jetham {

std::vector<Removal> remove_one(const MultiIndex& I) {
  std::vector<Removal> out;
  int previous = -1;
  for (auto v : I) {
    int i = v;
    if (i == previous) continue;
    previous = i;
    out.push_back({I.without_one(i), i, I.count(i)});
  }
  return out;
}

namespace {

void require_jet_side(const Expr& e) {
  if (e.any_coordinate([](const CoordinateId& c) { return c.is_momentum() || c.is_comma(); })) {
    throw DomainError("total derivative applied to an expression with momentum coordinates");
  }
}

}  // namespace

Expr total_derivative(const Expr& e, int i, const JetContext& ctx) {
  require_jet_side(e);
  if (i < 0 || i >= ctx.n()) throw DomainError("total derivative along an undeclared direction");
  Expr result = partial(e, CoordinateId::independent(i));
  for (const auto& c : e.coordinates()) {
    if (!c.is_jet()) continue;
    CoordinateId next = c.prolonged(i);
    ctx.check(next);
    result += partial(e, c) * Expr::variable(next);
  }
  return result;
}

Expr iterated_total_derivative(const Expr& e, const MultiIndex& J, const JetContext& ctx) {
  Expr r = e;
  for (auto j : J) r = total_derivative(r, j, ctx);
  return r;
}

Expr total_derivative_primed(const Expr& e, int i, const JetContext& ctx) {
  if (e.any_coordinate([](const CoordinateId& c) { return c.is_comma(); })) {
    throw DomainError("primed total derivative of an expression that already has comma coordinates");
  }
  if (i < 0 || i >= ctx.n()) throw DomainError("total derivative along an undeclared direction");
  Expr result = partial(e, CoordinateId::independent(i));
  for (const auto& c : e.coordinates()) {
    if (c.is_independent()) continue;
    result += partial(e, c) * Expr::variable(c.comma(i));
  }
  return result;
}

EquationSystem prolong(const EquationSystem& system, int levels) {
  if (levels < 0) throw DomainError("prolongation order must be non-negative");
  JetContext ctx = system.context();
  int needed = 0;
  for (const auto& eq : system.equations()) {
    require_jet_side(eq.residual);
    for (const auto& c : eq.residual.coordinates()) needed = std::max(needed, c.order());
  }
  needed += levels;
  if (needed > ctx.max_order()) {
    if (!ctx.auto_extend()) {
      throw OrderOverflow("prolongation needs jets of order " + std::to_string(needed) +
                          " above max_order " + std::to_string(ctx.max_order()));
    }
    ctx = ctx.with_max_order(needed);
  }
  std::vector<Equation> rows;
  for (const auto& eq : system.equations()) {
    for (const auto& J : multi_indices_up_to(ctx.n(), levels)) {
      std::string label = J.empty() ? eq.label : eq.label + "/D_" + ctx.subscript(J);
      rows.push_back({label, iterated_total_derivative(eq.residual, J, ctx)});
    }
  }
  return EquationSystem(ctx, system.unknowns(), std::move(rows));
}

}  // namespace jetham
