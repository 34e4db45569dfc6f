#include "jetham/equation_system.hpp"

#include <algorithm>
#include <set>

#include "jetham/errors.hpp"

namespace jetham {

EquationSystem::EquationSystem(JetContext ctx, std::vector<CoordinateId> unknowns,
                               std::vector<Equation> equations)
    : ctx_(std::move(ctx)), unknowns_(std::move(unknowns)), equations_(std::move(equations)) {
  std::set<std::string> labels;
  for (const auto& u : unknowns_) ctx_.check(u);
  for (const auto& eq : equations_) {
    if (!labels.insert(eq.label).second) throw DomainError("duplicate equation label '" + eq.label + "'");
    for (const auto& c : eq.residual.coordinates()) {
      ctx_.check(c);
      if (!declares(c)) {
        throw DomainError("coordinate " + ctx_.name(c) + " in equation '" + eq.label + "' is not declared");
      }
    }
  }
}

const Equation& EquationSystem::at(std::string_view label) const {
  auto it = std::find_if(equations_.begin(), equations_.end(),
                         [&](const Equation& e) { return e.label == label; });
  if (it == equations_.end()) throw DomainError("no equation labelled '" + std::string(label) + "'");
  return *it;
}

bool EquationSystem::declares(const CoordinateId& c) const {
  auto known = [&](const CoordinateId& x) {
    return std::find(unknowns_.begin(), unknowns_.end(), x) != unknowns_.end();
  };
  if (c.is_independent()) return true;
  if (c.is_comma()) return known(c.base());
  if (known(c)) return true;
  return c.is_jet() && known(CoordinateId::jet(c.alpha()));
}

std::vector<Expr> EquationSystem::canonical_residuals() const {
  std::vector<Expr> out;
  for (const auto& eq : equations_) {
    if (!eq.residual.is_zero()) out.push_back(sign_normalized(eq.residual));
  }
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  return out;
}

bool same_up_to_sign_and_order(const EquationSystem& a, const EquationSystem& b) {
  return a.canonical_residuals() == b.canonical_residuals();
}

}  // namespace jetham
