#include <algorithm>

#include "jetham/errors.hpp"
#include "jetham/numeric.hpp"

namespace jetham {

namespace {

double ipow(double base, int exponent) {
  double result = 1.0;
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) result *= base;
    base *= base;
  }
  return result;
}

}  // namespace

double eval(const Expr& e, const JetSample& s) {
  double sum = 0.0;
  for (const auto& term : e.terms()) {
    double value = term.coeff.get_d();
    for (const auto& f : term.monomial.factors()) {
      auto it = s.find(f.coord);
      if (it == s.end()) throw NumericError("sample has no value for a coordinate of the expression");
      value *= ipow(it->second, f.exponent);
    }
    sum += value;
  }
  return sum;
}

CompiledExpr::CompiledExpr(const Expr& e, const std::vector<CoordinateId>& slots) {
  for (const auto& term : e.terms()) {
    CompiledTerm t{term.coeff.get_d(), {}};
    for (const auto& f : term.monomial.factors()) {
      auto it = std::find(slots.begin(), slots.end(), f.coord);
      if (it == slots.end()) throw NumericError("compiled expression needs a coordinate without a slot");
      t.powers.push_back({static_cast<std::size_t>(it - slots.begin()), f.exponent});
    }
    terms_.push_back(std::move(t));
  }
}

double CompiledExpr::operator()(const double* values) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (const auto& p : t.powers) v *= ipow(values[p.slot], p.exponent);
    sum += v;
  }
  return sum;
}

}  // namespace jetham
