#include "jetham/variational.hpp"

#include <algorithm>

#include "jetham/errors.hpp"
#include "jetham/jetcalc.hpp"

namespace jetham {

namespace {

const Expr& zero_expr() {
  static const Expr zero;
  return zero;
}

int minimal_order(const Expr& density) {
  int k = 1;
  for (const auto& c : density.coordinates()) k = std::max(k, c.order());
  return k;
}

}  // namespace

LagrangianDensity::LagrangianDensity(const JetContext& ctx, Expr density, std::optional<int> declared_order)
    : ctx_(ctx), density_(std::move(density)), order_(0) {
  if (density_.any_coordinate([](const CoordinateId& c) { return c.is_momentum() || c.is_comma(); })) {
    throw DomainError("a Lagrangian density cannot contain momentum coordinates");
  }
  int minimal = minimal_order(density_);
  order_ = declared_order.value_or(minimal);
  if (order_ < 1) throw DomainError("Lagrangian order must be at least 1");
  if (order_ < minimal) {
    throw DomainError("declared order " + std::to_string(order_) + " is below the jet order " +
                      std::to_string(minimal) + " of the density");
  }
  if (ctx_.max_order() < 2 * order_) ctx_ = ctx_.with_max_order(2 * order_);
  for (const auto& c : density_.coordinates()) ctx_.check(c);
}

// ---------------------------------------------------------------------------

const Expr& CartanValuedForm::at(int alpha, const MultiIndex& I) const {
  auto it = coeffs_.find({alpha, I});
  return it == coeffs_.end() ? zero_expr() : it->second;
}

void CartanValuedForm::set(int alpha, const MultiIndex& I, Expr value) {
  if (value.is_zero()) {
    coeffs_.erase({alpha, I});
  } else {
    coeffs_[{alpha, I}] = std::move(value);
  }
}

void CartanValuedForm::add(int alpha, const MultiIndex& I, const Expr& value) {
  if (value.is_zero()) return;
  set(alpha, I, at(alpha, I) + value);
}

CartanValuedForm& CartanValuedForm::operator+=(const CartanValuedForm& b) {
  for (const auto& [key, value] : b.coeffs_) add(key.first, key.second, value);
  return *this;
}

CartanValuedForm& CartanValuedForm::operator-=(const CartanValuedForm& b) {
  for (const auto& [key, value] : b.coeffs_) add(key.first, key.second, -value);
  return *this;
}

SourceForm SourceForm::from_cartan(const CartanValuedForm& form, int m) {
  std::vector<Expr> components(static_cast<std::size_t>(m));
  for (const auto& [key, value] : form.coefficients()) {
    if (!key.second.empty()) throw DomainError("not a source form: component with |I| > 0");
    components.at(static_cast<std::size_t>(key.first)) = value;
  }
  return SourceForm(std::move(components));
}

CartanValuedForm SourceForm::as_cartan() const {
  CartanValuedForm form;
  for (std::size_t a = 0; a < components_.size(); ++a) form.set(static_cast<int>(a), {}, components_[a]);
  return form;
}

const Expr& LegendreForm::at(int alpha, const MultiIndex& I, int i) const {
  auto it = coeffs_.find({alpha, I, i});
  return it == coeffs_.end() ? zero_expr() : it->second;
}

void LegendreForm::set(int alpha, const MultiIndex& I, int i, Expr value) {
  if (static_cast<int>(I.order()) > order_) {
    throw DomainError("Legendre coefficient with |I| above the form order");
  }
  if (value.is_zero()) {
    coeffs_.erase({alpha, I, i});
  } else {
    coeffs_[{alpha, I, i}] = std::move(value);
  }
}

LegendreForm operator-(const LegendreForm& a, const LegendreForm& b) {
  LegendreForm r(std::max(a.order_, b.order_));
  r.coeffs_ = a.coeffs_;
  for (const auto& [k, v] : b.coeffs_) r.set(k.alpha, k.multi, k.index, r.at(k.alpha, k.multi, k.index) - v);
  return r;
}

// ---------------------------------------------------------------------------

SourceForm euler_lagrange(const LagrangianDensity& lag) {
  const auto& ctx = lag.context();
  std::vector<Expr> components(static_cast<std::size_t>(ctx.m()));
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    Expr e;
    for (const auto& I : multi_indices_up_to(ctx.n(), lag.order())) {
      Expr d = partial(lag.density(), CoordinateId::jet(alpha, I));
      if (d.is_zero()) continue;
      Expr term = iterated_total_derivative(d, I, ctx);
      e += I.order() % 2 == 0 ? term : -term;
    }
    components[static_cast<std::size_t>(alpha)] = std::move(e);
  }
  return SourceForm(std::move(components));
}

CartanValuedForm vertical_differential(const LagrangianDensity& lag) {
  const auto& ctx = lag.context();
  CartanValuedForm form;
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(ctx.n(), lag.order())) {
      form.set(alpha, I, partial(lag.density(), CoordinateId::jet(alpha, I)));
    }
  }
  return form;
}

CartanValuedForm horizontal_d_legendre(const LegendreForm& theta, const JetContext& ctx) {
  CartanValuedForm form;
  for (const auto& [key, value] : theta.coefficients()) {
    form.add(key.alpha, key.multi, -total_derivative(value, key.index, ctx));
    form.add(key.alpha, key.multi.with(key.index), -value);
  }
  return form;
}

LegendreConstruction legendre_construction(const LagrangianDensity& lag) {
  const auto& ctx = lag.context();
  const int l = lag.level();
  LegendreConstruction out{LegendreForm(l), {}};
  auto& theta = out.theta;
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (int k = l + 1; k >= 1; --k) {
      for (const auto& I : multi_indices_of_order(ctx.n(), k)) {
        Expr rhs = partial(lag.density(), CoordinateId::jet(alpha, I));
        if (k <= l) {
          for (int i = 0; i < ctx.n(); ++i) rhs -= total_derivative(theta.at(alpha, I, i), i, ctx);
        }
        if (rhs.is_zero()) continue;
        for (const auto& r : remove_one(I)) {
          theta.set(alpha, r.rest, r.index, rhs.scaled(ratio(r.multiplicity, k)));
        }
      }
    }
    Expr e = partial(lag.density(), CoordinateId::jet(alpha));
    for (int i = 0; i < ctx.n(); ++i) e -= total_derivative(theta.at(alpha, {}, i), i, ctx);
    out.level_zero.push_back(std::move(e));
  }
  return out;
}

LegendreForm legendre_form(const LagrangianDensity& lag) {
  auto built = legendre_construction(lag);
  SourceForm source = euler_lagrange(lag);
  if (built.level_zero != source.components()) {
    throw InternalError("Legendre recursion does not reproduce the Euler-Lagrange derivatives");
  }
  CartanValuedForm lhs = source.as_cartan() - vertical_differential(lag);
  if (lhs != horizontal_d_legendre(built.theta, lag.context())) {
    throw InternalError("Legendre form violates the first-variation identity");
  }
  return std::move(built.theta);
}

}  // namespace jetham
