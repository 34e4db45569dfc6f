#include "jetham/pdham.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "jetham/errors.hpp"
#include "jetham/jetcalc.hpp"

namespace jetham {

MomentumContext::MomentumContext(JetContext jets, int level) : jets_(std::move(jets)), level_(level) {
  if (level_ < 0) throw DomainError("momentum level must be non-negative");
}

std::vector<CoordinateId> MomentumContext::momenta() const {
  std::vector<CoordinateId> out;
  for (int alpha = 0; alpha < jets_.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(jets_.n(), level_)) {
      for (int i = 0; i < jets_.n(); ++i) out.push_back(CoordinateId::momentum(alpha, I, i));
    }
  }
  return out;
}

std::vector<CoordinateId> MomentumContext::jet_coordinates() const {
  std::vector<CoordinateId> out;
  for (int alpha = 0; alpha < jets_.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(jets_.n(), level_ + 1)) out.push_back(CoordinateId::jet(alpha, I));
  }
  return out;
}

std::vector<CoordinateId> MomentumContext::top_jets() const {
  std::vector<CoordinateId> out;
  for (int alpha = 0; alpha < jets_.m(); ++alpha) {
    for (const auto& I : multi_indices_of_order(jets_.n(), level_ + 1)) out.push_back(CoordinateId::jet(alpha, I));
  }
  return out;
}

namespace {

void require_level(const LagrangianDensity& lag, int level) {
  if (level < 0) throw DomainError("level must be non-negative");
  if (lag.order() > level + 1) {
    throw DomainError("Lagrangian of order " + std::to_string(lag.order()) + " does not fit level " +
                      std::to_string(level) + " (needs order <= level + 1)");
  }
}

/// Σ_{(J,i): Ji = I} p_α^{J.i}, distinct removals counted once.
Expr contraction(int alpha, const MultiIndex& I) {
  Expr sum;
  for (const auto& r : remove_one(I)) sum += Expr::variable(CoordinateId::momentum(alpha, r.rest, r.index));
  return sum;
}

std::vector<CoordinateId> elh_unknowns(const MomentumContext& mctx) {
  auto unknowns = mctx.jet_coordinates();
  auto momenta = mctx.momenta();
  unknowns.insert(unknowns.end(), momenta.begin(), momenta.end());
  return unknowns;
}

Equation constraint_row(const LagrangianDensity& lag, const JetContext& ctx, int alpha, const MultiIndex& I) {
  CoordinateId u = CoordinateId::jet(alpha, I);
  Expr r = partial(lag.density(), u) - contraction(alpha, I);
  return {"constraint[" + ctx.name(u) + "]", sign_normalized(r)};
}

}  // namespace

EnergyDensity energy_density(const LagrangianDensity& lag, int level) {
  require_level(lag, level);
  const auto& ctx = lag.context();
  Expr e = -lag.density();
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(ctx.n(), level)) {
      for (int i = 0; i < ctx.n(); ++i) {
        e += Expr::variable(CoordinateId::momentum(alpha, I, i)) * Expr::variable(CoordinateId::jet(alpha, I.with(i)));
      }
    }
  }
  return {e};
}

EquationSystem elh_system(const LagrangianDensity& lag, int level) {
  require_level(lag, level);
  const auto& ctx = lag.context();
  MomentumContext mctx(ctx, level);
  std::vector<Equation> rows;
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(ctx.n(), level)) {
      CoordinateId u = CoordinateId::jet(alpha, I);
      Expr divergence;
      for (int i = 0; i < ctx.n(); ++i) divergence += Expr::variable(CoordinateId::momentum(alpha, I, i).comma(i));
      Expr r = divergence - (partial(lag.density(), u) - contraction(alpha, I));
      rows.push_back({"momentum[" + ctx.name(u) + "]", sign_normalized(r)});
    }
  }
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_of_order(ctx.n(), level + 1)) rows.push_back(constraint_row(lag, ctx, alpha, I));
  }
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(ctx.n(), level)) {
      for (int i = 0; i < ctx.n(); ++i) {
        CoordinateId comma = CoordinateId::jet(alpha, I).comma(i);
        Expr r = Expr::variable(comma) - Expr::variable(CoordinateId::jet(alpha, I.with(i)));
        rows.push_back({"contact[" + ctx.name(comma) + "]", sign_normalized(r)});
      }
    }
  }
  return EquationSystem(ctx, elh_unknowns(mctx), std::move(rows));
}

EquationSystem constraints(const LagrangianDensity& lag, int level) {
  require_level(lag, level);
  const auto& ctx = lag.context();
  std::vector<Equation> rows;
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_of_order(ctx.n(), level + 1)) rows.push_back(constraint_row(lag, ctx, alpha, I));
  }
  return EquationSystem(ctx, elh_unknowns(MomentumContext(ctx, level)), std::move(rows));
}

// ---------------------------------------------------------------------------

namespace {

int exact_rank(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    auto r0 = static_cast<std::size_t>(rank);
    std::size_t pivot = r0;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r0]);
    for (std::size_t r = r0 + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[r0][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[r0][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

HessianReport hessian(const LagrangianDensity& lag, int level, const RankOptions& options) {
  require_level(lag, level);
  if (options.samples < 1) throw DomainError("rank sampling needs at least one sample");
  MomentumContext mctx(lag.context(), level);
  HessianReport report;
  report.matrix.index = mctx.top_jets();
  const auto& index = report.matrix.index;
  report.dim = static_cast<int>(index.size());
  std::set<CoordinateId> symbols;
  for (const auto& a : index) {
    Expr da = partial(lag.density(), a);
    std::vector<Expr> row;
    for (const auto& b : index) {
      row.push_back(partial(da, b));
      for (const auto& c : row.back().coordinates()) symbols.insert(c);
    }
    report.matrix.entries.push_back(std::move(row));
  }

  // Raw engine output keeps sample points identical across standard libraries.
  std::mt19937_64 rng(options.seed);
  auto draw = [&rng]() {
    long num = static_cast<long>(rng() % 41) - 20;
    long den = 1 + static_cast<long>(rng() % 9);
    return ratio(num, den);
  };
  for (int s = 0; s < options.samples; ++s) {
    std::map<CoordinateId, Expr> point;
    for (const auto& c : symbols) point.emplace(c, Expr(draw()));
    std::vector<std::vector<Rational>> numeric;
    for (const auto& row : report.matrix.entries) {
      std::vector<Rational> values;
      for (const auto& entry : row) values.push_back(substitute(entry, point).constant_term());
      numeric.push_back(std::move(values));
    }
    report.sample_ranks.push_back(exact_rank(std::move(numeric)));
  }
  const auto [lo, hi] = std::minmax_element(report.sample_ranks.begin(), report.sample_ranks.end());
  report.rank = *hi;
  report.constant_rank = *lo == *hi;
  report.regular = *lo == report.dim;
  return report;
}

// ---------------------------------------------------------------------------

PdHamiltonianForm elh_form(const LagrangianDensity& lag, int level) {
  require_level(lag, level);
  const auto& ctx = lag.context();
  MomentumContext mctx(ctx, level);
  PdHamiltonianForm form{ctx, elh_unknowns(mctx), {}, energy_density(lag, level).value};
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(ctx.n(), level)) {
      for (int i = 0; i < ctx.n(); ++i) {
        form.pairs.push_back({Expr::variable(CoordinateId::momentum(alpha, I, i)),
                              Expr::variable(CoordinateId::jet(alpha, I)), i});
      }
    }
  }
  return form;
}

EquationSystem pd_hamilton_equations(const PdHamiltonianForm& form) {
  std::vector<Equation> rows;
  std::vector<Expr> dF, dG;
  for (const auto& pair : form.pairs) {
    dF.push_back(total_derivative_primed(pair.momentum, pair.direction, form.ctx));
    dG.push_back(total_derivative_primed(pair.conjugate, pair.direction, form.ctx));
  }
  for (const auto& y : form.coordinates) {
    if (y.is_independent()) continue;
    Expr r = -partial(form.energy, y);
    for (std::size_t a = 0; a < form.pairs.size(); ++a) {
      Expr fy = partial(form.pairs[a].momentum, y);
      Expr gy = partial(form.pairs[a].conjugate, y);
      if (!fy.is_zero()) r += fy * dG[a];
      if (!gy.is_zero()) r -= gy * dF[a];
    }
    if (!r.is_zero()) rows.push_back({"delta[" + form.ctx.name(y) + "]", sign_normalized(r)});
  }
  std::vector<CoordinateId> unknowns;
  std::copy_if(form.coordinates.begin(), form.coordinates.end(), std::back_inserter(unknowns),
               [](const CoordinateId& c) { return !c.is_independent(); });
  return EquationSystem(form.ctx, std::move(unknowns), std::move(rows));
}

// ---------------------------------------------------------------------------

EquationSystem momentum_shift(const EquationSystem& system, std::span<const Expr> rho, int level) {
  const auto& ctx = system.context();
  if (static_cast<int>(rho.size()) != ctx.n()) {
    throw DomainError("rho needs one component per independent variable");
  }
  for (const auto& r : rho) {
    if (r.any_coordinate([](const CoordinateId& c) { return c.is_momentum() || c.is_comma(); })) {
      throw DomainError("rho must be a jet-side expression");
    }
    for (const auto& c : r.coordinates()) {
      if (c.order() > level) {
        throw DomainError("rho contains " + ctx.name(c) + ", above the momentum level " + std::to_string(level));
      }
    }
  }
  std::map<CoordinateId, Expr> bindings;
  for (const auto& p : MomentumContext(ctx, level).momenta()) {
    Expr theta = partial(rho[static_cast<std::size_t>(p.index())], CoordinateId::jet(p.alpha(), p.multi()));
    if (theta.is_zero()) continue;
    bindings.emplace(p, Expr::variable(p) - theta);
    for (int j = 0; j < ctx.n(); ++j) {
      bindings.emplace(p.comma(j), Expr::variable(p.comma(j)) - total_derivative_primed(theta, j, ctx));
    }
  }
  std::vector<Equation> rows;
  for (const auto& eq : system.equations()) rows.push_back({eq.label, sign_normalized(substitute(eq.residual, bindings))});
  std::vector<CoordinateId> unknowns = system.unknowns();
  return EquationSystem(ctx, std::move(unknowns), std::move(rows));
}

EquationSystem contact_reduced(const EquationSystem& system, int level) {
  const auto& ctx = system.context();
  std::map<CoordinateId, Expr> contact;
  std::vector<Expr> contact_rows;
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    for (const auto& I : multi_indices_up_to(ctx.n(), level)) {
      for (int i = 0; i < ctx.n(); ++i) {
        CoordinateId u = CoordinateId::jet(alpha, I);
        Expr target = Expr::variable(u.prolonged(i));
        contact.emplace(u.comma(i), target);
        contact_rows.push_back(sign_normalized(Expr::variable(u.comma(i)) - target));
      }
    }
  }
  std::vector<Equation> rows;
  for (const auto& eq : system.equations()) {
    Expr normalized = sign_normalized(eq.residual);
    bool is_contact = std::find(contact_rows.begin(), contact_rows.end(), normalized) != contact_rows.end();
    rows.push_back({eq.label, is_contact ? normalized : sign_normalized(substitute(eq.residual, contact))});
  }
  std::vector<CoordinateId> unknowns = system.unknowns();
  return EquationSystem(ctx, std::move(unknowns), std::move(rows));
}

}  // namespace jetham
