#include <algorithm>
#include <set>

#include "jetham/errors.hpp"
#include "jetham/pdham.hpp"

namespace jetham {

std::string to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::regular: return "regular";
    case Diagnosis::reducible: return "reducible";
    case Diagnosis::nonlinear_constraints: return "nonlinear_constraints";
    case Diagnosis::nonconstant_coefficients: return "nonconstant_coefficients";
    case Diagnosis::submersion_failed: return "submersion_failed";
  }
  return "unknown";
}

namespace {

struct Row {
  std::vector<Rational> coeffs;
  Expr rest;
  std::string label;
};

bool is_zero_row(const Row& r) {
  return std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const Rational& c) { return c == 0; });
}

}  // namespace

ReducedSystem reduce(const LagrangianDensity& lag, int level) {
  const auto& ctx = lag.context();
  MomentumContext mctx(ctx, level);
  ReducedSystem out{.diagnosis = Diagnosis::regular,
                    .detail = {},
                    .energy = energy_density(lag, level),
                    .constraint_rows = constraints(lag, level),
                    .p_coords = {},
                    .p0_coords = {},
                    .substitutions = {},
                    .energy_on_p = {},
                    .hamiltonian = {},
                    .equations_on_p = std::nullopt,
                    .hdw = std::nullopt};

  const auto top = mctx.top_jets();
  std::vector<CoordinateId> columns = top;
  {
    std::vector<CoordinateId> level_momenta;
    for (const auto& p : mctx.momenta()) {
      if (p.order() == level) level_momenta.push_back(p);
    }
    columns.insert(columns.end(), level_momenta.rbegin(), level_momenta.rend());
  }
  const std::set<CoordinateId> top_set(top.begin(), top.end());
  const std::set<CoordinateId> column_set(columns.begin(), columns.end());
  auto is_top = [&](const CoordinateId& c) { return top_set.contains(c); };
  auto is_column = [&](const CoordinateId& c) { return column_set.contains(c); };

  auto stop = [&](Diagnosis d, std::string detail) {
    out.diagnosis = d;
    out.detail = std::move(detail);
    return out;
  };

  std::vector<Row> rows;
  for (const auto& eq : out.constraint_rows.equations()) {
    if (eq.residual.degree_in(is_top) > 1) {
      return stop(Diagnosis::nonlinear_constraints, eq.label + " is not affine in the top jets");
    }
    Row row{std::vector<Rational>(columns.size()), {}, eq.label};
    std::map<CoordinateId, Expr> coeffs;
    try {
      coeffs = linear_coefficients(eq.residual, is_column, &row.rest);
    } catch (const DomainError&) {
      return stop(Diagnosis::nonlinear_constraints, eq.label + " is not affine in the top jets");
    }
    for (std::size_t k = 0; k < columns.size(); ++k) {
      auto it = coeffs.find(columns[k]);
      if (it == coeffs.end()) continue;
      if (!it->second.is_constant()) {
        return stop(Diagnosis::nonconstant_coefficients,
                    eq.label + " has a non-constant coefficient on " + ctx.name(columns[k]));
      }
      row.coeffs[k] = it->second.constant_term();
    }
    rows.push_back(std::move(row));
  }

  // Gauss-Jordan with exact rational pivots.
  std::vector<std::size_t> pivot_columns;
  std::size_t next = 0;
  for (std::size_t c = 0; c < columns.size() && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && rows[p].coeffs[c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    Row& pr = rows[next];
    Rational inv = 1 / pr.coeffs[c];
    inv.canonicalize();
    for (auto& v : pr.coeffs) v *= inv;
    pr.rest = pr.rest.scaled(inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r].coeffs[c] == 0) continue;
      Rational f = rows[r].coeffs[c];
      for (std::size_t k = 0; k < columns.size(); ++k) rows[r].coeffs[k] -= f * pr.coeffs[k];
      rows[r].rest -= pr.rest.scaled(f);
    }
    pivot_columns.push_back(c);
    ++next;
  }

  for (std::size_t r = next; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (!is_zero_row(row)) throw InternalError("elimination left a non-zero coefficient row");
    if (row.rest.is_zero()) continue;
    if (row.rest.is_constant()) {
      throw DegenerateLagrangian("constraints are inconsistent: " + row.label + " reduces to " +
                                 to_string(row.rest.constant_term()) + " = 0");
    }
    if (row.rest.any_coordinate(is_top)) {
      return stop(Diagnosis::nonconstant_coefficients, row.label + " still involves top jets after elimination");
    }
    return stop(Diagnosis::submersion_failed,
                "submersion check failed: " + row.label + " leaves a relation among lower jets");
  }

  std::set<CoordinateId> pivots;
  for (std::size_t r = 0; r < pivot_columns.size(); ++r) {
    const Row& row = rows[r];
    const CoordinateId& col = columns[pivot_columns[r]];
    Expr value = -row.rest;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k == pivot_columns[r] || row.coeffs[k] == 0) continue;
      value -= Expr::variable(columns[k]).scaled(row.coeffs[k]);
    }
    if (col.is_momentum() && value.any_coordinate(is_top)) {
      return stop(Diagnosis::submersion_failed,
                  "submersion check failed: " + ctx.name(col) + " depends on the top jets");
    }
    out.substitutions.emplace(col, std::move(value));
    pivots.insert(col);
  }

  bool all_top_pivoted = std::all_of(top.begin(), top.end(), [&](const CoordinateId& c) { return pivots.contains(c); });
  bool momentum_pivoted = std::any_of(pivots.begin(), pivots.end(), [](const CoordinateId& c) { return c.is_momentum(); });
  out.diagnosis = all_top_pivoted && !momentum_pivoted ? Diagnosis::regular : Diagnosis::reducible;

  std::vector<CoordinateId> all;
  for (int i = 0; i < ctx.n(); ++i) all.push_back(CoordinateId::independent(i));
  for (const auto& c : mctx.jet_coordinates()) all.push_back(c);
  for (const auto& c : mctx.momenta()) all.push_back(c);
  for (const auto& c : all) {
    if (pivots.contains(c)) continue;
    out.p_coords.push_back(c);
    if (!is_top(c)) out.p0_coords.push_back(c);
  }

  out.energy_on_p = substitute(out.energy.value, out.substitutions);
  if (out.energy_on_p.any_coordinate(is_top)) {
    throw InternalError("restricted energy still depends on the top jets");
  }
  out.hamiltonian = out.energy_on_p;

  PdHamiltonianForm full = elh_form(lag, level);
  PdHamiltonianForm on_p{ctx, out.p_coords, {}, out.energy_on_p};
  for (const auto& pair : full.pairs) {
    on_p.pairs.push_back({substitute(pair.momentum, out.substitutions), substitute(pair.conjugate, out.substitutions),
                          pair.direction});
  }
  out.equations_on_p = pd_hamilton_equations(on_p);
  PdHamiltonianForm on_p0 = on_p;
  on_p0.coordinates = out.p0_coords;
  on_p0.energy = out.hamiltonian;
  out.hdw = pd_hamilton_equations(on_p0);
  return out;
}

}  // namespace jetham
