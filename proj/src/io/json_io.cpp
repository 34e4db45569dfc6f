#include "jetham/json_io.hpp"

#include "jetham/errors.hpp"
#include "jetham/parse.hpp"
#include "jetham/render.hpp"

namespace jetham {

namespace {

Json names(const std::vector<CoordinateId>& coords, const JetContext& ctx) {
  Json out = Json::array();
  for (const auto& c : coords) out.push_back(ctx.name(c));
  return out;
}

Json one_based(const MultiIndex& I) {
  Json out = Json::array();
  for (int i : I.indices()) out.push_back(i + 1);
  return out;
}

int index_field(const Json& entry, const char* key, int bound) {
  if (!entry.contains(key) || !entry.at(key).is_number_integer()) {
    throw DomainError(std::string("entry needs an integer '") + key + "'");
  }
  int v = entry.at(key).get<int>();
  if (v < 1 || v > bound) throw DomainError(std::string("'") + key + "' out of range");
  return v - 1;
}

}  // namespace

Json to_json(const EquationSystem& system) {
  const auto& ctx = system.context();
  Json eqs = Json::array();
  for (const auto& eq : system.equations()) {
    eqs.push_back({{"label", eq.label}, {"residual", render(eq.residual, ctx)}});
  }
  return {{"unknowns", names(system.unknowns(), ctx)}, {"equations", eqs}};
}

EquationSystem system_from_json(const Json& j, const JetContext& ctx) {
  if (!j.is_object() || !j.contains("unknowns") || !j.contains("equations")) {
    throw DomainError("equation system JSON needs 'unknowns' and 'equations'");
  }
  std::vector<CoordinateId> unknowns;
  for (const auto& u : j.at("unknowns")) unknowns.push_back(parse_coordinate(u.get<std::string>(), ctx));
  std::vector<Equation> eqs;
  for (const auto& e : j.at("equations")) {
    eqs.push_back({e.at("label").get<std::string>(), parse(e.at("residual").get<std::string>(), ctx)});
  }
  return EquationSystem(ctx, std::move(unknowns), std::move(eqs));
}

Json to_json(const CartanValuedForm& form, const JetContext& ctx) {
  Json out = Json::array();
  for (const auto& [key, coeff] : form.coefficients()) {
    out.push_back({{"alpha", key.first + 1}, {"I", one_based(key.second)}, {"coeff", render(coeff, ctx)}});
  }
  return out;
}

Json to_json(const SourceForm& form, const JetContext& ctx) { return to_json(form.as_cartan(), ctx); }

Json to_json(const LegendreForm& form, const JetContext& ctx) {
  Json out = Json::array();
  for (const auto& [key, coeff] : form.coefficients()) {
    out.push_back({{"alpha", key.alpha + 1},
                   {"I", one_based(key.multi)},
                   {"i", key.index + 1},
                   {"coeff", render(coeff, ctx)}});
  }
  return out;
}

LegendreForm legendre_from_json(const Json& j, const JetContext& ctx, int order) {
  if (!j.is_array()) throw DomainError("Legendre form JSON must be an array");
  LegendreForm form(order);
  for (const auto& entry : j) {
    int alpha = index_field(entry, "alpha", ctx.m());
    int i = index_field(entry, "i", ctx.n());
    std::vector<int> idx;
    for (const auto& v : entry.at("I")) {
      int k = v.get<int>();
      if (k < 1 || k > ctx.n()) throw DomainError("multiindex entry out of range");
      idx.push_back(k - 1);
    }
    form.set(alpha, MultiIndex(std::span<const int>(idx)), i, parse(entry.at("coeff").get<std::string>(), ctx));
  }
  return form;
}

Json to_json(const HessianReport& report, const JetContext& ctx) {
  Json matrix = Json::array();
  for (const auto& row : report.matrix.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(render(e, ctx));
    matrix.push_back(r);
  }
  return {{"dim", report.dim},
          {"rank", report.rank},
          {"regular", report.regular},
          {"constant_rank", report.constant_rank},
          {"sample_ranks", report.sample_ranks},
          {"index", names(report.matrix.index, ctx)},
          {"matrix", matrix}};
}

Json to_json(const ReducedSystem& reduced, const JetContext& ctx) {
  Json subs = Json::object();
  for (const auto& [c, e] : reduced.substitutions) subs[ctx.name(c)] = render(e, ctx);
  Json out = {{"diagnosis", to_string(reduced.diagnosis)},
              {"detail", reduced.detail},
              {"p_coords", names(reduced.p_coords, ctx)},
              {"p0_coords", names(reduced.p0_coords, ctx)},
              {"substitutions", subs},
              {"E", render(reduced.energy.value, ctx)}};
  if (reduced.reduced()) {
    out["E_on_P"] = render(reduced.energy_on_p, ctx);
    out["H"] = render(reduced.hamiltonian, ctx);
    out["equations"] = to_json(*reduced.equations_on_p)["equations"];
    out["hdw"] = to_json(*reduced.hdw);
  } else {
    out["E_on_P"] = nullptr;
    out["H"] = nullptr;
    out["equations"] = Json::array();
    out["hdw"] = nullptr;
  }
  return out;
}

Json to_json(const ResidualReport& report) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < report.labels.size(); ++k) {
    rows.push_back({{"label", report.labels[k]}, {"max_abs", report.max_abs[k]}});
  }
  return {{"points", report.points}, {"max", report.max()}, {"residuals", rows}};
}

}  // namespace jetham
