#include <algorithm>
#include <cmath>
#include <set>

#include "jetham/errors.hpp"
#include "jetham/numeric.hpp"

namespace jetham {

std::size_t Box::size() const {
  std::size_t s = 1;
  for (auto n : shape) s *= n;
  return s;
}

Box Box::shrunk(std::size_t margin) const {
  Box b = *this;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (shape[a] <= 2 * margin) throw NumericError("grid too small for the finite-difference stencils");
    b.lo[a] += margin;
    b.shape[a] -= 2 * margin;
  }
  return b;
}

namespace {

std::vector<std::size_t> strides(const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> s(shape.size(), 1);
  for (std::size_t a = shape.size(); a-- > 1;) s[a - 1] = s[a] * shape[a];
  return s;
}

/// Applies a 1-D stencil along `axis` to an array laid out on `in`, giving
/// an array on `out`. Every stencil point must lie in `in`.
std::vector<double> apply_axis(const std::vector<double>& data, const Box& in, const Box& out, std::size_t axis,
                               const std::vector<double>& weights, long radius) {
  const auto in_strides = strides(in.shape);
  const std::size_t dims = out.shape.size();
  std::vector<double> result(out.size());
  std::vector<std::size_t> pos(dims, 0);
  const auto step = static_cast<long>(in_strides[axis]);
  for (std::size_t k = 0; k < result.size(); ++k) {
    std::size_t base = 0;
    for (std::size_t a = 0; a < dims; ++a) base += (out.lo[a] + pos[a] - in.lo[a]) * in_strides[a];
    double sum = 0.0;
    for (long j = -radius; j <= radius; ++j) {
      double w = weights[static_cast<std::size_t>(j + radius)];
      if (w != 0.0) sum += w * data[static_cast<std::size_t>(static_cast<long>(base) + j * step)];
    }
    result[k] = sum;
    for (std::size_t a = dims; a-- > 0;) {
      if (++pos[a] < out.shape[a]) break;
      pos[a] = 0;
    }
  }
  return result;
}

std::vector<double> crop(const std::vector<double>& data, const Box& in, const Box& out) {
  return apply_axis(data, in, out, 0, {1.0}, 0);
}

std::vector<double> scaled_weights(int derivative, double spacing) {
  std::vector<double> w;
  double scale = std::pow(spacing, derivative);
  for (const auto& r : central_weights(derivative, stencil_radius(derivative))) w.push_back(r.get_d() / scale);
  return w;
}

void check_axes(const GridFunction& g, const JetContext& ctx) {
  if (g.axes().size() != static_cast<std::size_t>(ctx.n())) {
    throw NumericError("grid has " + std::to_string(g.axes().size()) + " axes, the problem has " +
                       std::to_string(ctx.n()) + " independents");
  }
  for (int i = 0; i < ctx.n(); ++i) {
    if (g.axes()[static_cast<std::size_t>(i)].name != ctx.independents()[static_cast<std::size_t>(i)]) {
      throw NumericError("grid axis " + g.axes()[static_cast<std::size_t>(i)].name + " does not match independent " +
                         ctx.independents()[static_cast<std::size_t>(i)]);
    }
  }
}

}  // namespace

std::vector<std::size_t> JetField::position(std::size_t k) const {
  std::vector<std::size_t> pos(box.shape.size());
  for (std::size_t a = box.shape.size(); a-- > 0;) {
    pos[a] = box.lo[a] + k % box.shape[a];
    k /= box.shape[a];
  }
  return pos;
}

JetSample JetField::sample(std::size_t k) const {
  JetSample s;
  auto pos = position(k);
  for (std::size_t a = 0; a < axes.size(); ++a) {
    s[CoordinateId::independent(static_cast<int>(a))] = axes[a].coordinate(pos[a]);
  }
  for (const auto& [c, v] : values) s[c] = v[k];
  return s;
}

JetField JetField::cropped(const Box& inner) const {
  JetField f{ctx, axes, inner, {}};
  for (const auto& [c, v] : values) f.values.emplace(c, crop(v, box, inner));
  return f;
}

JetField fd_prolong(const GridFunction& g, const JetContext& ctx, int order) {
  if (order < 0 || order > 4) throw NumericError("finite-difference jets are available up to order 4");
  check_axes(g, ctx);
  Box full{std::vector<std::size_t>(g.axes().size(), 0), g.shape()};
  const auto margin = static_cast<std::size_t>(stencil_radius(order));
  Box interior = full.shrunk(margin);
  JetField out{ctx, g.axes(), interior, {}};

  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    const auto& data = g.field(ctx.dependents()[static_cast<std::size_t>(alpha)]);
    for (const auto& I : multi_indices_up_to(ctx.n(), order)) {
      std::vector<double> current = data;
      Box box = full;
      for (std::size_t a = 0; a < g.axes().size(); ++a) {
        int k = I.count(static_cast<int>(a));
        Box next = box;
        next.lo[a] = interior.lo[a];
        next.shape[a] = interior.shape[a];
        current = apply_axis(current, box, next, a, k == 0 ? std::vector<double>{1.0} : scaled_weights(k, g.axes()[a].spacing),
                             stencil_radius(k));
        box = next;
      }
      out.values.emplace(CoordinateId::jet(alpha, I), std::move(current));
    }
  }
  return out;
}

JetField fd_commas(const JetField& f, int axis, const std::vector<CoordinateId>& coords) {
  const int radius = stencil_radius(1);
  Box inner = f.box.shrunk(static_cast<std::size_t>(radius));
  JetField out{f.ctx, f.axes, inner, {}};
  const auto a = static_cast<std::size_t>(axis);
  auto weights = scaled_weights(1, f.axes[a].spacing);
  for (const auto& c : coords) {
    auto it = f.values.find(c);
    if (it == f.values.end()) throw NumericError("no field for " + f.ctx.name(c));
    // Differentiate along the axis, then crop the remaining axes.
    Box along = f.box;
    along.lo[a] = inner.lo[a];
    along.shape[a] = inner.shape[a];
    auto d = apply_axis(it->second, f.box, along, a, weights, radius);
    out.values.emplace(c.comma(axis), crop(d, along, inner));
  }
  return out;
}

double ResidualReport::max() const {
  double m = 0.0;
  for (double v : max_abs) {
    if (!(v <= m)) m = v;
  }
  return m;
}

ResidualReport residual(const EquationSystem& system, const GridFunction& g, const GridFunction* momenta,
                        const LegendreForm* theta) {
  const auto& ctx = system.context();
  check_axes(g, ctx);

  std::set<CoordinateId> used;
  for (const auto& eq : system.equations()) {
    for (const auto& c : eq.residual.coordinates()) used.insert(c);
  }
  std::set<CoordinateId> fields;  // jets and momenta that must exist as arrays
  std::map<int, std::vector<CoordinateId>> commas;
  for (const auto& c : used) {
    if (c.is_independent()) continue;
    if (c.is_comma()) {
      fields.insert(c.base());
      commas[c.comma_direction()].push_back(c.base());
    } else {
      fields.insert(c);
    }
  }

  int order = 0;
  std::vector<CoordinateId> needed_momenta;
  for (const auto& c : fields) {
    if (c.is_jet()) order = std::max(order, c.order());
    if (c.is_momentum()) needed_momenta.push_back(c);
  }
  if (!needed_momenta.empty() && momenta == nullptr) {
    if (theta == nullptr) throw NumericError("momentum fields are required but neither a grid nor a Legendre form was given");
    for (const auto& p : needed_momenta) {
      for (const auto& c : theta->at(p.alpha(), p.multi(), p.index()).coordinates()) {
        if (c.is_jet()) order = std::max(order, c.order());
      }
    }
  }

  JetField field = fd_prolong(g, ctx, order);
  for (const auto& p : needed_momenta) {
    std::vector<double> values;
    if (momenta != nullptr) {
      auto name = ctx.name(p);
      if (!momenta->has_field(name)) throw NumericError("momentum grid has no field " + name);
      Box full{std::vector<std::size_t>(momenta->axes().size(), 0), momenta->shape()};
      if (momenta->shape() != g.shape()) throw NumericError("momentum grid shape differs from the field grid");
      values = crop(momenta->field(name), full, field.box);
    } else {
      const Expr& e = theta->at(p.alpha(), p.multi(), p.index());
      std::vector<CoordinateId> slots;
      for (const auto& c : e.coordinates()) slots.push_back(c);
      CompiledExpr compiled(e, slots);
      values.resize(field.size());
      std::vector<double> point(slots.size());
      for (std::size_t k = 0; k < field.size(); ++k) {
        auto pos = slots.empty() ? std::vector<std::size_t>{} : field.position(k);
        for (std::size_t s = 0; s < slots.size(); ++s) {
          const auto& c = slots[s];
          point[s] = c.is_independent() ? field.axes[static_cast<std::size_t>(c.index())].coordinate(pos[static_cast<std::size_t>(c.index())])
                                        : field.values.at(c)[k];
        }
        values[k] = compiled(point.data());
      }
    }
    field.values.emplace(p, std::move(values));
  }

  if (!commas.empty()) {
    Box inner = field.box.shrunk(static_cast<std::size_t>(stencil_radius(1)));
    JetField merged = field.cropped(inner);
    for (const auto& [axis, bases] : commas) {
      auto d = fd_commas(field, axis, bases);
      for (auto& [c, v] : d.values) merged.values.emplace(c, std::move(v));
    }
    field = std::move(merged);
  }

  std::vector<CoordinateId> slots(used.begin(), used.end());
  std::vector<const std::vector<double>*> arrays;
  for (const auto& c : slots) arrays.push_back(c.is_independent() ? nullptr : &field.values.at(c));

  ResidualReport report;
  report.points = field.size();
  std::vector<CompiledExpr> compiled;
  for (const auto& eq : system.equations()) {
    report.labels.push_back(eq.label);
    report.max_abs.push_back(0.0);
    compiled.emplace_back(eq.residual, slots);
  }
  std::vector<double> point(slots.size());
  for (std::size_t k = 0; k < field.size(); ++k) {
    std::vector<std::size_t> pos;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (arrays[s] != nullptr) {
        point[s] = (*arrays[s])[k];
      } else {
        if (pos.empty()) pos = field.position(k);
        auto a = static_cast<std::size_t>(slots[s].index());
        point[s] = field.axes[a].coordinate(pos[a]);
      }
    }
    for (std::size_t e = 0; e < compiled.size(); ++e) {
      double v = std::abs(compiled[e](point.data()));
      if (!(v <= report.max_abs[e])) report.max_abs[e] = v;
    }
  }
  return report;
}

}  // namespace jetham
