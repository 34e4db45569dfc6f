#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetham/equation_system.hpp"
#include "jetham/expr.hpp"
#include "jetham/variational.hpp"

namespace jetham {

/// Values of coordinates at one point of a section.
using JetSample = std::map<CoordinateId, double>;

/// Throws NumericError when a coordinate of e has no value in s.
double eval(const Expr& e, const JetSample& s);

/// An Expr flattened for repeated evaluation: coordinates are looked up once,
/// then every point only gathers doubles from slots.
class CompiledExpr {
 public:
  CompiledExpr(const Expr& e, const std::vector<CoordinateId>& slots);

  /// values[k] holds the value of slots[k].
  double operator()(const double* values) const;

 private:
  struct Power {
    std::size_t slot;
    int exponent;
  };
  struct CompiledTerm {
    double coeff;
    std::vector<Power> powers;
  };
  std::vector<CompiledTerm> terms_;
};

struct Axis {
  std::string name;
  std::size_t points = 0;
  double origin = 0.0;
  double spacing = 1.0;

  double coordinate(std::size_t k) const { return origin + spacing * static_cast<double>(k); }
  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Samples of named fields on a uniform rectangular grid. Arrays are stored
/// row-major: the last axis varies fastest.
class GridFunction {
 public:
  GridFunction(std::vector<Axis> axes, std::vector<std::string> field_names);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<std::string>& field_names() const { return names_; }
  std::size_t size() const { return size_; }
  std::vector<std::size_t> shape() const;

  bool has_field(const std::string& name) const;
  /// Throws NumericError for unknown names.
  std::vector<double>& field(const std::string& name);
  const std::vector<double>& field(const std::string& name) const;

  /// Reads or writes the binary grid format (see docs/grid_format.md).
  static GridFunction read(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<Axis> axes_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> data_;
  std::size_t size_ = 1;
};

/// Central finite-difference weights for the k-th derivative on 2r+1 points
/// with unit spacing, obtained by an exact rational solve. The stencils used
/// by fd_prolong have r = floor((k+1)/2) + 1, which is fourth-order accurate
/// for k <= 4.
std::vector<Rational> central_weights(int derivative, int radius);
int stencil_radius(int derivative);

/// Sub-box of a grid: first index and extent per axis.
struct Box {
  std::vector<std::size_t> lo;
  std::vector<std::size_t> shape;

  std::size_t size() const;
  /// Same box with `margin` points removed on both sides of every axis.
  Box shrunk(std::size_t margin) const;
};

/// Coordinate fields on a common box of the grid.
struct JetField {
  JetContext ctx;
  std::vector<Axis> axes;
  Box box;
  std::map<CoordinateId, std::vector<double>> values;

  std::size_t size() const { return box.size(); }
  /// Grid position of the k-th point of the box.
  std::vector<std::size_t> position(std::size_t k) const;
  /// All coordinates at point k, independents included.
  JetSample sample(std::size_t k) const;
  /// The fields restricted to a smaller box.
  JetField cropped(const Box& inner) const;
};

/// Estimates all u^α_I with |I| <= order at the points at least
/// stencil_radius(order) away from the boundary. Dependent fields are found
/// by name. Throws NumericError when the grid is too small or a field is
/// missing; order must be at most 4.
JetField fd_prolong(const GridFunction& g, const JetContext& ctx, int order);

/// First derivative along `axis` of every field in f, by the fourth-order
/// central stencil, on the box shrunk by its radius. Results are keyed by
/// the comma coordinates y,_axis.
JetField fd_commas(const JetField& f, int axis, const std::vector<CoordinateId>& coords);

struct ResidualReport {
  std::vector<std::string> labels;
  std::vector<double> max_abs;
  std::size_t points = 0;

  double max() const;
};

/// Max-abs residual of every equation over the interior points. Jets come
/// from fd_prolong of g; momenta from `momenta` (fields named as in the
/// plain rendering, e.g. "p_x.t") or, when absent, from evaluating the
/// Legendre form along the prolonged field; comma coordinates are differenced
/// from the unknown fields.
ResidualReport residual(const EquationSystem& system, const GridFunction& g,
                        const GridFunction* momenta = nullptr, const LegendreForm* theta = nullptr);

}  // namespace jetham
