#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetham/multi_index.hpp"

namespace jetham {

enum class CoordKind : std::uint8_t { independent = 0, jet = 1, momentum = 2 };

/// A coordinate symbol: x^i, u^α_I, or p_α^{I.i}. On the momentum side of the
/// theory a coordinate may also carry a comma direction j, standing for the
/// first derivative y,_j of the section component y along x^j.
///
/// Total order: independents < jets < momenta < comma coordinates. Jets are
/// ordered by (α, |I|, I), momenta by (α, |I|, I, i), comma coordinates by
/// (base, j).
class CoordinateId {
 public:
  static CoordinateId independent(int i);
  static CoordinateId jet(int alpha, MultiIndex multi = {});
  static CoordinateId momentum(int alpha, MultiIndex multi, int i);

  CoordKind kind() const { return kind_; }
  bool is_independent() const { return kind_ == CoordKind::independent && comma_ < 0; }
  bool is_jet() const { return kind_ == CoordKind::jet && comma_ < 0; }
  bool is_momentum() const { return kind_ == CoordKind::momentum && comma_ < 0; }
  bool is_comma() const { return comma_ >= 0; }

  int alpha() const { return alpha_; }
  const MultiIndex& multi() const { return multi_; }
  /// x^i index for independents, direction i for momenta.
  int index() const { return index_; }
  int comma_direction() const { return comma_; }
  /// Jet order |I| (zero for independents).
  int order() const { return static_cast<int>(multi_.order()); }

  /// y,_j for a jet or momentum y.
  CoordinateId comma(int j) const;
  /// Strips the comma direction.
  CoordinateId base() const;
  /// u_I -> u_{Ii}.
  CoordinateId prolonged(int i) const;

  friend bool operator==(const CoordinateId&, const CoordinateId&) = default;
  friend std::strong_ordering operator<=>(const CoordinateId& a, const CoordinateId& b);

  std::size_t hash() const;

 private:
  CoordKind kind_ = CoordKind::independent;
  std::int8_t comma_ = -1;
  std::int16_t alpha_ = 0;
  std::int16_t index_ = 0;
  MultiIndex multi_;
};

/// Names and bounds of the local jet coordinate system of a bundle with
/// n independent and m dependent variables.
class JetContext {
 public:
  /// Validates: n, m >= 1, names are identifiers distinct from each other and
  /// from the momentum symbol "p", max_order >= 0.
  JetContext(std::vector<std::string> independents, std::vector<std::string> dependents,
             int max_order, bool auto_extend = false);

  int n() const { return static_cast<int>(independents_.size()); }
  int m() const { return static_cast<int>(dependents_.size()); }
  int max_order() const { return max_order_; }
  bool auto_extend() const { return auto_extend_; }
  const std::vector<std::string>& independents() const { return independents_; }
  const std::vector<std::string>& dependents() const { return dependents_; }

  std::optional<int> independent_index(std::string_view name) const;
  std::optional<int> dependent_index(std::string_view name) const;

  /// Same names, different bound.
  JetContext with_max_order(int max_order) const;

  /// Throws OrderOverflow when c is a jet above max_order (unless the context
  /// auto-extends), DomainError when indices are out of range.
  void check(const CoordinateId& c) const;

  /// Plain-text name: `x`, `u_tx`, `p_x.t` (`p^v_x.t` when m > 1), `u_t,x`.
  std::string name(const CoordinateId& c) const;
  std::string latex_name(const CoordinateId& c) const;
  /// Concatenated independent names of I, e.g. "tx".
  std::string subscript(const MultiIndex& I) const;

  static constexpr std::string_view kMomentumSymbol = "p";

  friend bool operator==(const JetContext&, const JetContext&) = default;

 private:
  std::vector<std::string> independents_;
  std::vector<std::string> dependents_;
  int max_order_;
  bool auto_extend_;
};

}  // namespace jetham

template <>
struct std::hash<jetham::CoordinateId> {
  std::size_t operator()(const jetham::CoordinateId& c) const { return c.hash(); }
};
