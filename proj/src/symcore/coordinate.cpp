#include "jetham/coordinate.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "jetham/errors.hpp"

namespace jetham {

CoordinateId CoordinateId::independent(int i) {
  CoordinateId c;
  c.kind_ = CoordKind::independent;
  c.index_ = static_cast<std::int16_t>(i);
  return c;
}

CoordinateId CoordinateId::jet(int alpha, MultiIndex multi) {
  CoordinateId c;
  c.kind_ = CoordKind::jet;
  c.alpha_ = static_cast<std::int16_t>(alpha);
  c.multi_ = multi;
  return c;
}

CoordinateId CoordinateId::momentum(int alpha, MultiIndex multi, int i) {
  CoordinateId c;
  c.kind_ = CoordKind::momentum;
  c.alpha_ = static_cast<std::int16_t>(alpha);
  c.multi_ = multi;
  c.index_ = static_cast<std::int16_t>(i);
  return c;
}

CoordinateId CoordinateId::comma(int j) const {
  if (is_comma()) throw DomainError("comma coordinates are first order only");
  if (kind_ == CoordKind::independent) throw DomainError("an independent variable has no comma derivative");
  CoordinateId c = *this;
  c.comma_ = static_cast<std::int8_t>(j);
  return c;
}

CoordinateId CoordinateId::base() const {
  CoordinateId c = *this;
  c.comma_ = -1;
  return c;
}

CoordinateId CoordinateId::prolonged(int i) const {
  if (!is_jet()) throw DomainError("only jet coordinates can be prolonged");
  return jet(alpha_, multi_.with(i));
}

std::strong_ordering operator<=>(const CoordinateId& a, const CoordinateId& b) {
  if (auto c = a.is_comma() <=> b.is_comma(); c != 0) return c;
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == CoordKind::independent) return a.index_ <=> b.index_;
  if (auto c = a.alpha_ <=> b.alpha_; c != 0) return c;
  if (auto c = a.multi_ <=> b.multi_; c != 0) return c;
  if (auto c = a.index_ <=> b.index_; c != 0) return c;
  return a.comma_ <=> b.comma_;
}

std::size_t CoordinateId::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_);
  h = h * 31 + static_cast<std::size_t>(comma_ + 1);
  h = h * 31 + static_cast<std::size_t>(alpha_);
  h = h * 31 + static_cast<std::size_t>(index_);
  return h * 1000003u ^ multi_.hash();
}

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)); });
}

}  // namespace

JetContext::JetContext(std::vector<std::string> independents, std::vector<std::string> dependents,
                       int max_order, bool auto_extend)
    : independents_(std::move(independents)),
      dependents_(std::move(dependents)),
      max_order_(max_order),
      auto_extend_(auto_extend) {
  if (independents_.empty()) throw DomainError("at least one independent variable is required");
  if (dependents_.empty()) throw DomainError("at least one dependent variable is required");
  if (max_order_ < 0) throw DomainError("max_order must be non-negative");
  if (max_order_ > static_cast<int>(MultiIndex::kMaxOrder)) {
    throw DomainError("max_order above supported limit " + std::to_string(MultiIndex::kMaxOrder));
  }
  std::set<std::string> seen;
  for (const auto* names : {&independents_, &dependents_}) {
    for (const auto& s : *names) {
      if (!is_identifier(s)) throw DomainError("invalid variable name '" + s + "'");
      if (s == kMomentumSymbol) throw DomainError("'p' is reserved for momenta");
      if (!seen.insert(s).second) throw DomainError("duplicate variable name '" + s + "'");
    }
  }
}

std::optional<int> JetContext::independent_index(std::string_view name) const {
  auto it = std::find(independents_.begin(), independents_.end(), name);
  if (it == independents_.end()) return std::nullopt;
  return static_cast<int>(it - independents_.begin());
}

std::optional<int> JetContext::dependent_index(std::string_view name) const {
  auto it = std::find(dependents_.begin(), dependents_.end(), name);
  if (it == dependents_.end()) return std::nullopt;
  return static_cast<int>(it - dependents_.begin());
}

JetContext JetContext::with_max_order(int max_order) const {
  JetContext c = *this;
  if (max_order < 0 || max_order > static_cast<int>(MultiIndex::kMaxOrder)) {
    throw DomainError("max_order out of range");
  }
  c.max_order_ = max_order;
  return c;
}

void JetContext::check(const CoordinateId& c) const {
  auto in_range = [](int v, int hi) { return v >= 0 && v < hi; };
  if (c.kind() == CoordKind::independent) {
    if (!in_range(c.index(), n())) throw DomainError("undeclared independent variable");
    return;
  }
  if (!in_range(c.alpha(), m())) throw DomainError("undeclared dependent variable");
  for (auto i : c.multi()) {
    if (!in_range(i, n())) throw DomainError("undeclared independent variable in multiindex");
  }
  if (c.kind() == CoordKind::momentum && !in_range(c.index(), n())) {
    throw DomainError("undeclared momentum direction");
  }
  if (c.is_comma() && !in_range(c.comma_direction(), n())) {
    throw DomainError("undeclared comma direction");
  }
  if (!auto_extend_ && c.order() > max_order_) {
    throw OrderOverflow("coordinate " + name(c) + " has order " + std::to_string(c.order()) +
                        " above max_order " + std::to_string(max_order_));
  }
}

std::string JetContext::subscript(const MultiIndex& I) const {
  std::string s;
  for (auto i : I) s += independents_.at(i);
  return s;
}

std::string JetContext::name(const CoordinateId& c) const {
  std::string s;
  switch (c.kind()) {
    case CoordKind::independent:
      return independents_.at(c.index());
    case CoordKind::jet:
      s = dependents_.at(c.alpha());
      if (!c.multi().empty()) s += "_" + subscript(c.multi());
      break;
    case CoordKind::momentum:
      s = std::string(kMomentumSymbol);
      if (m() > 1) s += "^" + dependents_.at(c.alpha());
      s += "_" + subscript(c.multi()) + "." + independents_.at(c.index());
      break;
  }
  if (c.is_comma()) s += "," + independents_.at(c.comma_direction());
  return s;
}

std::string JetContext::latex_name(const CoordinateId& c) const {
  std::string s;
  switch (c.kind()) {
    case CoordKind::independent:
      return independents_.at(c.index());
    case CoordKind::jet:
      s = dependents_.at(c.alpha());
      if (!c.multi().empty()) s += "_{" + subscript(c.multi()) + "}";
      break;
    case CoordKind::momentum:
      s = std::string(kMomentumSymbol);
      if (m() > 1) s += "_{" + dependents_.at(c.alpha()) + "}";
      s += "^{" + subscript(c.multi()) + "." + independents_.at(c.index()) + "}";
      break;
  }
  if (c.is_comma()) s = "{" + s + "}_{," + independents_.at(c.comma_direction()) + "}";
  return s;
}

}  // namespace jetham
