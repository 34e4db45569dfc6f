#pragma once

#include <string_view>

#include "jetham/coordinate.hpp"
#include "jetham/expr.hpp"

namespace jetham {

/// Parses the polynomial grammar documented in docs/grammar.bnf.
/// Throws ParseError / UnsupportedExpression (with column) or OrderOverflow.
Expr parse(std::string_view text, const JetContext& ctx);

/// Parses a single coordinate name (`u_tx`, `p_x.t`, `u_t,x`).
CoordinateId parse_coordinate(std::string_view text, const JetContext& ctx);

}  // namespace jetham
