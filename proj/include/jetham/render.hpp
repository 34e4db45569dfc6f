#pragma once

#include <string>

#include "jetham/expr.hpp"

namespace jetham {

enum class Format { plain, latex, json };

/// Deterministic rendering. Plain output re-parses to the same Expr.
std::string render(const Expr& e, const JetContext& ctx, Format format = Format::plain);

}  // namespace jetham
