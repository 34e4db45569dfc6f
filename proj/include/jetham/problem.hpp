#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetham/variational.hpp"

namespace jetham {

/// Contents of a problem file (docs/problem_format.md).
struct ProblemFile {
  std::vector<std::string> independents;
  std::vector<std::string> dependents;
  std::string lagrangian;
  int lagrangian_line = 0;
  int lagrangian_column = 0;
  std::optional<int> order;
  int rank_samples = 5;
  std::uint64_t seed = 1;
  bool auto_extend = false;
  std::vector<std::string> rho;
  int rho_line = 0;
  int rho_column = 0;
};

/// Throws ParseError with line and column on malformed input.
ProblemFile parse_problem(std::string_view text);
/// Throws Error when the file cannot be read.
ProblemFile read_problem(const std::filesystem::path& path);

/// A problem file turned into library objects.
struct Problem {
  ProblemFile file;
  LagrangianDensity lagrangian;
  std::vector<Expr> rho;

  const JetContext& context() const { return lagrangian.context(); }
};

/// Parses the Lagrangian (and rho) in the declared context. Parse errors are
/// reported at their position in the problem file.
Problem load_problem(ProblemFile file);

}  // namespace jetham
