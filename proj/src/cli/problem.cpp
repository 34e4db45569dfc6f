#include "jetham/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "jetham/errors.hpp"
#include "jetham/parse.hpp"

namespace jetham {

namespace {

std::string_view trim(std::string_view s, std::size_t* offset = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (offset != nullptr) *offset += b;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(std::string_view value, char sep, int line, int column) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = value.find(sep, start);
    std::string_view piece = value.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    std::size_t off = start;
    auto item = trim(piece, &off);
    if (item.empty()) throw ParseError("empty list entry", column + static_cast<int>(off), line);
    out.emplace_back(item);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view value, int line, int column) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError("expected an integer, got '" + std::string(value) + "'", column, line);
  }
  return v;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  ProblemFile pf;
  bool seen_indep = false, seen_dep = false, seen_lag = false;
  std::vector<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t lead = 0;
    auto content = trim(raw, &lead);
    if (content.empty() || content.front() == '#') continue;

    std::size_t eq = raw.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", static_cast<int>(lead) + 1, line_no);
    std::string key(trim(raw.substr(0, eq)));
    std::size_t value_off = eq + 1;
    auto value = trim(raw.substr(eq + 1), &value_off);
    const int col = static_cast<int>(value_off) + 1;
    if (value.empty()) throw ParseError("missing value for '" + key + "'", col, line_no);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ParseError("duplicate key '" + key + "'", static_cast<int>(lead) + 1, line_no);
    }
    seen.push_back(key);

    if (key == "independents") {
      pf.independents = split_list(value, ',', line_no, col);
      seen_indep = true;
    } else if (key == "dependents") {
      pf.dependents = split_list(value, ',', line_no, col);
      seen_dep = true;
    } else if (key == "lagrangian") {
      pf.lagrangian = std::string(value);
      pf.lagrangian_line = line_no;
      pf.lagrangian_column = col;
      seen_lag = true;
    } else if (key == "order") {
      pf.order = parse_number<int>(value, line_no, col);
      if (*pf.order < 1) throw ParseError("order must be at least 1", col, line_no);
    } else if (key == "rank_samples") {
      pf.rank_samples = parse_number<int>(value, line_no, col);
      if (pf.rank_samples < 1) throw ParseError("rank_samples must be at least 1", col, line_no);
    } else if (key == "seed") {
      pf.seed = parse_number<std::uint64_t>(value, line_no, col);
    } else if (key == "auto_extend") {
      if (value == "true") {
        pf.auto_extend = true;
      } else if (value == "false") {
        pf.auto_extend = false;
      } else {
        throw ParseError("auto_extend must be true or false", col, line_no);
      }
    } else if (key == "rho") {
      pf.rho = split_list(value, ';', line_no, col);
      pf.rho_line = line_no;
      pf.rho_column = col;
    } else {
      throw ParseError("unknown key '" + key + "'", static_cast<int>(lead) + 1, line_no);
    }
  }
  const int last = std::max(line_no, 1);
  if (!seen_indep) throw ParseError("missing key 'independents'", 1, last);
  if (!seen_dep) throw ParseError("missing key 'dependents'", 1, last);
  if (!seen_lag) throw ParseError("missing key 'lagrangian'", 1, last);
  return pf;
}

ProblemFile read_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

Problem load_problem(ProblemFile file) {
  int max_order = file.order.value_or(static_cast<int>(MultiIndex::kMaxOrder) / 2);
  JetContext ctx = [&] {
    try {
      return JetContext(file.independents, file.dependents, max_order, file.auto_extend);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 1, 0);
    }
  }();
  Expr density;
  try {
    density = parse(file.lagrangian, ctx);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), file.lagrangian_column + e.column() - 1, file.lagrangian_line);
  }
  LagrangianDensity lag(ctx, density, file.order);

  std::vector<Expr> rho;
  if (!file.rho.empty()) {
    if (static_cast<int>(file.rho.size()) != ctx.n()) {
      throw ParseError("rho needs one entry per independent", file.rho_column, file.rho_line);
    }
    for (const auto& r : file.rho) {
      try {
        rho.push_back(parse(r, lag.context()));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " (in rho)", file.rho_column, file.rho_line);
      }
    }
  }
  return Problem{std::move(file), std::move(lag), std::move(rho)};
}

}  // namespace jetham
