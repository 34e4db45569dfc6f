#include "jetham/parse.hpp"

#include <cctype>
#include <optional>
#include <string>

#include "jetham/errors.hpp"

namespace jetham {

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

/// Splits a concatenation of independent names ("txx") into indices,
/// preferring longer names first.
std::optional<std::vector<int>> split_subscript(std::string_view s, const JetContext& ctx) {
  if (s.empty()) return std::vector<int>{};
  std::vector<int> order(static_cast<std::size_t>(ctx.n()));
  for (int i = 0; i < ctx.n(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ctx.independents()[static_cast<std::size_t>(a)].size() >
           ctx.independents()[static_cast<std::size_t>(b)].size();
  });
  for (int i : order) {
    const auto& name = ctx.independents()[static_cast<std::size_t>(i)];
    if (s.substr(0, name.size()) == name) {
      if (auto rest = split_subscript(s.substr(name.size()), ctx)) {
        rest->insert(rest->begin(), i);
        return rest;
      }
    }
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view text, const JetContext& ctx) : text_(text), ctx_(ctx) {}

  Expr parse_all() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", column());
    Expr e = sum();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

  CoordinateId coordinate_only() {
    skip_space();
    if (at_end() || !is_alpha(peek())) fail("expected a coordinate name");
    CoordinateId c = coordinate();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return c;
  }

 private:
  std::string_view text_;
  const JetContext& ctx_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  int column() const { return static_cast<int>(pos_) + 1; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, column()); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, static_cast<int>(at) + 1);
  }
  [[noreturn]] void unsupported(const std::string& msg, std::size_t at) const {
    throw UnsupportedExpression(msg, static_cast<int>(at) + 1);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr acc = product();
    for (;;) {
      if (accept('+')) {
        acc += product();
      } else if (accept('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Expr product() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        skip_space();
        std::size_t at = pos_;
        Expr d = unary();
        if (!d.is_constant()) unsupported("division by a non-constant expression", at);
        if (d.is_zero()) fail_at("division by zero", at);
        acc = acc.scaled(1 / d.constant_term());
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t at = pos_;
      bool paren = accept('(');
      skip_space();
      if (peek() == '-') unsupported("negative exponent", at);
      if (!is_digit(peek())) fail("expected a non-negative integer exponent");
      std::size_t start = pos_;
      while (is_digit(peek())) ++pos_;
      if (peek() == '.') unsupported("non-integer exponent", at);
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 6) unsupported("exponent too large", at);
      if (paren && !accept(')')) fail("expected ')'");
      if (peek() == '^') fail("ambiguous chained exponent; use parentheses");
      base = pow(base, static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Expr primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (is_digit(c) || c == '.') return number();
    if (is_alpha(c)) return Expr::variable(coordinate());
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    std::string_view lit = text_.substr(start, pos_ - start);
    if (lit == ".") fail_at("malformed number", start);
    if (is_alpha(peek())) fail("missing '*' between number and identifier");
    return Expr(rational_from_decimal(lit));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (is_alnum(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  CoordinateId coordinate() {
    std::size_t start = pos_;
    std::string name = identifier();
    CoordinateId c;
    if (name == JetContext::kMomentumSymbol) {
      c = momentum(start);
    } else if (auto a = ctx_.dependent_index(name)) {
      MultiIndex I;
      if (peek() == '_') {
        ++pos_;
        std::size_t sub_start = pos_;
        std::string sub = identifier();
        if (sub.empty()) fail("malformed subscript: expected independent variable names after '_'");
        auto split = split_subscript(sub, ctx_);
        if (!split) fail_at("malformed subscript '" + sub + "'", sub_start);
        I = MultiIndex(*split);
      }
      c = CoordinateId::jet(*a, I);
    } else if (auto i = ctx_.independent_index(name)) {
      if (peek() == '_') fail("independent variables take no subscript");
      c = CoordinateId::independent(*i);
    } else {
      skip_space();
      if (peek() == '(') unsupported("function '" + name + "' is not polynomial", start);
      fail_at("unknown identifier '" + name + "'", start);
    }
    if (peek() == ',') {
      if (c.kind() == CoordKind::independent) fail("independent variables take no comma derivative");
      ++pos_;
      std::size_t dir_start = pos_;
      std::string dir = identifier();
      auto j = ctx_.independent_index(dir);
      if (!j) fail_at("expected an independent variable after ','", dir_start);
      c = c.comma(*j);
    }
    try {
      ctx_.check(c);
    } catch (const DomainError& err) {
      fail_at(err.what(), start);
    }
    return c;
  }

  CoordinateId momentum(std::size_t start) {
    int alpha = 0;
    if (peek() == '^') {
      ++pos_;
      std::size_t tag_start = pos_;
      std::string tag = identifier();
      auto a = ctx_.dependent_index(tag);
      if (!a) fail_at("unknown dependent variable '" + tag + "' in momentum tag", tag_start);
      alpha = *a;
    } else if (ctx_.m() > 1) {
      fail("momentum needs a dependent tag (p^name_...) when there are several dependents");
    }
    if (peek() != '_') fail_at("malformed momentum: expected p_<multiindex>.<direction>", start);
    ++pos_;
    std::size_t sub_start = pos_;
    std::string sub = identifier();
    auto split = split_subscript(sub, ctx_);
    if (!split) fail_at("malformed subscript '" + sub + "'", sub_start);
    if (peek() != '.') fail("malformed momentum: expected '.' before the direction");
    ++pos_;
    std::size_t dir_start = pos_;
    std::string dir = identifier();
    auto i = ctx_.independent_index(dir);
    if (!i) fail_at("expected an independent variable after '.'", dir_start);
    return CoordinateId::momentum(alpha, MultiIndex(*split), *i);
  }
};

}  // namespace

Expr parse(std::string_view text, const JetContext& ctx) { return Parser(text, ctx).parse_all(); }

CoordinateId parse_coordinate(std::string_view text, const JetContext& ctx) {
  return Parser(text, ctx).coordinate_only();
}

}  // namespace jetham
