#include "jetham/render.hpp"

#include <json.hpp>

namespace jetham {

namespace {

std::string plain(const Expr& e, const JetContext& ctx) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string body;
    for (const auto& f : t.monomial.factors()) {
      if (!body.empty()) body += "*";
      body += ctx.name(f.coord);
      if (f.exponent != 1) body += "^" + std::to_string(f.exponent);
    }
    if (body.empty()) {
      out += to_string(c);
    } else if (c == 1) {
      out += body;
    } else {
      out += to_string(c) + "*" + body;
    }
    first = false;
  }
  return out;
}

std::string latex_coeff(const Rational& c) {
  if (is_integer(c)) return c.get_num().get_str();
  return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
}

std::string latex(const Expr& e, const JetContext& ctx) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string body;
    for (const auto& f : t.monomial.factors()) {
      if (!body.empty()) body += " ";
      body += ctx.latex_name(f.coord);
      if (f.exponent != 1) body += "^{" + std::to_string(f.exponent) + "}";
    }
    if (body.empty()) {
      out += latex_coeff(c);
    } else if (c == 1) {
      out += body;
    } else {
      out += latex_coeff(c) + " " + body;
    }
    first = false;
  }
  return out;
}

std::string json(const Expr& e, const JetContext& ctx) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : e.terms()) {
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    for (const auto& f : t.monomial.factors()) factors.push_back({ctx.name(f.coord), f.exponent});
    terms.push_back({{"coeff", to_string(t.coeff)}, {"factors", factors}});
  }
  return terms.dump();
}

}  // namespace

std::string render(const Expr& e, const JetContext& ctx, Format format) {
  switch (format) {
    case Format::plain:
      return plain(e, ctx);
    case Format::latex:
      return latex(e, ctx);
    case Format::json:
      return json(e, ctx);
  }
  return {};
}

}  // namespace jetham
