// Writes sampled fields on a (t, x) grid for `jetham check-solution`.
#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "jetham/errors.hpp"
#include "jetham/numeric.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sample the KdV one-soliton (or a test field) on a (t, x) grid", "soliton_grid"};
  double c = 1.0;
  std::size_t points = 512;
  double width = 16.0;
  std::string field = "soliton";
  std::string out;
  app.add_option("--speed", c, "soliton speed c")->check(CLI::PositiveNumber);
  app.add_option("--points", points, "points per axis")->check(CLI::Range(8, 1 << 14));
  app.add_option("--width", width, "box side in units of 1/sqrt(c)")->check(CLI::PositiveNumber);
  app.add_option("--field", field, "soliton or sine")->check(CLI::IsMember({"soliton", "sine"}));
  app.add_option("--out", out, "output grid file")->required();
  CLI11_PARSE(app, argc, argv);

  const double k = std::sqrt(c);
  const double side = width / k;
  const double h = side / static_cast<double>(points - 1);
  jetham::Axis t{"t", points, -side / 2, h};
  jetham::Axis x{"x", points, -side / 2, h};
  jetham::GridFunction g({t, x}, {"u"});
  auto& u = g.field("u");
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = 0; b < points; ++b) {
      double tv = t.coordinate(a);
      double xv = x.coordinate(b);
      u[a * points + b] = field == "soliton" ? -k * std::tanh(k / 2 * (xv - c * tv)) : std::sin(xv) * std::sin(tv);
    }
  }
  try {
    g.write(out);
  } catch (const jetham::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
