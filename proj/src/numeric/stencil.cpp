#include "jetham/errors.hpp"
#include "jetham/numeric.hpp"

namespace jetham {

int stencil_radius(int derivative) {
  if (derivative < 0) throw NumericError("negative derivative order");
  return derivative == 0 ? 0 : (derivative + 1) / 2 + 1;
}

std::vector<Rational> central_weights(int derivative, int radius) {
  if (derivative < 0 || radius < 0 || 2 * radius < derivative) {
    throw NumericError("stencil of radius " + std::to_string(radius) + " cannot resolve derivative " +
                       std::to_string(derivative));
  }
  // Σ_j w_j j^m = k! δ_{mk} for m = 0..2r.
  const auto size = static_cast<std::size_t>(2 * radius + 1);
  std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size + 1));
  for (std::size_t m = 0; m < size; ++m) {
    for (std::size_t c = 0; c < size; ++c) {
      Rational node(static_cast<long>(c) - radius);
      Rational power(1);
      for (std::size_t e = 0; e < m; ++e) power *= node;
      a[m][c] = power;
    }
  }
  Rational factorial(1);
  for (int f = 2; f <= derivative; ++f) factorial *= f;
  a[static_cast<std::size_t>(derivative)][size] = factorial;

  for (std::size_t c = 0; c < size; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (std::size_t r = 0; r < size; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k <= size; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<Rational> w;
  for (std::size_t r = 0; r < size; ++r) {
    a[r][size].canonicalize();
    w.push_back(a[r][size]);
  }
  return w;
}

}  // namespace jetham
