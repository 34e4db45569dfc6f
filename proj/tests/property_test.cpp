#include <gtest/gtest.h>

#include <cmath>

#include "jetham/jetcalc.hpp"
#include "jetham/numeric.hpp"
#include "jetham/pdham.hpp"
#include "support.hpp"

using namespace jetham;
using jetham::testing::Gen;

namespace {

constexpr std::uint64_t kSeed = 20240521;

/// Random polynomial Lagrangian with n, m <= 2, declared order <= max_order.
LagrangianDensity random_lagrangian(Gen& g, int max_order, int max_terms = 6, int max_degree = 4) {
  int order = g.uniform(1, max_order);
  JetContext ctx = g.context(2, 2, order);
  Expr L = g.jet_expr(ctx, order, max_terms, max_degree, true);
  return LagrangianDensity(ctx, L, order);
}

std::vector<Expr> random_rho(Gen& g, const JetContext& ctx, int level) {
  std::vector<Expr> rho;
  for (int i = 0; i < ctx.n(); ++i) rho.push_back(g.jet_expr(ctx, level, 3, 3, true));
  return rho;
}

Expr divergence(const std::vector<Expr>& rho, const JetContext& ctx) {
  Expr d;
  for (int i = 0; i < ctx.n(); ++i) d += total_derivative(rho[static_cast<std::size_t>(i)], i, ctx);
  return d;
}

}  // namespace

TEST(SymcoreProperties, NormalizationIsIdempotent) {
  Gen g(kSeed);
  for (int trial = 0; trial < 300; ++trial) {
    JetContext ctx = g.context(2, 2, 3);
    Expr e = g.mixed_expr(ctx, 3, 6, 4);
    std::vector<Term> terms(e.terms().begin(), e.terms().end());
    EXPECT_EQ(Expr::from_terms(terms), e) << "trial " << trial;
    // Shuffled and split terms normalize to the same value.
    std::vector<Term> doubled;
    for (const auto& t : terms) {
      doubled.push_back({t.monomial, t.coeff / 2});
      doubled.push_back({t.monomial, t.coeff / 2});
    }
    std::shuffle(doubled.begin(), doubled.end(), g.engine());
    EXPECT_EQ(Expr::from_terms(doubled), e) << "trial " << trial;
  }
}

TEST(SymcoreProperties, RingLaws) {
  Gen g(kSeed + 1);
  for (int trial = 0; trial < 300; ++trial) {
    JetContext ctx = g.context(2, 2, 3);
    Expr a = g.mixed_expr(ctx, 3, 5, 3);
    Expr b = g.mixed_expr(ctx, 3, 5, 3);
    Expr c = g.mixed_expr(ctx, 3, 5, 3);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * Expr(1), a);
  }
}

TEST(SymcoreProperties, PartialsCommute) {
  Gen g(kSeed + 2);
  for (int trial = 0; trial < 300; ++trial) {
    JetContext ctx = g.context(2, 2, 3);
    Expr e = g.mixed_expr(ctx, 3, 6, 4);
    auto coords = e.coordinates();
    for (const auto& c1 : coords) {
      for (const auto& c2 : coords) EXPECT_EQ(partial(partial(e, c1), c2), partial(partial(e, c2), c1));
    }
  }
}

TEST(SymcoreProperties, ParseRenderRoundTrip) {
  Gen g(kSeed + 3);
  for (int trial = 0; trial < 300; ++trial) {
    JetContext ctx = g.context(2, 2, 3);
    Expr e = g.mixed_expr(ctx, 3, 6, 4);
    std::string text = render(e, ctx);
    EXPECT_EQ(parse(text, ctx), e) << text;
    EXPECT_EQ(render(parse(text, ctx), ctx), text);
  }
}

TEST(SymcoreProperties, SubstitutionIsAHomomorphism) {
  Gen g(kSeed + 4);
  for (int trial = 0; trial < 200; ++trial) {
    JetContext ctx = g.context(2, 1, 2);
    Expr a = g.jet_expr(ctx, 2, 4, 3);
    Expr b = g.jet_expr(ctx, 2, 4, 3);
    std::map<CoordinateId, Expr> bind{{g.jet(ctx, 2), g.jet_expr(ctx, 2, 3, 2)}};
    EXPECT_EQ(substitute(a * b, bind), substitute(a, bind) * substitute(b, bind));
    EXPECT_EQ(substitute(a + b, bind), substitute(a, bind) + substitute(b, bind));
  }
}

TEST(JetcalcProperties, TotalDerivativesCommuteAndObeyLeibniz) {
  Gen g(kSeed + 5);
  for (int trial = 0; trial < 500; ++trial) {
    JetContext ctx = g.context(2, 2, 6);
    Expr a = g.jet_expr(ctx, 3, 5, 3, true);
    Expr b = g.jet_expr(ctx, 3, 5, 3, true);
    for (int i = 0; i < ctx.n(); ++i) {
      for (int j = 0; j < ctx.n(); ++j) {
        EXPECT_EQ(total_derivative(total_derivative(a, i, ctx), j, ctx),
                  total_derivative(total_derivative(a, j, ctx), i, ctx));
      }
      EXPECT_EQ(total_derivative(a * b, i, ctx), total_derivative(a, i, ctx) * b + a * total_derivative(b, i, ctx));
    }
  }
}

TEST(JetcalcProperties, RemovalsReassemble) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& I : multi_indices_up_to(n, 5)) {
      int total = 0;
      for (const auto& r : remove_one(I)) {
        total += r.multiplicity;
        EXPECT_EQ(r.rest.with(r.index), I);
        EXPECT_EQ(r.multiplicity, I.count(r.index));
      }
      EXPECT_EQ(total, static_cast<int>(I.order()));
    }
  }
}

TEST(VariationalProperties, FirstVariationIdentity) {
  Gen g(kSeed + 6);
  for (int trial = 0; trial < 60; ++trial) {
    auto lag = random_lagrangian(g, 3);
    const auto& ctx = lag.context();
    auto construction = legendre_construction(lag);
    auto E = euler_lagrange(lag);
    EXPECT_EQ(construction.level_zero, E.components()) << render(lag.density(), ctx);
    EXPECT_EQ(horizontal_d_legendre(construction.theta, ctx) + vertical_differential(lag), E.as_cartan())
        << render(lag.density(), ctx);
  }
}

TEST(VariationalProperties, DivergenceInvarianceAndLinearity) {
  Gen g(kSeed + 7);
  for (int trial = 0; trial < 60; ++trial) {
    auto lag = random_lagrangian(g, 2);
    const auto& ctx = lag.context();
    auto rho = random_rho(g, ctx, lag.level());
    LagrangianDensity shifted(ctx, lag.density() + divergence(rho, ctx), lag.order());
    EXPECT_EQ(euler_lagrange(shifted).components(), euler_lagrange(lag).components());

    LagrangianDensity other(ctx, g.jet_expr(ctx, lag.order(), 4, 3, true), lag.order());
    Rational a = g.rational(), b = g.rational();
    LagrangianDensity combo(ctx, lag.density().scaled(a) + other.density().scaled(b), lag.order());
    auto E1 = euler_lagrange(lag), E2 = euler_lagrange(other), E = euler_lagrange(combo);
    for (int alpha = 0; alpha < ctx.m(); ++alpha) {
      EXPECT_EQ(E.component(alpha), E1.component(alpha).scaled(a) + E2.component(alpha).scaled(b));
    }
    EXPECT_EQ(SourceForm::from_cartan(E.as_cartan(), ctx.m()), E);

    // Both Legendre forms close onto the shared source form.
    auto theta = legendre_form(lag);
    auto theta_shifted = legendre_form(shifted);
    EXPECT_EQ(horizontal_d_legendre(theta_shifted, ctx) + vertical_differential(shifted),
              horizontal_d_legendre(theta, ctx) + vertical_differential(lag));
  }
}

TEST(PdhamProperties, ConstraintRowsAndHessianSymmetry) {
  Gen g(kSeed + 8);
  for (int trial = 0; trial < 80; ++trial) {
    auto lag = random_lagrangian(g, 3);
    int level = lag.level();
    auto elh = elh_system(lag, level);
    auto rows = constraints(lag, level);
    for (const auto& eq : rows.equations()) EXPECT_EQ(elh.at(eq.label).residual, eq.residual);
    auto report = hessian(lag, level, {2, 1});
    for (std::size_t a = 0; a < report.matrix.index.size(); ++a) {
      for (std::size_t b = 0; b < report.matrix.index.size(); ++b) {
        EXPECT_EQ(report.matrix.entries[a][b], report.matrix.entries[b][a]);
      }
    }
    EXPECT_LE(report.rank, report.dim);
  }
}

TEST(PdhamProperties, TopLevelLegendreAgreement) {
  Gen g(kSeed + 9);
  for (int trial = 0; trial < 80; ++trial) {
    auto lag = random_lagrangian(g, 3);
    auto theta = legendre_form(lag);
    std::map<CoordinateId, Expr> p;
    for (const auto& m : MomentumContext(lag.context(), lag.level()).momenta()) {
      p.emplace(m, theta.at(m.alpha(), m.multi(), m.index()));
    }
    auto rows = constraints(lag, lag.level());
    for (const auto& eq : rows.equations()) {
      EXPECT_TRUE(substitute(eq.residual, p).is_zero()) << eq.label;
    }
  }
}

TEST(PdhamProperties, ElhAgreesWithItsForm) {
  Gen g(kSeed + 10);
  for (int trial = 0; trial < 60; ++trial) {
    auto lag = random_lagrangian(g, 2);
    int level = lag.level();
    EXPECT_EQ(elh_system(lag, level).canonical_residuals(),
              pd_hamilton_equations(elh_form(lag, level)).canonical_residuals());
  }
}

TEST(PdhamProperties, ShiftEquivalence) {
  Gen g(kSeed + 11);
  for (int trial = 0; trial < 100; ++trial) {
    auto lag = random_lagrangian(g, 2);
    const auto& ctx = lag.context();
    int level = lag.level();
    auto rho = random_rho(g, ctx, level);
    LagrangianDensity shifted(ctx, lag.density() + divergence(rho, ctx), lag.order());
    auto direct = contact_reduced(elh_system(shifted, level), level);
    auto moved = contact_reduced(momentum_shift(elh_system(lag, level), rho, level), level);
    EXPECT_EQ(direct.canonical_residuals(), moved.canonical_residuals()) << "trial " << trial;
  }
}

TEST(PdhamProperties, ReductionSoundness) {
  Gen g(kSeed + 12);
  int reduced = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // Quadratic in the top jets so that many cases reduce.
    auto lag = random_lagrangian(g, 2, 4, 2);
    auto red = reduce(lag, lag.level());
    if (!red.reduced()) continue;
    ++reduced;
    EXPECT_EQ(substitute(red.energy.value, red.substitutions), red.energy_on_p);
    for (const auto& [c, e] : red.substitutions) {
      EXPECT_FALSE(red.hamiltonian.depends_on(c));
      for (const auto& eq : red.hdw->equations()) EXPECT_FALSE(eq.residual.depends_on(c)) << eq.label;
    }
    for (const auto& c : red.hamiltonian.coordinates()) {
      EXPECT_NE(std::find(red.p0_coords.begin(), red.p0_coords.end(), c), red.p0_coords.end());
    }
  }
  EXPECT_GT(reduced, 50);
}

TEST(NumericProperties, EvalIsARingHomomorphism) {
  Gen g(kSeed + 13);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    JetContext ctx = g.context(2, 2, 3);
    Expr a = g.mixed_expr(ctx, 3, 5, 3);
    Expr b = g.mixed_expr(ctx, 3, 5, 3);
    JetSample s;
    for (const auto& c : (a * b + a + b).coordinates()) s[c] = value(g.engine());
    double ea = eval(a, s), eb = eval(b, s);
    double scale = 1.0 + std::abs(ea) * std::abs(eb) + std::abs(ea) + std::abs(eb);
    EXPECT_NEAR(eval(a * b, s), ea * eb, 1e-12 * scale * 100);
    EXPECT_NEAR(eval(a + b, s), ea + eb, 1e-12 * scale * 100);
  }
}

TEST(NumericProperties, TotalDerivativeMatchesFiniteDifferences) {
  Gen g(kSeed + 14);
  const std::size_t n = 64;
  const double h = 0.05;
  Axis t{"t", n, -1.6, h}, x{"x", n, -1.6, h};
  GridFunction grid({t, x}, {"u"});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double tv = t.coordinate(a), xv = x.coordinate(b);
      grid.field("u")[a * n + b] = std::sin(tv + 0.3) * std::cos(0.7 * xv) + 0.2 * xv;
    }
  }
  JetContext ctx({"t", "x"}, {"u"}, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Expr e = g.jet_expr(ctx, 1, 4, 3, true);
    for (int i = 0; i < 2; ++i) {
      Expr De = total_derivative(e, i, ctx);
      // Sample e on the grid via exact jets, then difference it along x^i.
      auto jets = fd_prolong(grid, ctx, 2);
      std::vector<double> along(jets.size());
      for (std::size_t k = 0; k < jets.size(); ++k) along[k] = eval(e, jets.sample(k));
      JetField field{ctx, jets.axes, jets.box, {{CoordinateId::jet(0), along}}};
      auto d = fd_commas(field, i, {CoordinateId::jet(0)});
      auto inner = jets.cropped(d.box);
      const auto& values = d.values.at(CoordinateId::jet(0).comma(i));
      double worst = 0, scale = 1;
      for (std::size_t k = 0; k < inner.size(); ++k) {
        double exact = eval(De, inner.sample(k));
        worst = std::max(worst, std::abs(values[k] - exact));
        scale = std::max(scale, std::abs(exact));
      }
      EXPECT_LT(worst / scale, 1e-4) << render(e, ctx);
    }
  }
}
