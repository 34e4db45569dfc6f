#include <gtest/gtest.h>

#include <algorithm>

#include "jetham/errors.hpp"
#include "jetham/jetcalc.hpp"
#include "jetham/pdham.hpp"
#include "support.hpp"

using namespace jetham;
using jetham::testing::kdv_lagrangian;

namespace {

LagrangianDensity make(std::vector<std::string> indep, const std::string& text, std::optional<int> order = std::nullopt) {
  JetContext ctx(std::move(indep), {"u"}, 4);
  return LagrangianDensity(ctx, parse(text, ctx), order);
}

std::vector<Expr> rows(const LagrangianDensity& lag, const std::vector<std::string>& texts) {
  std::vector<Expr> out;
  for (const auto& t : texts) out.push_back(sign_normalized(parse(t, lag.context())));
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  return out;
}

std::vector<std::string> names(const std::vector<CoordinateId>& cs, const JetContext& ctx) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(ctx.name(c));
  return out;
}

}  // namespace

TEST(MomentumContext, Counts) {
  JetContext ctx({"t", "x"}, {"u", "v"}, 4);
  MomentumContext m(ctx, 1);
  EXPECT_EQ(m.momenta().size(), 2u * 2u * 3u);
  EXPECT_EQ(m.top_jets().size(), 2u * 3u);
  EXPECT_EQ(m.jet_coordinates().size(), 2u * 6u);
  auto momenta = m.momenta();
  EXPECT_TRUE(std::is_sorted(momenta.begin(), momenta.end()));
}

TEST(Energy, Examples) {
  auto kdv = kdv_lagrangian();
  EXPECT_EQ(energy_density(kdv, 1).value,
            parse("p_.t*u_t + p_.x*u_x + p_t.t*u_tt + (p_t.x + p_x.t)*u_tx + p_x.x*u_xx - u_x^3 + 1/2*u_x*u_t "
                  "- 1/2*u_xx^2",
                  kdv.context()));
  auto zero = make({"x"}, "0", 1);
  EXPECT_EQ(energy_density(zero, 0).value, parse("p_.x*u_x", zero.context()));
  auto particle = make({"t"}, "1/2*u_t^2");
  EXPECT_EQ(energy_density(particle, 0).value, parse("p_.t*u_t - 1/2*u_t^2", particle.context()));
}

TEST(Elh, KdvRows) {
  auto kdv = kdv_lagrangian();
  auto sys = elh_system(kdv, 1);
  EXPECT_EQ(sys.size(), 12u);
  const auto& ctx = kdv.context();
  auto row = [&](const std::string& label) { return sys.at(label).residual; };
  EXPECT_EQ(row("momentum[u]"), parse("p_.t,t + p_.x,x", ctx));
  EXPECT_EQ(row("momentum[u_t]"), parse("p_t.t,t + p_t.x,x + 1/2*u_x + p_.t", ctx));
  EXPECT_EQ(row("momentum[u_x]"), parse("p_x.t,t + p_x.x,x - 3*u_x^2 + 1/2*u_t + p_.x", ctx));
  EXPECT_EQ(row("constraint[u_tt]"), parse("p_t.t", ctx));
  EXPECT_EQ(row("constraint[u_tx]"), parse("p_t.x + p_x.t", ctx));
  EXPECT_EQ(row("constraint[u_xx]"), parse("p_x.x - u_xx", ctx));
  EXPECT_EQ(row("contact[u_t,x]"), parse("u_t,x - u_tx", ctx));
  EXPECT_EQ(row("contact[u_x,t]"), parse("u_x,t - u_tx", ctx));
}

TEST(Elh, MatchesPdHamiltonEquationsOfTheForm) {
  for (auto lag : {kdv_lagrangian(), make({"t", "x"}, "1/2*u_t^2 - 1/2*u_x^2"), make({"t"}, "u*u_tt^2 + t*u_t", 2)}) {
    int level = lag.level();
    auto direct = elh_system(lag, level);
    auto from_form = pd_hamilton_equations(elh_form(lag, level));
    EXPECT_EQ(direct.canonical_residuals(), from_form.canonical_residuals());
  }
}

TEST(Elh, SmallCases) {
  auto zero = make({"x"}, "0", 1);
  EXPECT_EQ(elh_system(zero, 0).canonical_residuals(), rows(zero, {"p_.x,x", "u,x - u_x", "p_.x"}));
  auto particle = make({"t"}, "1/2*u_t^2");
  EXPECT_EQ(elh_system(particle, 0).canonical_residuals(), rows(particle, {"p_.t,t", "u,t - u_t", "p_.t - u_t"}));
}

TEST(Elh, OrderMismatch) {
  auto kdv = kdv_lagrangian();
  EXPECT_THROW(elh_system(kdv, 0), DomainError);
  EXPECT_NO_THROW(elh_system(kdv, 2));
}

TEST(Constraints, Examples) {
  auto kdv = kdv_lagrangian();
  EXPECT_EQ(constraints(kdv, 1).canonical_residuals(), rows(kdv, {"p_t.t", "p_t.x + p_x.t", "p_x.x - u_xx"}));
  auto wave = make({"t", "x"}, "1/2*u_t^2 - 1/2*u_x^2");
  EXPECT_EQ(constraints(wave, 0).canonical_residuals(), rows(wave, {"p_.t - u_t", "p_.x + u_x"}));
  auto zero = make({"t", "x"}, "0", 2);
  EXPECT_EQ(constraints(zero, 1).canonical_residuals(), rows(zero, {"p_t.t", "p_t.x + p_x.t", "p_x.x"}));
}

TEST(Constraints, AreTheConstraintRowsOfElh) {
  auto kdv = kdv_lagrangian();
  auto elh = elh_system(kdv, 1);
  auto rows = constraints(kdv, 1);
  for (const auto& eq : rows.equations()) EXPECT_EQ(elh.at(eq.label).residual, eq.residual);
}

TEST(Hessian, Kdv) {
  auto report = hessian(kdv_lagrangian(), 1);
  EXPECT_EQ(report.dim, 3);
  EXPECT_EQ(report.rank, 1);
  EXPECT_FALSE(report.regular);
  EXPECT_TRUE(report.constant_rank);
  EXPECT_EQ(report.sample_ranks.size(), 5u);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      EXPECT_EQ(report.matrix.entries[a][b], Expr(a == 2 && b == 2 ? 1 : 0));
    }
  }
}

TEST(Hessian, SmallCases) {
  auto square = make({"x"}, "1/2*u_xx^2");
  auto r = hessian(square, 1);
  EXPECT_EQ(r.dim, 1);
  EXPECT_TRUE(r.regular);
  auto linear = make({"t", "x"}, "u*u_tt + u_x*u_xx", 2);
  auto z = hessian(linear, 1);
  EXPECT_EQ(z.rank, 0);
  EXPECT_FALSE(z.regular);
}

TEST(Hessian, VaryingRankIsReported) {
  // Rank 1 away from u_x = 0, rank 0 on it: with enough samples the ranks differ.
  auto lag = make({"x"}, "u*u_xx^2");
  RankOptions opts;
  opts.samples = 50;
  auto r = hessian(lag, 1, opts);
  EXPECT_EQ(r.rank, 1);
  EXPECT_FALSE(r.constant_rank);
  EXPECT_FALSE(r.regular);
}

TEST(Hessian, SeedDeterminism) {
  auto lag = make({"x"}, "u*u_xx^2");
  RankOptions opts{20, 7};
  EXPECT_EQ(hessian(lag, 1, opts).sample_ranks, hessian(lag, 1, opts).sample_ranks);
}

TEST(Reduce, Kdv) {
  auto kdv = kdv_lagrangian();
  const auto& ctx = kdv.context();
  auto red = reduce(kdv, 1);
  EXPECT_EQ(red.diagnosis, Diagnosis::reducible);
  ASSERT_TRUE(red.reduced());
  EXPECT_EQ(red.substitutions.at(CoordinateId::jet(0, {1, 1})), parse("p_x.x", ctx));
  EXPECT_EQ(red.substitutions.at(CoordinateId::momentum(0, {1}, 0)), parse("-p_t.x", ctx));
  EXPECT_EQ(red.substitutions.at(CoordinateId::momentum(0, {0}, 0)), Expr());
  EXPECT_EQ(red.substitutions.size(), 3u);
  EXPECT_EQ(names(red.p_coords, ctx),
            (std::vector<std::string>{"t", "x", "u", "u_t", "u_x", "u_tt", "u_tx", "p_.t", "p_.x", "p_t.x", "p_x.x"}));
  EXPECT_EQ(names(red.p0_coords, ctx),
            (std::vector<std::string>{"t", "x", "u", "u_t", "u_x", "p_.t", "p_.x", "p_t.x", "p_x.x"}));
  EXPECT_EQ(red.energy_on_p, parse("p_.t*u_t + p_.x*u_x + 1/2*p_x.x^2 - u_x^3 + 1/2*u_x*u_t", ctx));
  EXPECT_EQ(red.hamiltonian, red.energy_on_p);

  std::vector<std::string> expected = {
      "p_.t,t + p_.x,x",
      "p_t.x,x + 1/2*u_x + p_.t",
      "-p_t.x,t + p_x.x,x - 3*u_x^2 + 1/2*u_t + p_.x",
      "u,t - u_t",
      "u,x - u_x",
      "u_t,x - u_x,t",
      "u_x,x - p_x.x",
  };
  EXPECT_EQ(red.equations_on_p->canonical_residuals(), rows(kdv, expected));
  EXPECT_EQ(red.hdw->canonical_residuals(), rows(kdv, expected));
}

TEST(Reduce, EliminatedCoordinatesDoNotSurvive) {
  auto red = reduce(kdv_lagrangian(), 1);
  for (const auto& [c, e] : red.substitutions) {
    EXPECT_FALSE(red.hamiltonian.depends_on(c));
    for (const auto& eq : red.hdw->equations()) {
      EXPECT_FALSE(eq.residual.depends_on(c));
      EXPECT_FALSE(eq.residual.depends_on(c.comma(0)));
      EXPECT_FALSE(eq.residual.depends_on(c.comma(1)));
    }
  }
}

TEST(Reduce, WaveIsRegular) {
  auto wave = make({"t", "x"}, "1/2*u_t^2 - 1/2*u_x^2");
  const auto& ctx = wave.context();
  auto red = reduce(wave, 0);
  EXPECT_EQ(red.diagnosis, Diagnosis::regular);
  EXPECT_EQ(red.hamiltonian, parse("1/2*p_.t^2 - 1/2*p_.x^2", ctx));
  EXPECT_EQ(red.hdw->canonical_residuals(), rows(wave, {"u,t - p_.t", "u,x + p_.x", "p_.t,t + p_.x,x"}));
  // The regular display u,_i = ∂H/∂p^{.i}.
  EXPECT_EQ(partial(red.hamiltonian, CoordinateId::momentum(0, {}, 0)), red.substitutions.at(CoordinateId::jet(0, {0})));
  EXPECT_EQ(partial(red.hamiltonian, CoordinateId::momentum(0, {}, 1)), red.substitutions.at(CoordinateId::jet(0, {1})));
}

TEST(Reduce, ZeroLagrangian) {
  auto zero = make({"x"}, "0", 1);
  auto red = reduce(zero, 0);
  ASSERT_TRUE(red.reduced());
  EXPECT_EQ(red.diagnosis, Diagnosis::reducible);
  EXPECT_TRUE(red.substitutions.at(CoordinateId::momentum(0, {}, 0)).is_zero());
  EXPECT_TRUE(red.hamiltonian.is_zero());
}

TEST(Reduce, Diagnoses) {
  auto cubic = make({"x"}, "u_x^3");
  EXPECT_EQ(reduce(cubic, 0).diagnosis, Diagnosis::nonlinear_constraints);
  EXPECT_FALSE(reduce(cubic, 0).reduced());
  auto nonconst = make({"x"}, "1/2*u*u_x^2");
  EXPECT_EQ(reduce(nonconst, 0).diagnosis, Diagnosis::nonconstant_coefficients);
  auto mixed = make({"t", "x"}, "u_t*u_x - 1/2*u_x^2");
  EXPECT_EQ(reduce(mixed, 0).diagnosis, Diagnosis::regular);
  auto degenerate = make({"t", "x"}, "1/2*(u_t + u_x)^2");
  auto d = reduce(degenerate, 0);
  EXPECT_EQ(d.diagnosis, Diagnosis::reducible);
  EXPECT_EQ(d.substitutions.at(CoordinateId::momentum(0, {}, 1)), parse("p_.t", degenerate.context()));
}

TEST(Reduce, MomentumRelationsMayInvolveLowerJets) {
  auto lag = make({"t", "x"}, "u*u_t", 1);
  auto red = reduce(lag, 0);
  EXPECT_EQ(red.diagnosis, Diagnosis::reducible);
  EXPECT_EQ(red.substitutions.at(CoordinateId::momentum(0, {}, 0)), parse("u", lag.context()));
  ASSERT_TRUE(red.reduced());
  // u*u_t = D_t(u^2/2) is a divergence: the reduced form vanishes.
  EXPECT_TRUE(red.hamiltonian.is_zero());
  EXPECT_TRUE(red.hdw->canonical_residuals().empty());
}

TEST(Reduce, ConstantConstraintsFixMomenta) {
  auto lag = make({"x"}, "u_x", 1);
  auto red = reduce(lag, 0);
  EXPECT_EQ(red.substitutions.at(CoordinateId::momentum(0, {}, 0)), Expr(1));
  auto lag2 = make({"t", "x"}, "u_tx", 2);
  auto red2 = reduce(lag2, 1);
  EXPECT_EQ(red2.substitutions.at(CoordinateId::momentum(0, {1}, 0)), parse("1 - p_t.x", lag2.context()));
}

TEST(Shift, ZeroRhoIsIdentity) {
  auto kdv = kdv_lagrangian();
  auto sys = elh_system(kdv, 1);
  std::vector<Expr> rho(2);
  auto shifted = momentum_shift(sys, rho, 1);
  ASSERT_EQ(shifted.size(), sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) EXPECT_EQ(shifted.equations()[k].residual, sys.equations()[k].residual);
}

TEST(Shift, KdvPlusDivergence) {
  auto kdv = kdv_lagrangian();
  const auto& ctx = kdv.context();
  std::vector<Expr> rho{Expr(), parse("u^2", ctx)};
  Expr div = total_derivative(rho[1], 1, ctx);
  LagrangianDensity shifted(ctx, kdv.density() + div, 2);
  auto direct = contact_reduced(elh_system(shifted, 1), 1);
  auto moved = contact_reduced(momentum_shift(elh_system(kdv, 1), rho, 1), 1);
  EXPECT_EQ(direct.canonical_residuals(), moved.canonical_residuals());
}

TEST(Shift, FirstOrderConstant) {
  auto particle = make({"t"}, "1/2*u_t^2");
  const auto& ctx = particle.context();
  std::vector<Expr> rho{parse("3*u", ctx)};
  LagrangianDensity modified(ctx, parse("1/2*u_t^2 + 3*u_t", ctx));
  auto moved = momentum_shift(elh_system(particle, 0), rho, 0);
  EXPECT_EQ(contact_reduced(elh_system(modified, 0), 0).canonical_residuals(),
            contact_reduced(moved, 0).canonical_residuals());
  EXPECT_EQ(moved.at("constraint[u_t]").residual, parse("p_.t - u_t - 3", ctx));
}

TEST(Shift, RhoOrderTooHigh) {
  auto kdv = kdv_lagrangian();
  std::vector<Expr> rho{Expr(), parse("u_xx", kdv.context())};
  EXPECT_THROW(momentum_shift(elh_system(kdv, 1), rho, 1), DomainError);
  std::vector<Expr> wrong_size{Expr()};
  EXPECT_THROW(momentum_shift(elh_system(kdv, 1), wrong_size, 1), DomainError);
}

TEST(LegendreTransport, ConstraintsVanishOnTheLegendreForm) {
  auto kdv = kdv_lagrangian();
  auto theta = legendre_form(kdv);
  std::map<CoordinateId, Expr> p;
  for (const auto& [key, coeff] : theta.coefficients()) p.emplace(CoordinateId::momentum(key.alpha, key.multi, key.index), coeff);
  for (const auto& m : MomentumContext(kdv.context(), 1).momenta()) p.emplace(m, Expr());
  auto rows = constraints(kdv, 1);
  for (const auto& eq : rows.equations()) EXPECT_TRUE(substitute(eq.residual, p).is_zero()) << eq.label;
}

TEST(Diagnosis, Names) {
  EXPECT_EQ(to_string(Diagnosis::regular), "regular");
  EXPECT_EQ(to_string(Diagnosis::submersion_failed), "submersion_failed");
}
