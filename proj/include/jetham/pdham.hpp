#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetham/equation_system.hpp"
#include "jetham/variational.hpp"

namespace jetham {

/// Coordinates of the multimomentum side at finite order l:
/// jets u^α_I with |I| <= l+1 and momenta p_α^{I.i} with |I| <= l.
class MomentumContext {
 public:
  MomentumContext(JetContext jets, int level);

  const JetContext& jets() const { return jets_; }
  int level() const { return level_; }

  /// m * n * #{I : |I| <= l}, in coordinate order.
  std::vector<CoordinateId> momenta() const;
  /// u^α_I with |I| <= l+1, in coordinate order.
  std::vector<CoordinateId> jet_coordinates() const;
  /// u^α_K with |K| = l+1.
  std::vector<CoordinateId> top_jets() const;

 private:
  JetContext jets_;
  int level_;
};

/// E_l = Σ_{|I|<=l} p_α^{I.i} u^α_{Ii} - L.
struct EnergyDensity {
  Expr value;
};

EnergyDensity energy_density(const LagrangianDensity& lag, int level);

/// Momentum rows p_α^{I.i},_i = ∂^I L - Σ_{(J,i): Ji=I} p_α^{J.i} for |I| <= l+1
/// (without the divergence when |I| = l+1) and contact rows u_I,_i = u_{Ii}
/// for |I| <= l. Residuals are sign-normalized. Labels: "momentum[u_I]",
/// "constraint[u_K]", "contact[u_I,i]".
/// Throws DomainError when the Lagrangian order exceeds l+1.
EquationSystem elh_system(const LagrangianDensity& lag, int level);

/// The |I| = l+1 rows of elh_system, which cut out the constraint bundle.
EquationSystem constraints(const LagrangianDensity& lag, int level);

struct RankOptions {
  int samples = 5;
  std::uint64_t seed = 1;
};

/// ∂²L/∂u^α_I ∂u^β_K over |I| = |K| = l+1.
struct HessianMatrix {
  std::vector<CoordinateId> index;
  std::vector<std::vector<Expr>> entries;
};

struct HessianReport {
  HessianMatrix matrix;
  /// Exact rank at each random rational sample point.
  std::vector<int> sample_ranks;
  int dim = 0;
  /// Maximum observed rank.
  int rank = 0;
  bool constant_rank = true;
  /// Full rank at every sample.
  bool regular = false;
};

HessianReport hessian(const LagrangianDensity& lag, int level, const RankOptions& options = {});

/// Coordinate expression of a PD-Hamiltonian system
///   ω = Σ_a dF_a ∧ dG_a ∧ d^{n-1}x_{i_a} - dE ∧ dⁿx
/// on a bundle with the given fiber coordinates.
struct PdHamiltonianForm {
  struct Pair {
    Expr momentum;
    Expr conjugate;
    int direction;
  };

  JetContext ctx;
  std::vector<CoordinateId> coordinates;
  std::vector<Pair> pairs;
  Expr energy;
};

/// ω_l = Σ_{|I|<=l} dp_α^{I.i} ∧ du^α_I ∧ d^{n-1}x_i - dE_l ∧ dⁿx.
PdHamiltonianForm elh_form(const LagrangianDensity& lag, int level);

/// Equations of i_{j¹σ} ω = 0: for each fiber coordinate y,
///   Σ_a (∂F_a/∂y · D'_{i_a} G_a - ∂G_a/∂y · D'_{i_a} F_a) - ∂E/∂y = 0.
/// Rows that vanish identically are dropped; labels are "delta[y]".
EquationSystem pd_hamilton_equations(const PdHamiltonianForm& form);

enum class Diagnosis {
  regular,
  reducible,
  nonlinear_constraints,
  nonconstant_coefficients,
  submersion_failed,
};

std::string to_string(Diagnosis d);

/// Outcome of reducing ω_l to the constraint bundle P and to its image P0.
struct ReducedSystem {
  Diagnosis diagnosis = Diagnosis::regular;
  std::string detail;
  EnergyDensity energy;
  EquationSystem constraint_rows;
  /// Coordinates of P, including the independents.
  std::vector<CoordinateId> p_coords;
  /// Coordinates of P0.
  std::vector<CoordinateId> p0_coords;
  /// Eliminated coordinate -> expression in surviving coordinates.
  std::map<CoordinateId, Expr> substitutions;
  /// E_l restricted to P.
  Expr energy_on_p;
  /// H on P0 with E_l|_P = q*H.
  Expr hamiltonian;
  /// PD-Hamilton equations of ω_l restricted to P.
  std::optional<EquationSystem> equations_on_p;
  /// HDW equations on P0.
  std::optional<EquationSystem> hdw;

  bool reduced() const { return hdw.has_value(); }
};

/// Splits the constraint rows into rows solved for top jets (exact
/// elimination with constant pivots, top jets in ascending order) and pure
/// momentum relations (pivoting on the greatest momentum first), then
/// restricts ω_l. Nonlinear or non-constant-coefficient constraints stop the
/// reduction with a diagnosis; inconsistent rows throw DegenerateLagrangian.
ReducedSystem reduce(const LagrangianDensity& lag, int level);

/// Pulls an ELH-type system back along p ↦ p - ϑ with ϑ_α^{I.i} = ∂ρ^i/∂u^α_I,
/// the comma coordinates transforming by p,_j ↦ p,_j - D'_j ϑ. With this,
/// elh_system(L + Σ_i D_i ρ^i) and momentum_shift(elh_system(L), ρ) agree
/// modulo the contact rows. Throws DomainError when ρ has jets above l.
EquationSystem momentum_shift(const EquationSystem& system, std::span<const Expr> rho, int level);

/// Replaces u_I,_j by u_{Ij} (|I| <= l) in every row that is not itself a
/// contact row. Used to compare ELH systems modulo contact equations.
EquationSystem contact_reduced(const EquationSystem& system, int level);

}  // namespace jetham
