#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "jetham/cli.hpp"
#include "jetham/errors.hpp"
#include "jetham/jetcalc.hpp"
#include "jetham/json_io.hpp"
#include "jetham/numeric.hpp"
#include "jetham/pdham.hpp"
#include "jetham/problem.hpp"
#include "jetham/render.hpp"

namespace jetham {

namespace {

struct Flags {
  std::string format = "plain";
  int order = 0;
  long long seed = -1;
  int rank_samples = 0;
  std::string grid;
  std::string out;
  std::string system = "el";
  int levels = 1;
};

class Printer {
 public:
  Printer(const JetContext& ctx, Format format, std::ostream& out) : ctx_(ctx), format_(format), out_(out) {}

  Format format() const { return format_; }
  std::string expr(const Expr& e) const { return render(e, ctx_, format_ == Format::latex ? Format::latex : Format::plain); }
  std::string name(const CoordinateId& c) const { return format_ == Format::latex ? ctx_.latex_name(c) : ctx_.name(c); }

  void system(const EquationSystem& s) const {
    if (format_ == Format::json) {
      json(to_json(s));
      return;
    }
    for (const auto& eq : s.equations()) equation(eq);
    if (s.equations().empty()) out_ << "0 = 0\n";
  }

  void equation(const Equation& eq, const std::string& indent = "") const {
    if (format_ == Format::latex) {
      out_ << indent << expr(eq.residual) << " = 0 \\\\ % " << eq.label << "\n";
    } else {
      out_ << indent << eq.label << ": " << expr(eq.residual) << " = 0\n";
    }
  }

  void json(const Json& j) const { out_ << j.dump(2) << "\n"; }
  std::ostream& stream() const { return out_; }

 private:
  const JetContext& ctx_;
  Format format_;
  std::ostream& out_;
};

Format parse_format(const std::string& f) {
  if (f == "latex") return Format::latex;
  if (f == "json") return Format::json;
  return Format::plain;
}

EquationSystem euler_lagrange_system(const LagrangianDensity& lag) {
  const auto& ctx = lag.context();
  auto source = euler_lagrange(lag);
  std::vector<CoordinateId> unknowns;
  std::vector<Equation> rows;
  for (int alpha = 0; alpha < ctx.m(); ++alpha) {
    unknowns.push_back(CoordinateId::jet(alpha));
    rows.push_back({"EL[" + ctx.dependents()[static_cast<std::size_t>(alpha)] + "]", source.component(alpha)});
  }
  return EquationSystem(ctx, std::move(unknowns), std::move(rows));
}

std::string theta_name(const Printer& p, const CoordinateId& momentum) {
  std::string n = p.name(momentum);
  if (p.format() == Format::latex) return "\\vartheta" + n.substr(1);
  return "theta[" + n + "]";
}

void cmd_el(const Problem& pr, const Flags&, const Printer& p) {
  auto sys = euler_lagrange_system(pr.lagrangian);
  if (p.format() == Format::json) {
    p.json(to_json(sys));
    return;
  }
  for (const auto& eq : sys.equations()) {
    if (pr.context().m() > 1) p.stream() << eq.label << ": ";
    p.stream() << p.expr(eq.residual) << " = 0\n";
  }
}

void cmd_legendre(const Problem& pr, const Flags&, const Printer& p) {
  const auto& ctx = pr.context();
  auto theta = legendre_form(pr.lagrangian);
  if (p.format() == Format::json) {
    p.json(to_json(theta, ctx));
    return;
  }
  for (const auto& [key, coeff] : theta.coefficients()) {
    p.stream() << theta_name(p, CoordinateId::momentum(key.alpha, key.multi, key.index)) << " = " << p.expr(coeff) << "\n";
  }
  if (theta.coefficients().empty()) p.stream() << "0\n";
}

void cmd_energy(const Problem& pr, const Flags&, const Printer& p) {
  auto e = energy_density(pr.lagrangian, pr.lagrangian.level());
  if (p.format() == Format::json) {
    p.json(Json{{"E", render(e.value, pr.context())}});
    return;
  }
  p.stream() << "E = " << p.expr(e.value) << "\n";
}

void cmd_hessian(const Problem& pr, const Flags& flags, const Printer& p) {
  RankOptions opts;
  opts.samples = flags.rank_samples > 0 ? flags.rank_samples : pr.file.rank_samples;
  opts.seed = flags.seed >= 0 ? static_cast<std::uint64_t>(flags.seed) : pr.file.seed;
  auto report = hessian(pr.lagrangian, pr.lagrangian.level(), opts);
  if (p.format() == Format::json) {
    p.json(to_json(report, pr.context()));
    return;
  }
  auto& o = p.stream();
  o << "dim: " << report.dim << "\n";
  o << "rank: " << report.rank << "\n";
  o << "regular: " << (report.regular ? "true" : "false") << "\n";
  o << "constant rank: " << (report.constant_rank ? "true" : "false") << "\n";
  o << "sample ranks:";
  for (int r : report.sample_ranks) o << " " << r;
  o << "\n";
  for (std::size_t a = 0; a < report.matrix.index.size(); ++a) {
    o << "row " << p.name(report.matrix.index[a]) << ":";
    for (const auto& e : report.matrix.entries[a]) o << " " << p.expr(e);
    o << "\n";
  }
}

void cmd_reduce(const Problem& pr, const Flags&, const Printer& p) {
  auto red = reduce(pr.lagrangian, pr.lagrangian.level());
  if (p.format() == Format::json) {
    p.json(to_json(red, pr.context()));
    return;
  }
  auto& o = p.stream();
  o << "diagnosis: " << to_string(red.diagnosis) << "\n";
  if (!red.detail.empty()) o << "detail: " << red.detail << "\n";
  auto coords = [&](const char* title, const std::vector<CoordinateId>& cs) {
    o << title << ":";
    for (const auto& c : cs) o << " " << p.name(c);
    o << "\n";
  };
  if (!red.reduced()) return;
  coords("P", red.p_coords);
  coords("P0", red.p0_coords);
  o << "substitutions:\n";
  for (const auto& [c, e] : red.substitutions) o << "  " << p.name(c) << " -> " << p.expr(e) << "\n";
  o << "E|P = " << p.expr(red.energy_on_p) << "\n";
  o << "H = " << p.expr(red.hamiltonian) << "\n";
  o << "equations on P:\n";
  for (const auto& eq : red.equations_on_p->equations()) p.equation(eq, "  ");
  o << "HDW:\n";
  for (const auto& eq : red.hdw->equations()) p.equation(eq, "  ");
}

void cmd_shift(const Problem& pr, const Flags&, const Printer& p) {
  if (pr.rho.empty()) throw DomainError("the shift needs 'rho' in the problem file");
  int level = pr.lagrangian.level();
  p.system(momentum_shift(elh_system(pr.lagrangian, level), pr.rho, level));
}

EquationSystem selected_system(const Problem& pr, const std::string& which) {
  int level = pr.lagrangian.level();
  if (which == "el") return euler_lagrange_system(pr.lagrangian);
  if (which == "elh") return elh_system(pr.lagrangian, level);
  if (which == "constraints") return constraints(pr.lagrangian, level);
  auto red = reduce(pr.lagrangian, level);
  if (!red.reduced()) throw DomainError("no HDW system: reduction stopped with " + to_string(red.diagnosis));
  return *red.hdw;
}

void cmd_check(const Problem& pr, const Flags& flags, const Printer& p) {
  if (flags.grid.empty()) throw DomainError("check-solution needs --grid <file>");
  auto grid = GridFunction::read(flags.grid);
  auto sys = selected_system(pr, flags.system);
  const auto& ctx = pr.context();
  bool grid_has_momenta = false;
  for (const auto& name : grid.field_names()) {
    if (name.rfind(JetContext::kMomentumSymbol, 0) == 0) grid_has_momenta = true;
  }
  std::optional<LegendreForm> theta;
  if (!grid_has_momenta) theta = legendre_form(pr.lagrangian);
  auto report = residual(sys, grid, grid_has_momenta ? &grid : nullptr, theta ? &*theta : nullptr);
  if (p.format() == Format::json) {
    p.json(to_json(report));
    return;
  }
  auto& o = p.stream();
  o << "points: " << report.points << "\n";
  char buf[64];
  for (std::size_t k = 0; k < report.labels.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.6e", report.max_abs[k]);
    o << report.labels[k] << ": " << buf << "\n";
  }
  std::snprintf(buf, sizeof buf, "%.6e", report.max());
  o << "max: " << buf << "\n";
  (void)ctx;
}

void cmd_prolong(const Problem& pr, const Flags& flags, const Printer& p) {
  if (flags.levels < 0) throw DomainError("--levels must be non-negative");
  auto el = euler_lagrange_system(pr.lagrangian);
  const JetContext& ctx = el.context();
  EquationSystem widened(ctx.with_max_order(ctx.max_order() + flags.levels), el.unknowns(), el.equations());
  p.system(prolong(widened, flags.levels));
}

void cmd_elh(const Problem& pr, const Flags&, const Printer& p) {
  p.system(elh_system(pr.lagrangian, pr.lagrangian.level()));
}

void cmd_constraints(const Problem& pr, const Flags&, const Printer& p) {
  p.system(constraints(pr.lagrangian, pr.lagrangian.level()));
}

using Command = std::function<void(const Problem&, const Flags&, const Printer&)>;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler-Lagrange, Legendre and Hamilton-de Donder-Weyl systems of polynomial Lagrangians", "jetham"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--format", flags.format, "plain, latex or json")->check(CLI::IsMember({"plain", "latex", "json"}));
  app.add_option("--order", flags.order, "override the declared order l+1")->check(CLI::PositiveNumber);
  app.add_option("--seed", flags.seed, "seed for the Hessian rank samples")->check(CLI::NonNegativeNumber);
  app.add_option("--rank-samples", flags.rank_samples, "number of Hessian rank samples")->check(CLI::PositiveNumber);
  app.add_option("--grid", flags.grid, "grid file for check-solution");
  app.add_option("--out", flags.out, "write output to this file");
  app.add_option("--system", flags.system, "system for check-solution: el, elh, constraints or hdw")
      ->check(CLI::IsMember({"el", "elh", "constraints", "hdw"}));
  app.add_option("--levels", flags.levels, "prolongation depth for prolong");

  const std::vector<std::pair<std::string, std::pair<std::string, Command>>> commands = {
      {"el", {"Euler-Lagrange equations", cmd_el}},
      {"legendre", {"canonical Legendre form", cmd_legendre}},
      {"elh", {"Euler-Lagrange-Hamilton system", cmd_elh}},
      {"constraints", {"constraint rows", cmd_constraints}},
      {"hessian", {"Hessian in the top jets and its rank", cmd_hessian}},
      {"reduce", {"reduction to the constraint bundle and HDW system", cmd_reduce}},
      {"energy", {"energy density", cmd_energy}},
      {"shift", {"ELH system under the momentum shift by rho", cmd_shift}},
      {"check-solution", {"residuals of a system on a sampled field", cmd_check}},
      {"prolong", {"prolonged Euler-Lagrange system", cmd_prolong}},
  };
  std::string problem_path;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("problem", problem_path, "problem file")->required();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  Command command;
  for (const auto& [name, entry] : commands) {
    if (name == chosen->get_name()) command = entry.second;
  }

  try {
    ProblemFile file = [&] {
      try {
        return read_problem(problem_path);
      } catch (const ParseError& e) {
        throw ParseError(problem_path + ": " + e.what(), e.column(), e.line());
      }
    }();
    if (flags.order > 0) file.order = flags.order;
    Problem problem = load_problem(std::move(file));

    std::ostringstream buffer;
    Printer printer(problem.context(), parse_format(flags.format), buffer);
    command(problem, flags, printer);
    if (flags.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(flags.out, std::ios::binary);
      if (!f || !(f << buffer.str())) throw jetham::Error("cannot write " + flags.out);
    }
    return 0;
  } catch (const ParseError& e) {
    err << "error";
    if (e.line() > 0) err << ": line " << e.line();
    if (e.column() > 0) err << (e.line() > 0 ? ", column " : ": column ") << e.column();
    err << ": " << e.what() << "\n";
    return 1;
  } catch (const jetham::Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace jetham
