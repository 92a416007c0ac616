// h2r: build and verify rotational translating solitons of H^2 x R.
//
// Exit codes: 0 success, 2 usage or invalid input, 3 numerical failure
// (diagnostic JSON on stderr).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "h2r/asymptotics.hpp"
#include "h2r/export.hpp"
#include "h2r/phase_portrait.hpp"
#include "h2r/soliton_builders.hpp"
#include "h2r/verification.hpp"

using nlohmann::json;

namespace {

constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct Outputs {
  std::string csv, mesh, report;
  int n_theta = 64;
};

void add_config_flags(CLI::App* cmd, h2r::IntegratorConfig& cfg) {
  cmd->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance")->capture_default_str();
  cmd->add_option("--rel-tol", cfg.rel_tol, "relative tolerance")->capture_default_str();
  cmd->add_option("--max-step", cfg.max_step, "largest arc-length step")->capture_default_str();
  cmd->add_option("--event-tol", cfg.event_tol, "event location tolerance")->capture_default_str();
  cmd->add_option("--r-min-axis", cfg.r_min_axis, "series start radius")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Outputs& out, bool mesh) {
  cmd->add_option("--out", out.csv, "profile CSV path");
  if (mesh) {
    cmd->add_option("--mesh", out.mesh, "OBJ mesh path (Poincare model)");
    cmd->add_option("--n-theta", out.n_theta, "angular resolution of the mesh")->capture_default_str();
  }
  cmd->add_option("--report", out.report, "JSON report path");
}

void write(const std::string& path, const std::string& content) {
  if (!path.empty()) h2r::atomic_write(h2r::resolve_output(path), content);
}

void emit(const json& report, const std::string& path) {
  if (path.empty()) std::cout << report.dump(2) << "\n";
  else write(path, report.dump(2) + "\n");
}

void export_profile(const h2r::SolitonProfile& p, const Outputs& out) {
  write(out.csv, h2r::to_profile_csv(p));
  if (!out.mesh.empty()) write(out.mesh, h2r::to_obj(h2r::mesh_revolution(p, out.n_theta)));
}

int fail(int code, const std::string& kind, const std::string& what, json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = what;
  extra["exit_code"] = code;
  std::cerr << extra.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotational translating solitons in H^2 x R"};
  app.require_subcommand(1);

  h2r::IntegratorConfig cfg;
  Outputs out;

  double rmax = 12.0;
  auto* bowl = app.add_subcommand("bowl", "bowl soliton from the axis");
  bowl->add_option("--rmax", rmax, "outer radius")->capture_default_str();
  add_output_flags(bowl, out, true);
  add_config_flags(bowl, cfg);

  double neck = 1.0;
  auto* cat = app.add_subcommand("catenoid", "translating catenoid with the given neck radius");
  cat->add_option("--neck", neck, "neck radius r0")->capture_default_str();
  cat->add_option("--rmax", rmax, "outer radius of both wings")->capture_default_str();
  add_output_flags(cat, out, true);
  add_config_flags(cat, cfg);

  int eps = 1;
  h2r::PhaseGrid grid;
  int grid_n = 200;
  auto* portrait = app.add_subcommand("phase-portrait", "direction field, regions and Gamma curve");
  portrait->add_option("--eps", eps, "orientation sign")->check(CLI::IsMember({-1, 1}))->capture_default_str();
  portrait->add_option("--grid", grid_n, "nodes per axis")->check(CLI::Range(2, 5000))->capture_default_str();
  portrait->add_option("--rmin", grid.r_min)->capture_default_str();
  portrait->add_option("--rmax", grid.r_max)->capture_default_str();
  portrait->add_option("--out", out.csv, "portrait CSV path");
  portrait->add_option("--report", out.report, "JSON summary path");

  double R = 1.0, phi0 = 1.0, r_end = 20.0, eps0 = 1e-3;
  int rows = 400;
  auto* asym = app.add_subcommand("asymptotics", "phi initial-value problem and psi bounds");
  asym->add_option("--R", R)->capture_default_str();
  asym->add_option("--phi0", phi0)->capture_default_str();
  asym->add_option("--rend", r_end)->capture_default_str();
  asym->add_option("--eps0", eps0)->capture_default_str();
  asym->add_option("--rows", rows)->check(CLI::Range(2, 1000000))->capture_default_str();
  asym->add_option("--out", out.csv, "asymptotics CSV path");
  asym->add_option("--report", out.report, "JSON summary path");

  double disk_R = 2.0, c = 0.0;
  int n_radial = 200;
  auto* dir = app.add_subcommand("dirichlet", "radial Dirichlet problem over a disk");
  dir->add_option("--R", disk_R, "disk radius")->capture_default_str();
  dir->add_option("--c", c, "boundary value")->capture_default_str();
  dir->add_option("--n", n_radial, "radial samples")->check(CLI::Range(2, 1000000))->capture_default_str();
  dir->add_option("--out", out.csv, "CSV of r,u,du,residual");
  dir->add_option("--report", out.report, "JSON summary path");
  add_config_flags(dir, cfg);

  std::string in_path;
  auto* ver = app.add_subcommand("verify", "re-verify a profile CSV");
  ver->add_option("--in", in_path, "profile CSV")->required();
  ver->add_option("--report", out.report, "JSON report path");

  double sigma = 1.0;
  auto* tau = app.add_subcommand("tau", "height of the bowl cap over a circle of radius sigma");
  tau->add_option("--sigma", sigma)->capture_default_str();
  tau->add_option("--report", out.report, "JSON path (stdout if omitted)");
  add_config_flags(tau, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    cfg.validate();
    json report;
    if (*bowl) {
      const auto b = h2r::build_bowl(rmax, cfg);
      report = h2r::to_json(h2r::verify_profile(b.profile(), "bowl", cfg));
      report["r_max"] = rmax;
      report["y_at_rmax"] = b.angle(rmax);
      export_profile(b.profile(), out);
    } else if (*cat) {
      const auto k = h2r::build_catenoid(neck, rmax, cfg);
      const auto full = k.full();
      report = h2r::to_json(h2r::verify_profile(full, "catenoid", cfg));
      report["r0"] = neck;
      report["r1"] = k.turning_radius;
      report["turning_residual"] = k.turning.residual;
      report["r_max"] = rmax;
      export_profile(full, out);
    } else if (*portrait) {
      grid.nr = grid.ny = grid_n;
      const auto p = h2r::portrait(eps, grid);
      write(out.csv, h2r::to_portrait_csv(p));
      const auto scan = h2r::equilibrium_scan(grid, eps);
      report = {{"eps", eps},
                {"grid", grid_n},
                {"field_samples", p.field.size()},
                {"gamma_vertices", p.gamma_polyline.size()},
                {"asymptotes", p.asymptotes},
                {"min_field_norm", scan.min_norm},
                {"argmin", {scan.r, scan.y}}};
    } else if (*asym) {
      const auto sol = h2r::solve_phi(R, phi0, r_end);
      write(out.csv, h2r::to_asymptotics_csv(h2r::asymptotic_table(sol, eps0, rows)));
      const double upper_from = h2r::measured_threshold(
          [&](double r) { return -sol.psi(r) < h2r::psi_upper_bound(r, eps0); }, R, r_end);
      report = {{"R", R},
                {"phi0", phi0},
                {"r_end", r_end},
                {"phi_end", sol.phi(r_end)},
                {"eps0", eps0},
                {"upper_bound_threshold", upper_from},
                {"config", h2r::to_json(h2r::phi_default_config())}};
    } else if (*dir) {
      const auto b = h2r::build_bowl(std::max(disk_R, 1.0), cfg);
      const auto u = h2r::solve_rotational_dirichlet(disk_R, c, b);
      std::ostringstream os;
      os << std::setprecision(17) << "r,u,du,residual\n";
      double worst = 0.0;
      for (int i = 0; i < n_radial; ++i) {
        const double r = disk_R / 100.0 + (disk_R - disk_R / 100.0) * i / (n_radial - 1);
        const double res = u.pde_residual(r);
        worst = std::max(worst, std::abs(res));
        os << r << ',' << u.u(r) << ',' << u.du(r) << ',' << res << "\n";
      }
      write(out.csv, os.str());
      report = {{"R", disk_R}, {"c", c}, {"u_at_R", u.u(disk_R)}, {"shift", u.shift()},
                {"max_pde_residual", worst}, {"config", h2r::to_json(cfg)}};
    } else if (*ver) {
      std::ifstream in(in_path);
      if (!in) return fail(kUsage, "io", "cannot open " + in_path);
      std::stringstream ss;
      ss << in.rdbuf();
      const auto p = h2r::parse_profile_csv(ss.str());
      report = h2r::to_json(h2r::verify_profile(p, in_path));
    } else if (*tau) {
      report = {{"sigma", sigma}, {"tau", h2r::tau(sigma, cfg)}, {"config", h2r::to_json(cfg)}};
    }
    emit(report, out.report);
    return 0;
  } catch (const h2r::IntegrationFailure& e) {
    const auto& s = e.last_state();
    return fail(kNumerical, "integration_failure", e.what(),
                {{"last_state", {{"t", s.t}, {"r", s.r}, {"w", s.w}, {"theta", s.theta}}}});
  } catch (const h2r::StepSizeUnderflow& e) {
    return fail(kNumerical, "step_size_underflow", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, "invalid_argument", e.what());
  } catch (const std::domain_error& e) {
    return fail(kUsage, "domain_error", e.what());
  } catch (const std::logic_error& e) {
    return fail(kUsage, "contract_violation", e.what());
  } catch (const std::exception& e) {
    return fail(kNumerical, "runtime_error", e.what());
  }
}
