#include "h2r/export.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace h2r {

RevolutionMesh mesh_revolution(const SolitonProfile& profile, int n_theta, MeshModel model) {
  if (n_theta < 8) throw std::invalid_argument("mesh_revolution: n_theta must be at least 8");
  const auto& samples = profile.samples();
  RevolutionMesh mesh;
  mesh.model = model;
  mesh.n_samples = samples.size();
  mesh.n_theta = n_theta;
  const std::size_t nv = samples.size() * static_cast<std::size_t>(n_theta);
  mesh.data.reserve(nv);
  if (model == MeshModel::Poincare) mesh.disk.reserve(nv);
  else mesh.hyperboloid.reserve(nv);

  for (const auto& s : samples) {
    const CurvatureSample c = evaluate(jet_from_ode(s.state(), s.eps));
    for (int j = 0; j < n_theta; ++j) {
      const double a = 2.0 * std::numbers::pi * j / n_theta;
      if (model == MeshModel::Poincare) mesh.disk.push_back(poincare_from_polar(s.r, a, s.w));
      else mesh.hyperboloid.push_back(hyperboloid_from_polar(s.r, a, s.w));
      mesh.data.push_back({s.r, s.t, a, c.y, c.H, c.residual});
    }
  }
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    for (int j = 0; j < n_theta; ++j) {
      const std::size_t jn = (j + 1) % n_theta;
      mesh.quads.push_back({i * n_theta + j, (i + 1) * n_theta + j, (i + 1) * n_theta + jn, i * n_theta + jn});
    }
  }
  return mesh;
}

std::string to_obj(const RevolutionMesh& mesh) {
  if (mesh.model != MeshModel::Poincare) throw std::invalid_argument("to_obj: only Poincare-model meshes are 3D");
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# surface of revolution in the Poincare disk model: " << mesh.n_samples << " x " << mesh.n_theta << "\n";
  for (const auto& v : mesh.disk) os << "v " << v.u1 << ' ' << v.u2 << ' ' << v.z << "\n";
  for (const auto& q : mesh.quads) {
    os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << "\n";
  }
  return os.str();
}

std::string to_profile_csv(const SolitonProfile& profile) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << kProfileCsvHeader << "\n";
  for (const auto& s : profile.samples()) {
    const CurvatureSample c = evaluate(jet_from_ode(s.state(), s.eps));
    os << s.t << ',' << s.r << ',' << s.w << ',' << s.theta << ',' << c.y << ',' << s.eps << ',' << c.kappa1 << ','
       << c.kappa2 << ',' << c.H << ',' << c.residual << "\n";
  }
  return os.str();
}

SolitonProfile parse_profile_csv(const std::string& text, ProfileKind kind) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kProfileCsvHeader) {
    throw std::runtime_error("parse_profile_csv: missing or unexpected header");
  }
  std::vector<ProfileSample> samples;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("parse_profile_csv: bad number on line " + std::to_string(lineno));
      }
    }
    if (v.size() != 10) throw std::runtime_error("parse_profile_csv: expected 10 columns on line " + std::to_string(lineno));
    samples.push_back({v[0], v[1], v[2], v[3], v[5] >= 0 ? 1 : -1});
  }
  return SolitonProfile(kind, std::move(samples));
}

std::string to_portrait_csv(const PhasePortrait& p) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "kind,r,y,dir_r,dir_y,region\n";
  for (const auto& f : p.field) {
    os << "field," << f.r << ',' << f.y << ',' << f.dir_r << ',' << f.dir_y << ',' << to_string(f.region) << "\n";
  }
  for (const auto& g : p.gamma_polyline) os << "gamma," << g[0] << ',' << g[1] << ",,,OnGamma\n";
  for (double y : p.asymptotes) {
    os << "asymptote," << p.grid.r_min << ',' << y << ",1,0,\n";
    os << "asymptote," << p.grid.r_max << ',' << y << ",1,0,\n";
  }
  return os.str();
}

std::string to_asymptotics_csv(const std::vector<AsymptoticRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "r,phi,psi,lower,upper,model_psi\n";
  for (const auto& r : rows) {
    os << r.r << ',' << r.phi << ',' << r.psi << ',' << r.lower << ',' << r.upper << ',' << r.model_psi << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const IntegratorConfig& cfg) {
  return {{"abs_tol", cfg.abs_tol},
          {"rel_tol", cfg.rel_tol},
          {"max_step", cfg.max_step},
          {"event_tol", cfg.event_tol},
          {"r_min_axis", cfg.r_min_axis}};
}

nlohmann::json to_json(const Tolerances& t) {
  return {{"model_roundtrip", t.model_roundtrip},
          {"soliton_residual", t.soliton_residual},
          {"laplacian_residual", t.laplacian_residual},
          {"sign_law_guard", t.sign_law_guard},
          {"boundary_tag", t.boundary_tag},
          {"max_hyperbolic_radius", t.max_hyperbolic_radius},
          {"max_builder_radius", t.max_builder_radius},
          {"asymptotic_window_min", t.asymptotic_window_min}};
}

nlohmann::json to_json(const VerificationReport& rep) {
  nlohmann::json extrema = nlohmann::json::array();
  for (const auto& e : rep.extrema) {
    extrema.push_back({{"kind", e.kind == ExtremumKind::Maximum ? "maximum" : "minimum"},
                       {"t", e.t},
                       {"r", e.r},
                       {"w", e.w},
                       {"on_axis", e.on_axis}});
  }
  const double max_residual = std::max({rep.max_soliton, rep.max_weighted, rep.max_conformal_scaled});
  return {{"profile_id", rep.profile_id},
          {"samples", rep.samples},
          {"max_residual", max_residual},
          {"max_residuals",
           {{"soliton", rep.max_soliton},
            {"weighted", rep.max_weighted},
            {"conformal_scaled", rep.max_conformal_scaled},
            {"laplacian", rep.max_laplacian},
            {"unit_speed", rep.max_unit_speed},
            {"interpolant", rep.max_interpolant}}},
          {"dense_output", rep.dense_output},
          {"sign_violations", rep.sign_violations()},
          {"sign_checked", rep.sign_checked},
          {"extrema", extrema},
          {"passes", rep.passes()},
          {"tolerances", to_json(rep.tolerances)},
          {"config", to_json(rep.config)}};
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("atomic_write: rename to " + path.string() + " failed: " + ec.message());
  }
}

std::filesystem::path resolve_output(const std::filesystem::path& path) {
  if (path.is_absolute()) return path;
  if (const char* dir = std::getenv("H2R_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / path;
  return path;
}

}  // namespace h2r
