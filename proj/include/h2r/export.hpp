#pragma once

// Meshes of surfaces of revolution and the plain-text artifact formats:
// profile CSV, phase-portrait CSV, asymptotics CSV, OBJ meshes and JSON reports.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "h2r/asymptotics.hpp"
#include "h2r/hyperbolic_models.hpp"
#include "h2r/phase_portrait.hpp"
#include "h2r/profile_ode.hpp"
#include "h2r/verification.hpp"

namespace h2r {

enum class MeshModel { Poincare, Hyperboloid };

struct MeshVertexData {
  double r = 0.0, t = 0.0, angle = 0.0, nu = 0.0, H = 0.0, residual = 0.0;
};

struct RevolutionMesh {
  MeshModel model = MeshModel::Poincare;
  std::size_t n_samples = 0;
  int n_theta = 0;
  std::vector<PoincarePoint> disk;           // filled for MeshModel::Poincare
  std::vector<HyperboloidPoint> hyperboloid;  // filled for MeshModel::Hyperboloid
  std::vector<MeshVertexData> data;
  std::vector<std::array<std::size_t, 4>> quads;  // 0-based, closed in the angle

  std::size_t vertex_count() const { return data.size(); }
};

/// Vertex (i, j) = profile sample i rotated by 2 pi j / n_theta. Throws
/// std::invalid_argument for n_theta < 8.
RevolutionMesh mesh_revolution(const SolitonProfile& profile, int n_theta, MeshModel model = MeshModel::Poincare);

std::string to_obj(const RevolutionMesh& mesh);

inline const char* kProfileCsvHeader = "t,r,w,theta,y,eps,kappa1,kappa2,H,residual";

std::string to_profile_csv(const SolitonProfile& profile);
/// Parses a profile CSV back into samples (no dense output). Throws std::runtime_error on malformed input.
SolitonProfile parse_profile_csv(const std::string& text, ProfileKind kind = ProfileKind::Generic);

/// kind,r,y,dir_r,dir_y,region with kind in {field, gamma, asymptote}.
std::string to_portrait_csv(const PhasePortrait& p);

/// r,phi,psi,lower,upper,model_psi
std::string to_asymptotics_csv(const std::vector<AsymptoticRow>& rows);

nlohmann::json to_json(const IntegratorConfig& cfg);
nlohmann::json to_json(const Tolerances& tol);
nlohmann::json to_json(const VerificationReport& rep);

/// Writes through a temporary file in the same directory and renames it into place.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Relative paths resolve against $H2R_OUT_DIR when it is set.
std::filesystem::path resolve_output(const std::filesystem::path& path);

}  // namespace h2r
