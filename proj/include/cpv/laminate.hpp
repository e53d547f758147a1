#pragma once

// Membrane classical lamination theory for a stack of plies.
//
// Lab axes: x along the meridian, y along the parallel circle. Engineering
// shear strain is used throughout (gamma_xy = 2 eps_xy).

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "cpv/materials.hpp"

namespace cpv {

class LaminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Plane-stress reduced stiffness in material axes.
Mat3 reduced_stiffness(const PlyElastic& e);

// Reduced stiffness rotated into lab axes for a fiber at `angle_deg` from x.
Mat3 rotated_stiffness(const Mat3& q, double angle_deg);

// Lab stresses -> material stresses (sigma1, sigma2, sigma6).
Vec3 to_material_axes(const Vec3& lab_stress, double angle_deg);

struct PlyInput {
  Mat3 q;  // material-axis reduced stiffness
  double angle_deg = 0.0;
  double thickness = 0.0;
};

struct PlyResult {
  Vec3 lab_stress = Vec3::Zero();       // sigma_x, sigma_y, tau_xy
  Vec3 material_stress = Vec3::Zero();  // sigma1, sigma2, sigma6
};

struct LaminateState {
  Vec3 forces = Vec3::Zero();   // N_phi, N_theta, N_xy (N/mm)
  Vec3 strains = Vec3::Zero();  // eps_x, eps_y, gamma_xy
  Mat3 a_matrix = Mat3::Zero();
  std::vector<PlyResult> plies;
  double energy_density = 0.0;  // 0.5 * N . eps, mJ/mm^2
};

// Solves A eps = N for the stack. Plies with zero thickness are carried
// through with zero contribution; at least one must be non-zero.
LaminateState laminate_solve(std::span<const PlyInput> plies, const Vec3& forces);

}  // namespace cpv
