#include "cpv/laminate.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

namespace cpv {

namespace {

// Stress transformation, lab -> material axes.
Mat3 stress_rotation(double angle_deg) {
  const double a = angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(a);
  const double s = std::sin(a);
  Mat3 t;
  t << c * c, s * s, 2.0 * c * s,
       s * s, c * c, -2.0 * c * s,
       -c * s, c * s, c * c - s * s;
  return t;
}

// Engineering strain transformation, lab -> material axes.
Mat3 strain_rotation(double angle_deg) {
  const double a = angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(a);
  const double s = std::sin(a);
  Mat3 t;
  t << c * c, s * s, c * s,
       s * s, c * c, -c * s,
       -2.0 * c * s, 2.0 * c * s, c * c - s * s;
  return t;
}

}  // namespace

Mat3 reduced_stiffness(const PlyElastic& e) {
  const double nu21 = e.nu12 * e.e22 / e.e11;
  const double d = 1.0 - e.nu12 * nu21;
  Mat3 q = Mat3::Zero();
  q(0, 0) = e.e11 / d;
  q(1, 1) = e.e22 / d;
  q(0, 1) = q(1, 0) = e.nu12 * e.e22 / d;
  q(2, 2) = e.g12;
  return q;
}

Mat3 rotated_stiffness(const Mat3& q, double angle_deg) {
  return stress_rotation(-angle_deg) * q * strain_rotation(angle_deg);
}

Vec3 to_material_axes(const Vec3& lab_stress, double angle_deg) {
  return stress_rotation(angle_deg) * lab_stress;
}

LaminateState laminate_solve(std::span<const PlyInput> plies, const Vec3& forces) {
  LaminateState state;
  state.forces = forces;
  std::vector<Mat3> qbar;
  qbar.reserve(plies.size());
  double total = 0.0;
  for (const auto& ply : plies) {
    qbar.push_back(rotated_stiffness(ply.q, ply.angle_deg));
    state.a_matrix += qbar.back() * ply.thickness;
    total += ply.thickness;
  }
  if (!(total > 0.0)) throw LaminateError("empty laminate at station");

  Eigen::FullPivLU<Mat3> lu(state.a_matrix);
  if (!lu.isInvertible()) throw LaminateError("singular laminate stiffness at station");
  state.strains = lu.solve(forces);

  state.plies.resize(plies.size());
  for (std::size_t i = 0; i < plies.size(); ++i) {
    auto& out = state.plies[i];
    out.lab_stress = qbar[i] * state.strains;
    out.material_stress = to_material_axes(out.lab_stress, plies[i].angle_deg);
  }
  state.energy_density = 0.5 * forces.dot(state.strains);
  return state;
}

}  // namespace cpv
