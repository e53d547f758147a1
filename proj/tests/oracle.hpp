#pragma once

// Independent reference computations for the tests: plain arrays, explicit
// loops, no Eigen.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

using M3 = std::array<std::array<double, 3>, 3>;
using V3 = std::array<double, 3>;

inline M3 mul(const M3& a, const M3& b) {
  M3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline V3 mul(const M3& a, const V3& x) {
  V3 y{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) y[i] += a[i][k] * x[k];
  return y;
}

inline M3 inverse(const M3& m) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  M3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int a = (j + 1) % 3, b = (j + 2) % 3, c = (i + 1) % 3, d = (i + 2) % 3;
      r[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
    }
  }
  return r;
}

// Stress transformation lab -> material; tensor shear.
inline M3 t_sigma(double deg) {
  const double a = deg * std::numbers::pi / 180.0, c = std::cos(a), s = std::sin(a);
  return {{{c * c, s * s, 2 * s * c}, {s * s, c * c, -2 * s * c}, {-s * c, s * c, c * c - s * s}}};
}

struct Ply {
  double e1, e2, nu12, g12;
  double angle;
  double t;
};

inline M3 q_material(const Ply& p) {
  const double nu21 = p.nu12 * p.e2 / p.e1;
  const double d = 1.0 - p.nu12 * nu21;
  return {{{p.e1 / d, p.nu12 * p.e2 / d, 0.0}, {p.nu12 * p.e2 / d, p.e2 / d, 0.0}, {0.0, 0.0, p.g12}}};
}

// Qbar = T^-1 Q Reuter T Reuter^-1
inline M3 q_bar(const Ply& p) {
  const M3 reuter{{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}};
  const M3 reuter_inv{{{1, 0, 0}, {0, 1, 0}, {0, 0, 0.5}}};
  const M3 t = t_sigma(p.angle);
  return mul(mul(mul(mul(inverse(t), q_material(p)), reuter), t), reuter_inv);
}

struct Result {
  V3 strain{};
  std::vector<V3> lab, material;
  double energy_density = 0.0;
};

inline Result solve(const std::vector<Ply>& plies, const V3& n) {
  M3 a{};
  for (const auto& p : plies) {
    const M3 qb = q_bar(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] += qb[i][j] * p.t;
  }
  Result r;
  r.strain = mul(inverse(a), n);
  for (const auto& p : plies) {
    r.lab.push_back(mul(q_bar(p), r.strain));
    r.material.push_back(mul(t_sigma(p.angle), r.lab.back()));
  }
  for (int i = 0; i < 3; ++i) r.energy_density += 0.5 * n[i] * r.strain[i];
  return r;
}

}  // namespace oracle
