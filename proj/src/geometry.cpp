#include "cpv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cpv {

std::string_view region_name(Region r) {
  switch (r) {
    case Region::LowerDome:
      return "lower_dome";
    case Region::Cylinder:
      return "cylinder";
    case Region::UpperDome:
      return "upper_dome";
  }
  return "?";
}

DomePoint ellipsoid_point(double a, double b, double t) {
  const double st = std::sin(t);
  const double ct = std::cos(t);
  const double q = a * a * st * st + b * b * ct * ct;
  DomePoint p;
  p.r = a * ct;
  p.height = b * st;
  p.r1 = std::pow(q, 1.5) / (a * b);
  p.r2 = a * std::sqrt(q) / b;
  return p;
}

double ellipsoid_arc_length(double a, double b, double t) {
  auto speed = [a, b](double u) {
    const double su = std::sin(u);
    const double cu = std::cos(u);
    return std::sqrt(a * a * su * su + b * b * cu * cu);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(speed, 0.0, t, 10, 1e-12);
}

VesselGeometry build_geometry(const GeometryParams& params, StationCounts counts) {
  const auto& p = params;
  for (auto [v, name] : {std::pair{p.radius, "radius"},
                         {p.cylinder_height, "cylinder height"},
                         {p.upper_dome_height, "upper dome height"},
                         {p.lower_dome_height, "lower dome height"},
                         {p.liner_thickness, "liner thickness"},
                         {p.upper_boss_radius, "upper boss radius"},
                         {p.lower_boss_radius, "lower boss radius"}}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw GeometryError(std::string(name) + " must be positive");
    }
  }
  if (p.upper_boss_radius >= p.radius || p.lower_boss_radius >= p.radius) {
    throw GeometryError("boss radius must be smaller than the cylinder radius");
  }
  if (counts.per_dome < 3 || counts.cylinder < 3) {
    throw GeometryError("at least 3 stations per region are required");
  }

  VesselGeometry g;
  g.params = p;
  const double R = p.radius;
  const double inf = std::numeric_limits<double>::infinity();

  // Latitudes from the boss down to the equator. The equator station keeps
  // the dome curvature; the cylinder starts with its own station at the same
  // place, so the force jump at the junction is seen from both sides.
  auto dome_latitudes = [&](double boss, double land) {
    const double t_boss = std::acos(boss / R);
    std::vector<double> ts;
    for (int k = 0; k <= counts.per_dome; ++k) ts.push_back(t_boss * (1.0 - static_cast<double>(k) / counts.per_dome));
    if (land > boss && land < R) {
      const double t_land = std::acos(land / R);
      auto it = std::find_if(ts.begin(), ts.end(), [&](double t) { return t <= t_land; });
      if (it == ts.end() || std::abs(*it - t_land) > 1e-12) ts.insert(it, t_land);
    }
    return ts;
  };

  const auto t_low = dome_latitudes(p.lower_boss_radius, p.lower_land_radius);
  const auto t_up = dome_latitudes(p.upper_boss_radius, p.upper_land_radius);
  const double lower_length = ellipsoid_arc_length(R, p.lower_dome_height, t_low.front());

  g.stations.reserve(t_low.size() + t_up.size() + counts.cylinder + 1);
  for (double t : t_low) {
    const auto dp = ellipsoid_point(R, p.lower_dome_height, t);
    g.stations.push_back({lower_length - ellipsoid_arc_length(R, p.lower_dome_height, t),
                          p.lower_dome_height - dp.height, dp.r, dp.r1, dp.r2, Region::LowerDome});
  }
  for (int k = 0; k <= counts.cylinder; ++k) {
    const double dz = p.cylinder_height * k / counts.cylinder;
    g.stations.push_back({lower_length + dz, p.lower_dome_height + dz, R, inf, R, Region::Cylinder});
  }
  const double s_top = lower_length + p.cylinder_height;
  for (auto it = t_up.rbegin(); it != t_up.rend(); ++it) {
    const auto dp = ellipsoid_point(R, p.upper_dome_height, *it);
    g.stations.push_back({s_top + ellipsoid_arc_length(R, p.upper_dome_height, *it),
                          g.cylinder_top() + dp.height, dp.r, dp.r1, dp.r2, Region::UpperDome});
  }
  return g;
}

}  // namespace cpv
