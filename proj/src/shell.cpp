#include "cpv/shell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpv {

double LoadCase::hydrostatic_at(double z, const VesselGeometry& geom) const {
  const double depth = surface_height(geom) - z;
  return depth > 0.0 ? water_density * gravity * depth : 0.0;
}

void validate(const LoadCase& load) {
  if (!(load.internal_pressure >= 0.0)) throw std::invalid_argument("internal pressure must be >= 0");
  if (!(load.water_density >= 0.0)) throw std::invalid_argument("water density must be >= 0");
  if (!(load.gravity >= 0.0)) throw std::invalid_argument("gravity must be >= 0");
  if (load.fill_height && !(*load.fill_height >= 0.0)) {
    throw std::invalid_argument("fill height must be >= 0");
  }
}

MembraneForces membrane_forces(const MeridianStation& station, double pressure) {
  MembraneForces f;
  f.n_phi = 0.5 * pressure * station.r2;
  if (std::isinf(station.r1)) {
    f.n_theta = pressure * station.r2;
  } else {
    f.n_theta = pressure * station.r2 * (1.0 - station.r2 / (2.0 * station.r1));
  }
  return f;
}

MembraneForces membrane_forces(const VesselGeometry& geom, const LoadCase& load, std::size_t station) {
  const auto& st = geom.stations.at(station);
  return membrane_forces(st, load.pressure_at(st.z, geom));
}

VesselResponse analyze_vessel(const VesselGeometry& geom, const LayupField& layup,
                              const PlyElastic& composite, const std::optional<PlyElastic>& liner,
                              const LoadCase& load) {
  if (layup.station_count != geom.stations.size()) {
    throw std::invalid_argument("layup does not match the geometry station grid");
  }
  const Mat3 q_comp = reduced_stiffness(composite);
  const Mat3 q_liner = liner ? reduced_stiffness(*liner) : Mat3::Zero();

  VesselResponse out;
  out.has_liner = liner.has_value();
  out.pressure.resize(geom.stations.size());
  out.stations.reserve(geom.stations.size());

  std::vector<PlyInput> stack(layup.plies.size() + (liner ? 1 : 0));
  for (std::size_t k = 0; k < geom.stations.size(); ++k) {
    for (std::size_t p = 0; p < layup.plies.size(); ++p) {
      stack[p] = {q_comp, layup.plies[p].angle[k], layup.plies[p].thickness[k]};
    }
    if (liner) stack.back() = {q_liner, 0.0, geom.params.liner_thickness};
    const double p = load.pressure_at(geom.stations[k].z, geom);
    const auto f = membrane_forces(geom.stations[k], p);
    out.pressure[k] = p;
    out.stations.push_back(laminate_solve(stack, Vec3(f.n_phi, f.n_theta, 0.0)));
  }
  return out;
}

double total_mass(const LayupField& layup, const VesselGeometry& geom, double rho) {
  const auto& st = geom.stations;
  double volume = 0.0;
  for (const auto& ply : layup.plies) {
    for (std::size_t k = 1; k < st.size(); ++k) {
      if (!(ply.thickness[k - 1] > 0.0 && ply.thickness[k] > 0.0)) continue;
      const double ds = st[k].s - st[k - 1].s;
      volume += 0.5 * ds * (st[k - 1].r * ply.thickness[k - 1] + st[k].r * ply.thickness[k]);
    }
  }
  // t -> kg
  return 2.0 * std::numbers::pi * volume * rho * 1e3;
}

StrainEnergy total_strain_energy(const VesselGeometry& geom, const VesselResponse& response) {
  StrainEnergy e;
  const auto& st = geom.stations;
  for (std::size_t k = 0; k < st.size(); ++k) {
    const double u = response.stations[k].energy_density;
    if (u > e.peak_density) {
      e.peak_density = u;
      e.peak_station = k;
    }
    if (k == 0) continue;
    const double u0 = response.stations[k - 1].energy_density;
    e.total += 0.5 * (st[k].s - st[k - 1].s) * (st[k - 1].r * u0 + st[k].r * u);
  }
  e.total *= 2.0 * std::numbers::pi;
  return e;
}

}  // namespace cpv
