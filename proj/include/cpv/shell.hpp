#pragma once

// Membrane response of the wound shell of revolution under internal and
// hydrostatic pressure, plus the mass and strain-energy integrals.

#include <cstddef>
#include <optional>
#include <vector>

#include "cpv/geometry.hpp"
#include "cpv/laminate.hpp"
#include "cpv/winding.hpp"

namespace cpv {

struct LoadCase {
  double internal_pressure = 2.0;  // P_m, MPa
  double water_density = 1e-9;     // t/mm^3, zero disables the hydrostatic part
  double gravity = 9810.0;         // mm/s^2
  // Height of the free water surface above the lower pole. Unset means the
  // vessel is full (surface at the upper pole).
  std::optional<double> fill_height;

  double surface_height(const VesselGeometry& geom) const {
    return fill_height.value_or(geom.total_height());
  }
  // rho g d, zero above the free surface.
  double hydrostatic_at(double z, const VesselGeometry& geom) const;
  double pressure_at(double z, const VesselGeometry& geom) const {
    return internal_pressure + hydrostatic_at(z, geom);
  }
};

void validate(const LoadCase& load);

struct MembraneForces {
  double n_phi = 0.0;    // meridional, N/mm
  double n_theta = 0.0;  // circumferential, N/mm
};

// Axisymmetric membrane equilibrium at a station under local pressure p.
MembraneForces membrane_forces(const MeridianStation& station, double pressure);
MembraneForces membrane_forces(const VesselGeometry& geom, const LoadCase& load, std::size_t station);

struct VesselResponse {
  std::vector<double> pressure;             // per station
  std::vector<LaminateState> stations;      // plies in layup order, then the liner
  bool has_liner = false;
};

// Per-station laminate solution. The liner, if given, is the innermost ply
// with the geometry's liner thickness at every station.
VesselResponse analyze_vessel(const VesselGeometry& geom, const LayupField& layup,
                              const PlyElastic& composite, const std::optional<PlyElastic>& liner,
                              const LoadCase& load);

// Composite mass in kg, trapezoidal over each ply's stations.
double total_mass(const LayupField& layup, const VesselGeometry& geom, double rho);

struct StrainEnergy {
  double total = 0.0;         // mJ (N mm)
  double peak_density = 0.0;  // mJ/mm^2
  std::size_t peak_station = 0;
};

StrainEnergy total_strain_energy(const VesselGeometry& geom, const VesselResponse& response);

}  // namespace cpv
