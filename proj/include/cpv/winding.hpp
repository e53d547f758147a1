#pragma once

// Filament winding kinematics: fiber angle and ply thickness along the
// meridian for helical layers with per-dome polar openings, plus hoop layers
// on the cylinder.
//
// Angles are in degrees, measured from the meridian (vessel axis direction).

#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cpv/geometry.hpp"

namespace cpv {

class WindingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a helical layer is queried inside its polar opening.
class AbovePolarOpening : public WindingError {
 public:
  using WindingError::WindingError;
};

enum class LayerKind { Helical, Hoop };

// Dome thickness buildup. Both forms share the bandwidth regularization
//   th = th_c cos(alpha_c) / cos(alpha) * N / (r + 2 W_B ((R - r)/(R - r0))^4)
// and differ in the numerator N: R keeps the fiber count through every
// parallel equal to the cylinder's, r is the literal published form.
enum class ThicknessLaw { FiberConserving, Literal };

std::string_view thickness_law_name(ThicknessLaw law);
ThicknessLaw parse_thickness_law(std::string_view name);

struct WindingLayerSpec {
  LayerKind kind = LayerKind::Helical;
  double r0_upper = 0.0;
  double r0_lower = 0.0;
  double thickness = 0.0;         // th_c, per ply of a +/- pair for helical layers
  double alpha_c_upper = 0.0;     // cylinder angle at the upper junction
  double alpha_c_lower = 0.0;     // cylinder angle at the lower junction
  double friction_exponent = 1.0; // n
  double delta_upper = 0.0;       // non-geodesic deviation, alpha_c - asin(r0/R)
  double delta_lower = 0.0;
  double bandwidth = 10.0;        // W_B, mm
  int deviation_sign = +1;        // the +/- of the angle law
  double hoop_angle = 90.0;
  ThicknessLaw thickness_law = ThicknessLaw::FiberConserving;

  // Helical layer whose junction angles follow from the openings plus the
  // given deviations (zero deviation is a geodesic path).
  static WindingLayerSpec helical(double radius, double r0_upper, double r0_lower, double thickness,
                                  double bandwidth = 10.0, double delta_upper = 0.0,
                                  double delta_lower = 0.0, double friction_exponent = 1.0);
  static WindingLayerSpec hoop(double thickness, double angle = 90.0);

  double r0(DomeSide side) const { return side == DomeSide::Upper ? r0_upper : r0_lower; }
  double alpha_c(DomeSide side) const { return side == DomeSide::Upper ? alpha_c_upper : alpha_c_lower; }
  double delta(DomeSide side) const { return side == DomeSide::Upper ? delta_upper : delta_lower; }
};

// Throws WindingError if the layer violates its invariants for radius R.
void validate(const WindingLayerSpec& layer, double radius);

// Fiber angle on a dome at parallel radius r, r0 <= r <= R.
double fiber_angle(const WindingLayerSpec& layer, double r, DomeSide side, double radius);

// Radius below which the thickness law is held constant to avoid the
// 1/cos(alpha) blow-up at the opening.
double thickness_cap_radius(const WindingLayerSpec& layer, DomeSide side, double radius);

// Ply thickness on a dome at parallel radius r.
double dome_thickness(const WindingLayerSpec& layer, double r, DomeSide side, double radius);

struct LayupOptions {
  // Axial fractions of the cylinder delimiting the interpolation sections,
  // strictly increasing from 0 to 1. Empty means `sections` equal parts.
  std::vector<double> section_bounds;
  int sections = 8;
};

// One physical ply along the whole meridian.
struct PlyTrack {
  int layer = 0;           // index into the layer list
  LayerKind kind = LayerKind::Helical;
  int sign = +1;           // +alpha or -alpha member of a helical pair
  std::vector<double> angle;      // degrees, signed
  std::vector<double> thickness;  // mm, zero where the ply is absent
};

struct LayupField {
  std::vector<PlyTrack> plies;
  // Axial positions (z) of the cylinder section boundaries.
  std::vector<double> section_z;
  // Per layer, the angle at each section boundary (alpha_c arrays).
  std::vector<std::vector<double>> section_angles;
  std::size_t station_count = 0;

  // Sum of ply thicknesses at a station.
  double total_thickness(std::size_t station) const;
  std::size_t present_plies(std::size_t station) const;
};

LayupField build_layup(const VesselGeometry& geom, const std::vector<WindingLayerSpec>& layers,
                       const LayupOptions& options = {});

// CSV: s, region, z, r, then angle_<ply> and th_<ply> per ply. Absent plies
// leave the angle cell empty.
void write_layup_csv(std::ostream& out, const VesselGeometry& geom, const LayupField& layup);

}  // namespace cpv
