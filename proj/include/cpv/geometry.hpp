#pragma once

// Meridian geometry of a cylindrical vessel closed by two ellipsoidal domes.
//
// The meridian runs from the lower (down) dome opening, along the cylinder, to
// the upper dome opening. z is measured upward from the lower pole; s is the
// arc length along the meridian from the first station. s never decreases and
// repeats only at the two dome/cylinder junctions.

#include <stdexcept>
#include <string_view>
#include <vector>

namespace cpv {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Region { LowerDome, Cylinder, UpperDome };
enum class DomeSide { Lower, Upper };

std::string_view region_name(Region r);

struct GeometryParams {
  double radius = 250.0;              // R
  double cylinder_height = 819.0;     // H_c
  double upper_dome_height = 123.0;   // h_up
  double lower_dome_height = 123.0;   // h_d
  double liner_thickness = 4.0;       // th_in
  // The shell surface ends at the boss of each dome. These are normally the
  // manufacturing openings of the first helical layer.
  double upper_boss_radius = 20.0;
  double lower_boss_radius = 125.0;
  // Optional extra dome stations at these parallel radii (ignored when not
  // strictly between the boss and R).
  double upper_land_radius = 0.0;
  double lower_land_radius = 0.0;
};

// Interval counts; a dome gets per_dome + 1 stations, the cylinder
// cylinder + 1.
struct StationCounts {
  int per_dome = 20;
  int cylinder = 40;
};

struct MeridianStation {
  double s = 0.0;   // arc coordinate, mm
  double z = 0.0;   // axial position above the lower pole, mm
  double r = 0.0;   // distance to the axis, mm
  double r1 = 0.0;  // meridional radius of curvature (infinite on the cylinder)
  double r2 = 0.0;  // circumferential radius of curvature
  Region region = Region::Cylinder;
};

struct VesselGeometry {
  GeometryParams params;
  std::vector<MeridianStation> stations;

  double total_height() const {
    return params.lower_dome_height + params.cylinder_height + params.upper_dome_height;
  }
  double cylinder_bottom() const { return params.lower_dome_height; }
  double cylinder_top() const { return params.lower_dome_height + params.cylinder_height; }
};

// Point on an ellipsoidal dome with equatorial semi-axis a and height b at
// parametric latitude t (0 at the equator, pi/2 at the pole).
struct DomePoint {
  double r = 0.0;
  double height = 0.0;  // above the equator plane
  double r1 = 0.0;
  double r2 = 0.0;
};
DomePoint ellipsoid_point(double a, double b, double t);

// Meridian arc length from the equator up to latitude t.
double ellipsoid_arc_length(double a, double b, double t);

// Dome stations are spaced uniformly in latitude from the boss down to the
// equator, plus the optional land station. Each junction carries two
// stations with the same s and z: the dome equator (dome curvatures, no hoop
// plies) followed or preceded by the cylinder end.
VesselGeometry build_geometry(const GeometryParams& params, StationCounts counts = {});

}  // namespace cpv
