#pragma once

// Design evaluation pipeline: design vector -> winding layup -> membrane
// laminate response -> mass, cylinder thickness, strain energy and the
// worst failure index.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpv/design.hpp"
#include "cpv/failure.hpp"
#include "cpv/geometry.hpp"
#include "cpv/materials.hpp"
#include "cpv/shell.hpp"
#include "cpv/winding.hpp"

namespace cpv {

struct WindingSettings {
  double bandwidth = 10.0;
  double friction_exponent = 1.0;
  double hoop_angle = 90.0;
  int deviation_sign = +1;
  ThicknessLaw thickness_law = ThicknessLaw::FiberConserving;
  // Per helical layer non-geodesic deviations in degrees; missing entries
  // are geodesic.
  std::vector<double> delta_upper;
  std::vector<double> delta_lower;
  LayupOptions layup;
  // Whether stations inside the first layer's turnaround band (between the
  // boss and the thickness cap radius) enter the failure constraint.
  bool constrain_boss_land = false;
};

class EvaluationContext {
 public:
  EvaluationContext(GeometryParams geometry, StationCounts stations, MaterialSystem composite,
                    std::optional<MaterialSystem> liner, LoadCase load, Criterion criterion,
                    WindingSettings winding, DesignSpace space);

  const VesselGeometry& geometry() const { return geometry_; }
  const MaterialSystem& composite() const { return composite_; }
  const std::optional<MaterialSystem>& liner() const { return liner_; }
  const LoadCase& load() const { return load_; }
  Criterion criterion() const { return criterion_; }
  const WindingSettings& winding() const { return winding_; }
  const DesignSpace& space() const { return space_; }
  StationCounts station_counts() const { return stations_; }

  const PlyElastic& composite_elastic() const { return composite_elastic_; }
  const std::optional<PlyElastic>& liner_elastic() const { return liner_elastic_; }
  const Strengths& strengths() const { return strengths_; }
  double composite_density() const { return rho_; }
  // Per station, non-zero when the station enters the failure constraint.
  const std::vector<char>& constrained_stations() const { return constrained_; }

  std::vector<WindingLayerSpec> layers(const DesignVector& d) const;

 private:
  VesselGeometry geometry_;
  StationCounts stations_;
  MaterialSystem composite_;
  std::optional<MaterialSystem> liner_;
  LoadCase load_;
  Criterion criterion_;
  WindingSettings winding_;
  DesignSpace space_;
  PlyElastic composite_elastic_;
  std::optional<PlyElastic> liner_elastic_;
  Strengths strengths_;
  double rho_ = 0.0;
  std::vector<char> constrained_;
};

struct EvaluationRecord {
  std::size_t iteration = 0;
  int island = -1;
  int generation = -1;
  std::vector<double> variables;
  double mass = 0.0;                 // M, kg
  double cylinder_thickness = 0.0;   // Th_c, mm
  double strain_energy = 0.0;        // U, mJ
  double peak_energy_density = 0.0;  // mJ/mm^2
  double worst_fi = 0.0;             // FI
  bool feasible = false;
  double fitness = 0.0;
  std::string diagnostic;
};

// Full evaluation with every intermediate kept, for reports and exports.
struct VesselEvaluation {
  DesignVector design;
  std::vector<WindingLayerSpec> layers;
  LayupField layup;
  VesselResponse response;
  FailureSummary failure;
  StrainEnergy energy;
  EvaluationRecord record;
};

VesselEvaluation evaluate_detailed(const DesignVector& design, const EvaluationContext& ctx);

// Never throws for pipeline failures: the record comes back infeasible with
// the reason in `diagnostic` and an infinite failure index.
EvaluationRecord evaluate(const DesignVector& design, const EvaluationContext& ctx);

struct Scalarization {
  double weight_mass = 1.0;
  double weight_thickness = 1.0;
  double weight_energy = 1.0;
  double mass_scale = 10.0;        // kg
  double thickness_scale = 5.0;    // mm
  double energy_scale = 1.0e7;     // mJ
  double penalty = 1.0e3;
};

void validate(const Scalarization& s);

// w_M M/M0 + w_Th Th/Th0 - w_U U/U0 + penalty max(0, FI - 1)^2
double scalarize(const EvaluationRecord& record, const Scalarization& s);

// Feasible records first, then by fitness.
bool ranks_before(const EvaluationRecord& a, const EvaluationRecord& b);

}  // namespace cpv
