#include "cpv/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cpv {

EvaluationContext::EvaluationContext(GeometryParams geometry, StationCounts stations,
                                     MaterialSystem composite, std::optional<MaterialSystem> liner,
                                     LoadCase load, Criterion criterion, WindingSettings winding,
                                     DesignSpace space)
    : stations_(stations),
      composite_(std::move(composite)),
      liner_(std::move(liner)),
      load_(load),
      criterion_(criterion),
      winding_(std::move(winding)),
      space_(std::move(space)) {
  // The shell surface starts at the first layer's openings; the edge of its
  // turnaround band always gets a station.
  const double R = geometry.radius;
  if (space_.bounds().opening_max >= R) {
    throw DesignError("maximum opening radius must be smaller than the cylinder radius");
  }
  geometry.upper_boss_radius = space_.upper_opening_1();
  geometry.lower_boss_radius = space_.lower_opening_1();
  auto first = WindingLayerSpec::helical(R, space_.upper_opening_1(), space_.lower_opening_1(), 1.0,
                                         winding_.bandwidth);
  const double land_upper = thickness_cap_radius(first, DomeSide::Upper, R);
  const double land_lower = thickness_cap_radius(first, DomeSide::Lower, R);
  geometry.upper_land_radius = land_upper;
  geometry.lower_land_radius = land_lower;
  geometry_ = build_geometry(geometry, stations);
  constrained_.resize(geometry_.stations.size(), 1);
  if (!winding_.constrain_boss_land) {
    for (std::size_t k = 0; k < geometry_.stations.size(); ++k) {
      const auto& st = geometry_.stations[k];
      if (st.region == Region::UpperDome && st.r < land_upper * (1.0 - 1e-12)) constrained_[k] = 0;
      if (st.region == Region::LowerDome && st.r < land_lower * (1.0 - 1e-12)) constrained_[k] = 0;
    }
  }
  validate(load_);
  validate(composite_);
  composite_elastic_ = ply_elastic(composite_);
  strengths_ = ply_strengths(composite_);
  rho_ = density(composite_);
  if (liner_) {
    validate(*liner_);
    liner_elastic_ = ply_elastic(*liner_);
  }
}

std::vector<WindingLayerSpec> EvaluationContext::layers(const DesignVector& d) const {
  const double R = geometry_.params.radius;
  std::vector<WindingLayerSpec> out;
  for (std::size_t i = 0; i < d.helical_thickness.size(); ++i) {
    const double du = i < winding_.delta_upper.size() ? winding_.delta_upper[i] : 0.0;
    const double dl = i < winding_.delta_lower.size() ? winding_.delta_lower[i] : 0.0;
    auto layer = WindingLayerSpec::helical(R, d.upper_openings[i], d.lower_openings[i],
                                           d.helical_thickness[i], winding_.bandwidth, du, dl,
                                           winding_.friction_exponent);
    layer.deviation_sign = winding_.deviation_sign;
    layer.thickness_law = winding_.thickness_law;
    out.push_back(layer);
  }
  for (double t : d.hoop_thickness) out.push_back(WindingLayerSpec::hoop(t, winding_.hoop_angle));
  return out;
}

VesselEvaluation evaluate_detailed(const DesignVector& design, const EvaluationContext& ctx) {
  ctx.space().validate(design);
  VesselEvaluation ev;
  ev.design = design;
  ev.layers = ctx.layers(design);
  ev.layup = build_layup(ctx.geometry(), ev.layers, ctx.winding().layup);
  ev.response = analyze_vessel(ctx.geometry(), ev.layup, ctx.composite_elastic(), ctx.liner_elastic(),
                               ctx.load());
  ev.failure = evaluate_failure(ev.response.stations, ev.layup, ctx.strengths(), ctx.criterion(),
                                ctx.constrained_stations());
  ev.energy = total_strain_energy(ctx.geometry(), ev.response);

  auto& r = ev.record;
  r.variables = ctx.space().encode(design);
  r.mass = total_mass(ev.layup, ctx.geometry(), ctx.composite_density());
  r.cylinder_thickness = cylinder_thickness(design);
  r.strain_energy = ev.energy.total;
  r.peak_energy_density = ev.energy.peak_density;
  r.worst_fi = ev.failure.worst;
  r.feasible = ev.failure.feasible();
  return ev;
}

EvaluationRecord evaluate(const DesignVector& design, const EvaluationContext& ctx) {
  try {
    return evaluate_detailed(design, ctx).record;
  } catch (const std::exception& e) {
    EvaluationRecord r;
    try {
      r.variables = ctx.space().encode(design);
    } catch (const std::exception&) {
    }
    r.cylinder_thickness = cylinder_thickness(design);
    r.worst_fi = std::numeric_limits<double>::infinity();
    r.feasible = false;
    r.diagnostic = e.what();
    return r;
  }
}

void validate(const Scalarization& s) {
  if (s.weight_mass < 0.0 || s.weight_thickness < 0.0 || s.weight_energy < 0.0) {
    throw std::invalid_argument("objective weights must be non-negative");
  }
  if (s.weight_mass + s.weight_thickness + s.weight_energy <= 0.0) {
    throw std::invalid_argument("at least one objective weight must be positive");
  }
  if (!(s.mass_scale > 0.0 && s.thickness_scale > 0.0 && s.energy_scale > 0.0)) {
    throw std::invalid_argument("objective reference scales must be positive");
  }
  if (!(s.penalty >= 0.0)) throw std::invalid_argument("penalty coefficient must be non-negative");
}

double scalarize(const EvaluationRecord& record, const Scalarization& s) {
  if (!std::isfinite(record.worst_fi)) return std::numeric_limits<double>::infinity();
  const double violation = std::max(0.0, record.worst_fi - 1.0);
  return s.weight_mass * record.mass / s.mass_scale +
         s.weight_thickness * record.cylinder_thickness / s.thickness_scale -
         s.weight_energy * record.strain_energy / s.energy_scale + s.penalty * violation * violation;
}

bool ranks_before(const EvaluationRecord& a, const EvaluationRecord& b) {
  if (a.feasible != b.feasible) return a.feasible;
  return a.fitness < b.fitness;
}

}  // namespace cpv
