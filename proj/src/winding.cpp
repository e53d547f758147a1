#include "cpv/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace cpv {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

double asin_deg(double x) { return std::asin(std::clamp(x, -1.0, 1.0)) * kDeg; }

std::vector<double> section_fractions(const LayupOptions& options) {
  if (options.section_bounds.empty()) {
    if (options.sections < 1) throw WindingError("at least one cylinder section is required");
    std::vector<double> f(options.sections + 1);
    for (int j = 0; j <= options.sections; ++j) f[j] = static_cast<double>(j) / options.sections;
    return f;
  }
  const auto& f = options.section_bounds;
  if (f.size() < 2 || f.front() != 0.0 || f.back() != 1.0) {
    throw WindingError("cylinder section bounds must run from 0 to 1");
  }
  for (std::size_t j = 1; j < f.size(); ++j) {
    if (!(f[j] > f[j - 1])) throw WindingError("cylinder section bounds must be strictly increasing");
  }
  return f;
}

}  // namespace

std::string_view thickness_law_name(ThicknessLaw law) {
  return law == ThicknessLaw::Literal ? "literal" : "fiber_conserving";
}

ThicknessLaw parse_thickness_law(std::string_view name) {
  if (name == "fiber_conserving" || name == "fiber-conserving") return ThicknessLaw::FiberConserving;
  if (name == "literal") return ThicknessLaw::Literal;
  throw WindingError("unknown thickness law '" + std::string(name) + "' (fiber_conserving|literal)");
}

WindingLayerSpec WindingLayerSpec::helical(double radius, double r0_upper, double r0_lower,
                                           double thickness, double bandwidth, double delta_upper,
                                           double delta_lower, double friction_exponent) {
  WindingLayerSpec l;
  l.kind = LayerKind::Helical;
  l.r0_upper = r0_upper;
  l.r0_lower = r0_lower;
  l.thickness = thickness;
  l.bandwidth = bandwidth;
  l.delta_upper = delta_upper;
  l.delta_lower = delta_lower;
  l.friction_exponent = friction_exponent;
  l.alpha_c_upper = asin_deg(r0_upper / radius) + delta_upper;
  l.alpha_c_lower = asin_deg(r0_lower / radius) + delta_lower;
  return l;
}

WindingLayerSpec WindingLayerSpec::hoop(double thickness, double angle) {
  WindingLayerSpec l;
  l.kind = LayerKind::Hoop;
  l.thickness = thickness;
  l.hoop_angle = angle;
  return l;
}

void validate(const WindingLayerSpec& layer, double radius) {
  if (!(layer.thickness >= 0.0)) throw WindingError("ply thickness must be non-negative");
  if (layer.kind == LayerKind::Hoop) {
    if (!(layer.hoop_angle >= 85.0 && layer.hoop_angle <= 90.0)) {
      throw WindingError("hoop angle must lie in [85, 90] degrees");
    }
    return;
  }
  for (DomeSide side : {DomeSide::Lower, DomeSide::Upper}) {
    const double r0 = layer.r0(side);
    if (!(r0 > 0.0)) throw WindingError("polar opening radius must be positive");
    if (!(r0 < radius)) throw WindingError("polar opening radius must be smaller than the cylinder radius");
    const double expected = layer.alpha_c(side) - asin_deg(r0 / radius);
    if (std::abs(expected - layer.delta(side)) > 1e-9) {
      throw WindingError("deviation must equal alpha_c - asin(r0/R)");
    }
  }
  if (!(layer.bandwidth > 0.0)) throw WindingError("bandwidth must be positive");
  if (!(layer.friction_exponent > 0.0)) throw WindingError("friction exponent must be positive");
}

double fiber_angle(const WindingLayerSpec& layer, double r, DomeSide side, double radius) {
  const double r0 = layer.r0(side);
  if (r < r0) throw AbovePolarOpening("radius lies inside the polar opening");
  if (r > radius * (1.0 + 1e-12)) throw WindingError("radius exceeds the cylinder radius");
  const double blend = std::pow((r - r0) / (radius - r0), layer.friction_exponent);
  return asin_deg(r0 / r) + layer.deviation_sign * layer.delta(side) * blend;
}

double thickness_cap_radius(const WindingLayerSpec& layer, DomeSide side, double radius) {
  const double r0 = layer.r0(side);
  return std::min(radius, r0 + std::max(0.01 * (radius - r0), 0.5 * layer.bandwidth));
}

double dome_thickness(const WindingLayerSpec& layer, double r, DomeSide side, double radius) {
  const double r0 = layer.r0(side);
  if (r < r0) throw AbovePolarOpening("radius lies inside the polar opening");
  const double rr = std::max(r, thickness_cap_radius(layer, side, radius));
  const double alpha = fiber_angle(layer, rr, side, radius) / kDeg;
  const double alpha_c = layer.alpha_c(side) / kDeg;
  const double band = 2.0 * layer.bandwidth * std::pow((radius - rr) / (radius - r0), 4);
  const double numerator = layer.thickness_law == ThicknessLaw::Literal ? rr : radius;
  return layer.thickness * std::cos(alpha_c) / std::cos(alpha) * numerator / (rr + band);
}

double LayupField::total_thickness(std::size_t station) const {
  double t = 0.0;
  for (const auto& p : plies) t += p.thickness[station];
  return t;
}

std::size_t LayupField::present_plies(std::size_t station) const {
  return static_cast<std::size_t>(
      std::count_if(plies.begin(), plies.end(), [&](const auto& p) { return p.thickness[station] > 0.0; }));
}

LayupField build_layup(const VesselGeometry& geom, const std::vector<WindingLayerSpec>& layers,
                       const LayupOptions& options) {
  const double R = geom.params.radius;
  for (const auto& l : layers) validate(l, R);
  const auto fractions = section_fractions(options);

  LayupField field;
  field.station_count = geom.stations.size();
  for (double f : fractions) field.section_z.push_back(geom.cylinder_bottom() + f * geom.params.cylinder_height);

  const std::size_t n = geom.stations.size();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const auto& layer = layers[li];
    if (layer.kind == LayerKind::Hoop) {
      PlyTrack ply{static_cast<int>(li), LayerKind::Hoop, +1, std::vector<double>(n, 0.0),
                   std::vector<double>(n, 0.0)};
      for (std::size_t k = 0; k < n; ++k) {
        if (geom.stations[k].region != Region::Cylinder) continue;
        ply.angle[k] = layer.hoop_angle;
        ply.thickness[k] = layer.thickness;
      }
      field.section_angles.push_back(std::vector<double>(fractions.size(), layer.hoop_angle));
      field.plies.push_back(std::move(ply));
      continue;
    }

    // alpha_c arrays at the section boundaries, linear from the lower to the
    // upper junction angle.
    std::vector<double> nodes(fractions.size());
    for (std::size_t j = 0; j < fractions.size(); ++j) {
      nodes[j] = layer.alpha_c_lower + fractions[j] * (layer.alpha_c_upper - layer.alpha_c_lower);
    }

    PlyTrack plus{static_cast<int>(li), LayerKind::Helical, +1, std::vector<double>(n, 0.0),
                  std::vector<double>(n, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
      const auto& st = geom.stations[k];
      if (st.region == Region::Cylinder) {
        const double f = (st.z - geom.cylinder_bottom()) / geom.params.cylinder_height;
        auto hi = std::upper_bound(fractions.begin(), fractions.end(), f);
        std::size_t j = hi == fractions.begin() ? 0 : static_cast<std::size_t>(hi - fractions.begin()) - 1;
        j = std::min(j, fractions.size() - 2);
        const double w = (f - fractions[j]) / (fractions[j + 1] - fractions[j]);
        plus.angle[k] = nodes[j] + w * (nodes[j + 1] - nodes[j]);
        plus.thickness[k] = layer.thickness;
        continue;
      }
      const DomeSide side = st.region == Region::UpperDome ? DomeSide::Upper : DomeSide::Lower;
      // Tolerate round-off at the boss station, which sits on the layer-1 opening.
      const double r = st.r < layer.r0(side) && st.r > layer.r0(side) * (1.0 - 1e-12) ? layer.r0(side) : st.r;
      if (r < layer.r0(side)) continue;
      plus.angle[k] = fiber_angle(layer, r, side, R);
      plus.thickness[k] = dome_thickness(layer, r, side, R);
    }
    PlyTrack minus = plus;
    minus.sign = -1;
    for (auto& a : minus.angle) a = -a;
    field.section_angles.push_back(std::move(nodes));
    field.plies.push_back(std::move(plus));
    field.plies.push_back(std::move(minus));
  }
  return field;
}

void write_layup_csv(std::ostream& out, const VesselGeometry& geom, const LayupField& layup) {
  out << "s,region,z,r";
  for (std::size_t p = 0; p < layup.plies.size(); ++p) {
    const auto& ply = layup.plies[p];
    const std::string tag = "L" + std::to_string(ply.layer + 1) +
                            (ply.kind == LayerKind::Hoop ? "h" : (ply.sign > 0 ? "p" : "m"));
    out << ",angle_" << tag << ",th_" << tag;
  }
  out << ",th_total\n";
  for (std::size_t k = 0; k < geom.stations.size(); ++k) {
    const auto& st = geom.stations[k];
    out << st.s << ',' << region_name(st.region) << ',' << st.z << ',' << st.r;
    for (const auto& ply : layup.plies) {
      out << ',';
      if (ply.thickness[k] > 0.0) out << ply.angle[k];
      out << ',' << ply.thickness[k];
    }
    out << ',' << layup.total_thickness(k) << '\n';
  }
}

}  // namespace cpv
