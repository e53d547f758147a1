#include "cpv/failure.hpp"

#include <cmath>
#include <stdexcept>

namespace cpv {

std::string_view criterion_name(Criterion c) {
  return c == Criterion::TsaiWu ? "tsai_wu" : "max_principal";
}

std::optional<Criterion> criterion_from_name(std::string_view name) {
  if (name == "tsai_wu" || name == "tsai-wu") return Criterion::TsaiWu;
  if (name == "max_principal" || name == "max-principal") return Criterion::MaxPrincipal;
  return std::nullopt;
}

TsaiWuCoefficients tsai_wu_coefficients(const Strengths& s) {
  TsaiWuCoefficients f;
  f.f1 = 1.0 / s.xt - 1.0 / s.xc;
  f.f2 = 1.0 / s.yt - 1.0 / s.yc;
  f.f11 = 1.0 / (s.xt * s.xc);
  f.f22 = 1.0 / (s.yt * s.yc);
  f.f66 = 1.0 / (s.s12 * s.s12);
  f.f12 = -0.5 * std::sqrt(f.f11 * f.f22);
  return f;
}

double tsai_wu(const Vec3& sigma, const TsaiWuCoefficients& f) {
  const double s1 = sigma[0];
  const double s2 = sigma[1];
  const double s6 = sigma[2];
  return f.f1 * s1 + f.f2 * s2 + f.f11 * s1 * s1 + f.f22 * s2 * s2 + f.f66 * s6 * s6 +
         2.0 * f.f12 * s1 * s2;
}

double tsai_wu(const Vec3& sigma, const Strengths& s) { return tsai_wu(sigma, tsai_wu_coefficients(s)); }

double max_principal_check(double sigma1, double xt) { return sigma1 / xt; }

double netting_thickness(double pressure, double radius, double xt) {
  if (!(pressure > 0.0 && radius > 0.0 && xt > 0.0)) {
    throw std::invalid_argument("netting thickness needs positive pressure, radius and strength");
  }
  return 3.0 * pressure * radius / (2.0 * xt);
}

FailureSummary evaluate_failure(const std::vector<LaminateState>& stations,
                                const LayupField& layup, const Strengths& strengths,
                                Criterion criterion, std::span<const char> constrained) {
  FailureSummary out;
  out.criterion = criterion;
  const auto coeff = tsai_wu_coefficients(strengths);
  const std::size_t composite_plies = layup.plies.size();
  out.tsai_wu.assign(stations.size(), std::vector<double>(composite_plies, 0.0));
  out.max_stress.assign(stations.size(), std::vector<double>(composite_plies, 0.0));
  bool first = true;
  for (std::size_t k = 0; k < stations.size(); ++k) {
    for (std::size_t p = 0; p < composite_plies; ++p) {
      if (!(layup.plies[p].thickness[k] > 0.0)) continue;
      const Vec3& sigma = stations[k].plies[p].material_stress;
      const double tw = tsai_wu(sigma, coeff);
      const double ms = max_principal_check(sigma[0], strengths.xt);
      out.tsai_wu[k][p] = tw;
      out.max_stress[k][p] = ms;
      if (!constrained.empty() && !constrained[k]) continue;
      const double fi = criterion == Criterion::TsaiWu ? tw : ms;
      if (first || fi > out.worst) {
        out.worst = fi;
        out.worst_station = k;
        out.worst_ply = p;
        first = false;
      }
    }
  }
  return out;
}

}  // namespace cpv
