#pragma once

// First-ply failure indices used as design constraints.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cpv/laminate.hpp"
#include "cpv/materials.hpp"
#include "cpv/winding.hpp"

namespace cpv {

enum class Criterion { TsaiWu, MaxPrincipal };

std::string_view criterion_name(Criterion c);
std::optional<Criterion> criterion_from_name(std::string_view name);

struct TsaiWuCoefficients {
  double f1 = 0.0, f2 = 0.0, f11 = 0.0, f22 = 0.0, f66 = 0.0, f12 = 0.0;
};
TsaiWuCoefficients tsai_wu_coefficients(const Strengths& s);

// Plane-stress Tsai-Wu polynomial in material axes; 1 marks failure.
double tsai_wu(const Vec3& sigma, const Strengths& s);
double tsai_wu(const Vec3& sigma, const TsaiWuCoefficients& f);

// Fiber-direction tension check, sigma1 / Xt.
double max_principal_check(double sigma1, double xt);

// Netting-analysis total cylinder thickness 3PR / (2 Xt).
double netting_thickness(double pressure, double radius, double xt);

struct FailureSummary {
  Criterion criterion = Criterion::TsaiWu;
  // [station][ply] over composite plies; zero where a ply is absent.
  std::vector<std::vector<double>> tsai_wu;
  std::vector<std::vector<double>> max_stress;
  double worst = 0.0;  // worst index of the constraint criterion
  std::size_t worst_station = 0;
  std::size_t worst_ply = 0;

  bool feasible() const { return worst < 1.0; }
};

// Evaluates both indices for every layup ply at each station; the liner
// (appended after the layup plies) and absent plies do not enter. When
// `constrained` is non-empty, only stations flagged non-zero count towards
// the worst index.
FailureSummary evaluate_failure(const std::vector<LaminateState>& stations,
                                const LayupField& layup, const Strengths& strengths,
                                Criterion criterion, std::span<const char> constrained = {});

}  // namespace cpv
