#pragma once

// Material cards for filament-wound plies and their constituents.
//
// Units follow the N-mm-t system used throughout the library: moduli and
// strengths in MPa, densities in t/mm^3, lengths in mm.

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpv {

class MaterialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Property : std::size_t {
  E11,
  E22,
  Nu12,
  Nu13,
  Nu23,
  G12,
  G23,
  Xt,
  Xc,
  Yt,
  Yc,
  S12,
  Rho,
};
inline constexpr std::size_t kPropertyCount = 13;

enum class Provenance { Measured, Chamis };

std::string_view property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);
std::string_view provenance_name(Provenance p);

// Homogenized ply card. Any property may be absent; chamis_complete fills gaps.
struct MaterialSystem {
  std::string name;
  double fiber_volume_fraction = 0.0;
  // Isotropic cards (the liner) use E11 and Nu12 only.
  bool isotropic = false;
  std::array<std::optional<double>, kPropertyCount> values{};
  std::array<Provenance, kPropertyCount> provenance{};
  // Free-form notes recorded for every chamis-derived value.
  std::vector<std::string> assumptions;
  // Constituent names used to fill missing values (optional).
  std::string fiber;
  std::string matrix;

  bool has(Property p) const { return values[static_cast<std::size_t>(p)].has_value(); }
  double at(Property p) const;
  Provenance origin(Property p) const { return provenance[static_cast<std::size_t>(p)]; }
  void set(Property p, double value, Provenance from = Provenance::Measured);
};

// In-plane elastic constants needed for membrane lamination.
struct PlyElastic {
  double e11 = 0.0;
  double e22 = 0.0;
  double nu12 = 0.0;
  double g12 = 0.0;
};

struct Strengths {
  double xt = 0.0;
  double xc = 0.0;
  double yt = 0.0;
  double yc = 0.0;
  double s12 = 0.0;
};

PlyElastic ply_elastic(const MaterialSystem& m);
Strengths ply_strengths(const MaterialSystem& m);
double density(const MaterialSystem& m);

// Throws MaterialError naming the first violated invariant.
void validate(const MaterialSystem& m);

enum class ConstituentKind { Fiber, Matrix };

// Fiber or matrix constants. Only the fields relevant to the kind are expected.
struct ConstituentCard {
  std::string name;
  ConstituentKind kind = ConstituentKind::Fiber;
  // fiber
  std::optional<double> e11f, e22f, g12f, g23f, nu12f, xt_f, xc_f;
  // matrix
  std::optional<double> em, gm, num, xt_m, yc_m, s12_m;
  std::optional<double> rho;
  std::string source;
};

void validate(const ConstituentCard& c);

// Fills every property absent from `measured` with the Chamis closed forms.
// Measured values are kept as they are.
MaterialSystem chamis_complete(const ConstituentCard& fiber, const ConstituentCard& matrix,
                               double vf, const MaterialSystem& measured);

// Shared strength knock-down factor [1 - (sqrt(Vf) - Vf)(1 - Mm/Mf)].
double chamis_strength_factor(double vf, double matrix_modulus, double fiber_modulus);

// Card files: INI-style blocks, one `[name]` section per card.
std::vector<MaterialSystem> parse_material_db(std::istream& in, const std::string& origin = "<stream>");
std::vector<MaterialSystem> load_material_db(const std::filesystem::path& path);
std::vector<ConstituentCard> parse_constituents(std::istream& in, const std::string& origin = "<stream>");
std::vector<ConstituentCard> load_constituents(const std::filesystem::path& path);

void write_material_card(std::ostream& out, const MaterialSystem& m);

const MaterialSystem& find_material(const std::vector<MaterialSystem>& db, std::string_view name);
const ConstituentCard& find_constituent(const std::vector<ConstituentCard>& db, std::string_view name);

// Applies chamis_complete to every card naming both constituents; other
// cards are returned unchanged.
std::vector<MaterialSystem> complete_material_db(const std::vector<MaterialSystem>& db,
                                                 const std::vector<ConstituentCard>& constituents);

// Location of the bundled data directory (materials/, configs/).
std::filesystem::path bundled_data_dir();

}  // namespace cpv
