#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cpv/geometry.hpp"
#include "cpv/laminate.hpp"
#include "cpv/shell.hpp"
#include "cpv/winding.hpp"
#include "oracle.hpp"

using namespace cpv;

namespace {

constexpr double kR = 250.0;
const PlyElastic kGF{34500, 3450, 0.28, 2140};
const PlyElastic kLiner{1300, 1300, 0.42, 1300 / (2 * 1.42)};

std::vector<WindingLayerSpec> reference_stack(double th = 1.0) {
  std::vector<WindingLayerSpec> layers;
  layers.push_back(WindingLayerSpec::helical(kR, 20, 125, th));
  layers.push_back(WindingLayerSpec::helical(kR, 60, 150, th));
  layers.push_back(WindingLayerSpec::helical(kR, 125, 200, th));
  for (int i = 0; i < 4; ++i) layers.push_back(WindingLayerSpec::hoop(th));
  return layers;
}

oracle::Ply oply(const PlyElastic& e, double angle, double t) { return {e.e11, e.e22, e.nu12, e.g12, angle, t}; }

double oracle_energy(const VesselGeometry& g, const LayupField& field, const LoadCase& load) {
  double total = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < g.stations.size(); ++k) {
    std::vector<oracle::Ply> plies;
    for (const auto& p : field.plies) plies.push_back(oply(kGF, p.angle[k], p.thickness[k]));
    plies.push_back(oply(kLiner, 0.0, g.params.liner_thickness));
    const auto& st = g.stations[k];
    const double p = load.internal_pressure + load.water_density * load.gravity * (g.total_height() - st.z);
    const double nphi = 0.5 * p * st.r2;
    const double nth = std::isinf(st.r1) ? p * st.r2 : p * st.r2 * (1 - st.r2 / (2 * st.r1));
    const double u = oracle::solve(plies, {nphi, nth, 0.0}).energy_density;
    if (k > 0) total += 0.5 * (st.s - g.stations[k - 1].s) * (g.stations[k - 1].r * prev + st.r * u);
    prev = u;
  }
  return 2 * std::numbers::pi * total;
}

}  // namespace

TEST_SUITE("mechanics") {
  TEST_CASE("membrane forces: cylinder and sphere") {
    MeridianStation cyl{0, 0, kR, std::numeric_limits<double>::infinity(), kR, Region::Cylinder};
    const auto f = membrane_forces(cyl, 2.0);
    CHECK(f.n_phi == 250.0);
    CHECK(f.n_theta == 500.0);
    MeridianStation apex{0, 0, 1.0, kR, kR, Region::UpperDome};
    const auto s = membrane_forces(apex, 2.0);
    CHECK(s.n_phi == doctest::Approx(250.0));
    CHECK(s.n_theta == doctest::Approx(250.0));
  }

  TEST_CASE("hydrostatic head at the lower pole is about 0.01 MPa") {
    const auto g = build_geometry({});
    LoadCase load;
    CHECK(load.hydrostatic_at(0.0, g) == doctest::Approx(1e-9 * 9810 * 1065).epsilon(1e-12));
    CHECK(load.hydrostatic_at(0.0, g) == doctest::Approx(0.01).epsilon(0.05));
    CHECK(load.hydrostatic_at(g.total_height(), g) == 0.0);
    load.fill_height = 500.0;
    CHECK(load.hydrostatic_at(600.0, g) == 0.0);
    CHECK(load.hydrostatic_at(400.0, g) > 0.0);
  }

  TEST_CASE("hoop force decreases up the cylinder under the water column") {
    const auto g = build_geometry({});
    LoadCase load;
    std::size_t bottom = 0, top = 0;
    for (std::size_t k = 0; k < g.stations.size(); ++k) {
      if (g.stations[k].region != Region::Cylinder) continue;
      if (bottom == 0) bottom = k;
      top = k;
    }
    CHECK(membrane_forces(g, load, bottom).n_theta > membrane_forces(g, load, top).n_theta);
  }

  TEST_CASE("single isotropic ply recovers N / t") {
    const PlyInput ply{reduced_stiffness(kLiner), 17.0, 4.0};
    const auto s = laminate_solve(std::span(&ply, 1), Vec3(250, 500, 0));
    CHECK(s.plies[0].lab_stress(0) == doctest::Approx(62.5).epsilon(1e-12));
    CHECK(s.plies[0].lab_stress(1) == doctest::Approx(125.0).epsilon(1e-12));
    CHECK(std::abs(s.plies[0].lab_stress(2)) < 1e-10);
  }

  TEST_CASE("uniaxial single ply energy density is sigma^2 t / (2E)") {
    const PlyElastic iso{1000, 1000, 0.3, 1000 / 2.6};
    const PlyInput ply{reduced_stiffness(iso), 0.0, 2.0};
    const auto s = laminate_solve(std::span(&ply, 1), Vec3(100, 0, 0));
    const double sigma = 50.0;
    CHECK(s.energy_density == doctest::Approx(sigma * sigma * 2.0 / (2 * 1000)).epsilon(1e-12));
  }

  TEST_CASE("[0/90] GF-PP matches the brute-force oracle and frozen values") {
    const Mat3 q = reduced_stiffness(kGF);
    const std::vector<PlyInput> stack{{q, 0.0, 1.0}, {q, 90.0, 1.0}};
    const auto s = laminate_solve(stack, Vec3(250, 500, 0));
    const auto o = oracle::solve({oply(kGF, 0, 1), oply(kGF, 90, 1)}, {250, 500, 0});
    for (int i = 0; i < 3; ++i) {
      CHECK(s.strains(i) == doctest::Approx(o.strain[i]).epsilon(1e-12).scale(1e-12));
      for (int p = 0; p < 2; ++p) {
        CHECK(s.plies[p].material_stress(i) == doctest::Approx(o.material[p][i]).epsilon(1e-12).scale(1e-9));
      }
    }
    CHECK(s.plies[0].material_stress(0) == doctest::Approx(217.09819830569145).epsilon(1e-12));
    CHECK(s.plies[0].material_stress(1) == doctest::Approx(50.143181004653385).epsilon(1e-12));
    CHECK(s.plies[1].material_stress(0) == doctest::Approx(449.85681899534666).epsilon(1e-12));
    CHECK(s.plies[1].material_stress(1) == doctest::Approx(32.90180169430855).epsilon(1e-12));
    CHECK(s.energy_density == doctest::Approx(3.9287925241531485).epsilon(1e-12));
  }

  TEST_CASE("angle-ply stacks match the oracle, balanced pairs have no shear strain") {
    const Mat3 q = reduced_stiffness(kGF);
    for (double a : {10.0, 35.0, 54.7, 80.0}) {
      const std::vector<PlyInput> stack{{q, a, 0.8}, {q, -a, 0.8}, {q, 90, 0.5}};
      const auto s = laminate_solve(stack, Vec3(250, 500, 0));
      const auto o = oracle::solve({oply(kGF, a, 0.8), oply(kGF, -a, 0.8), oply(kGF, 90, 0.5)}, {250, 500, 0});
      CHECK(std::abs(s.strains(2)) < 1e-15);
      for (std::size_t p = 0; p < 3; ++p) {
        for (int i = 0; i < 3; ++i) {
          CHECK(s.plies[p].material_stress(i) == doctest::Approx(o.material[p][i]).epsilon(1e-10).scale(1e-9));
        }
      }
    }
  }

  TEST_CASE("force recovery at every station of the reference vessel") {
    const auto g = build_geometry({});
    const auto field = build_layup(g, reference_stack(0.5));
    const auto resp = analyze_vessel(g, field, kGF, kLiner, LoadCase{});
    for (std::size_t k = 0; k < g.stations.size(); ++k) {
      const auto& st = resp.stations[k];
      Vec3 sum = Vec3::Zero();
      for (std::size_t p = 0; p < field.plies.size(); ++p) sum += st.plies[p].lab_stress * field.plies[p].thickness[k];
      sum += st.plies.back().lab_stress * g.params.liner_thickness;
      CHECK((sum - st.forces).norm() <= 1e-6 * st.forces.norm());
      CHECK(st.energy_density > 0.0);
    }
  }

  TEST_CASE("stresses scale linearly with pressure when the water is off") {
    const auto g = build_geometry({});
    const auto field = build_layup(g, reference_stack(0.5));
    LoadCase a;
    a.water_density = 0.0;
    LoadCase b = a;
    b.internal_pressure = 3.0 * a.internal_pressure;
    const auto ra = analyze_vessel(g, field, kGF, kLiner, a);
    const auto rb = analyze_vessel(g, field, kGF, kLiner, b);
    for (std::size_t k = 0; k < g.stations.size(); ++k) {
      for (std::size_t p = 0; p < ra.stations[k].plies.size(); ++p) {
        const Vec3 d = rb.stations[k].plies[p].material_stress - 3.0 * ra.stations[k].plies[p].material_stress;
        CHECK(d.norm() <= 1e-9 * (1.0 + rb.stations[k].plies[p].material_stress.norm()));
      }
    }
  }

  TEST_CASE("zero pressure gives zero energy") {
    const auto g = build_geometry({});
    const auto field = build_layup(g, reference_stack());
    LoadCase none;
    none.internal_pressure = 0.0;
    none.water_density = 0.0;
    const auto e = total_strain_energy(g, analyze_vessel(g, field, kGF, kLiner, none));
    CHECK(e.total == 0.0);
    CHECK(e.peak_density == 0.0);
  }

  TEST_CASE("empty laminate is an error") {
    const std::vector<PlyInput> stack{{reduced_stiffness(kGF), 0.0, 0.0}};
    CHECK_THROWS_AS(laminate_solve(stack, Vec3(1, 1, 0)), LaminateError);
  }

  TEST_CASE("mass of one hoop ply on the cylinder") {
    const auto g = build_geometry({});
    const auto field = build_layup(g, {WindingLayerSpec::hoop(1.0)});
    const double rho = 1.63e-9;
    CHECK(total_mass(field, g, rho) == doctest::Approx(2.096965972381383).epsilon(1e-12));
    CHECK(total_mass(build_layup(g, {WindingLayerSpec::hoop(0.0)}), g, rho) == 0.0);
  }

  TEST_CASE("mass is linear in ply thickness") {
    const auto g = build_geometry({});
    const double m1 = total_mass(build_layup(g, reference_stack(0.6)), g, 1.63e-9);
    const double m2 = total_mass(build_layup(g, reference_stack(1.2)), g, 1.63e-9);
    CHECK(m2 == doctest::Approx(2 * m1).epsilon(1e-14));
  }

  TEST_CASE("reference layup strain energy: oracle and frozen value") {
    const auto g = build_geometry({});
    const auto field = build_layup(g, reference_stack(1.0));
    const LoadCase load;
    const auto e = total_strain_energy(g, analyze_vessel(g, field, kGF, kLiner, load));
    CHECK(e.total == doctest::Approx(oracle_energy(g, field, load)).epsilon(1e-10));
    CHECK(e.total == doctest::Approx(1842757.3705716131).epsilon(1e-9));
    CHECK(e.peak_density > 0.0);
  }
}
