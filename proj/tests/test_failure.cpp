#include <doctest.h>

#include <cmath>
#include <random>

#include "cpv/failure.hpp"
#include "cpv/geometry.hpp"
#include "cpv/shell.hpp"

using namespace cpv;

namespace {

const Strengths kGF{765, 357, 13.1, 38.3, 22.1};

}  // namespace

TEST_SUITE("failure") {
  TEST_CASE("Tsai-Wu coefficients") {
    const auto f = tsai_wu_coefficients(kGF);
    CHECK(f.f1 == doctest::Approx(1 / 765.0 - 1 / 357.0));
    CHECK(f.f22 == doctest::Approx(1 / (13.1 * 38.3)));
    CHECK(f.f66 == doctest::Approx(1 / (22.1 * 22.1)));
    CHECK(f.f12 == doctest::Approx(-0.5 * std::sqrt(f.f11 * f.f22)));
  }

  TEST_CASE("Tsai-Wu is 1 at the pure strengths and 0 at rest") {
    CHECK(tsai_wu(Vec3(765, 0, 0), kGF) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tsai_wu(Vec3(-357, 0, 0), kGF) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tsai_wu(Vec3(0, 13.1, 0), kGF) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tsai_wu(Vec3(0, -38.3, 0), kGF) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tsai_wu(Vec3(0, 0, 22.1), kGF) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tsai_wu(Vec3(0, 0, -22.1), kGF) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tsai_wu(Vec3::Zero(), kGF) == 0.0);
  }

  TEST_CASE("scaling stresses and strengths together leaves the surface in place") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n;
    for (int i = 0; i < 100; ++i) {
      const Vec3 dir(n(rng), n(rng), n(rng));
      const double k = 0.5 + std::abs(n(rng));
      const Strengths s2{kGF.xt * k, kGF.xc * k, kGF.yt * k, kGF.yc * k, kGF.s12 * k};
      // at the crossing scale the index is 1 in both systems
      double lo = 0, hi = 1e4;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (tsai_wu(mid * dir, kGF) < 1 ? lo : hi) = mid;
      }
      CHECK(tsai_wu(lo * k * dir, s2) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(netting_thickness(2, 250, kGF.xt * k) == doctest::Approx(netting_thickness(2, 250, kGF.xt) / k));
    }
  }

  TEST_CASE("every ray from the origin crosses the surface exactly once") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int i = 0; i < 200; ++i) {
      Vec3 dir(n(rng), n(rng), n(rng));
      dir.normalize();
      int crossings = 0;
      double prev = tsai_wu(Vec3::Zero(), kGF);
      for (double t = 1.0; t < 2000.0; t += 1.0) {
        const double v = tsai_wu(t * dir, kGF);
        if ((prev - 1.0) * (v - 1.0) < 0.0) ++crossings;
        prev = v;
      }
      CHECK(crossings == 1);
    }
  }

  TEST_CASE("max principal check") {
    CHECK(max_principal_check(765, 765) == 1.0);
    CHECK(max_principal_check(0, 765) == 0.0);
    CHECK(max_principal_check(382.5, 765) == 0.5);
    CHECK(max_principal_check(2 * 300.0, 765) == doctest::Approx(2 * max_principal_check(300.0, 765)));
  }

  TEST_CASE("netting thickness") {
    CHECK(netting_thickness(2, 250, 765) == doctest::Approx(0.980).epsilon(1e-3));
    CHECK(netting_thickness(2, 250, 1710) == doctest::Approx(0.4386).epsilon(1e-3));
    CHECK(netting_thickness(2, 250, 295) == doctest::Approx(2.542).epsilon(1e-3));
    CHECK(netting_thickness(4, 250, 765) == doctest::Approx(2 * netting_thickness(2, 250, 765)));
  }

  TEST_CASE("criterion names") {
    CHECK(criterion_from_name("tsai_wu") == Criterion::TsaiWu);
    CHECK(criterion_from_name("max_principal") == Criterion::MaxPrincipal);
    CHECK_FALSE(criterion_from_name("hashin").has_value());
    CHECK(criterion_name(Criterion::MaxPrincipal) == "max_principal");
  }

  TEST_CASE("summary skips the liner, absent plies and unconstrained stations") {
    GeometryParams p;
    const auto g = build_geometry(p, {3, 3});
    std::vector<WindingLayerSpec> layers{WindingLayerSpec::helical(250, 20, 125, 0.2),
                                         WindingLayerSpec::hoop(0.3)};
    const auto field = build_layup(g, layers);
    const PlyElastic gf{34500, 3450, 0.28, 2140};
    const PlyElastic liner{1300, 1300, 0.42, 457.7};
    const auto resp = analyze_vessel(g, field, gf, liner, LoadCase{});
    const auto all = evaluate_failure(resp.stations, field, kGF, Criterion::TsaiWu);
    REQUIRE(all.tsai_wu.size() == g.stations.size());
    CHECK(all.tsai_wu[0].size() == field.plies.size());
    double worst = 0;
    for (std::size_t k = 0; k < g.stations.size(); ++k) {
      for (std::size_t q = 0; q < field.plies.size(); ++q) {
        if (field.plies[q].thickness[k] == 0.0) CHECK(all.tsai_wu[k][q] == 0.0);
        worst = std::max(worst, all.tsai_wu[k][q]);
        const double s1 = resp.stations[k].plies[q].material_stress(0);
        if (field.plies[q].thickness[k] > 0.0) CHECK(all.max_stress[k][q] == doctest::Approx(s1 / 765.0));
      }
    }
    CHECK(all.worst == worst);
    CHECK(all.tsai_wu[all.worst_station][all.worst_ply] == worst);
    CHECK(all.feasible() == (worst < 1.0));

    std::vector<char> mask(g.stations.size(), 1);
    mask[all.worst_station] = 0;
    const auto masked = evaluate_failure(resp.stations, field, kGF, Criterion::TsaiWu, mask);
    CHECK(masked.worst < all.worst);
    CHECK(masked.worst_station != all.worst_station);
    // per-station values are still reported
    CHECK(masked.tsai_wu[all.worst_station][all.worst_ply] == worst);

    const auto mp = evaluate_failure(resp.stations, field, kGF, Criterion::MaxPrincipal);
    CHECK(mp.worst == mp.max_stress[mp.worst_station][mp.worst_ply]);
  }
}
