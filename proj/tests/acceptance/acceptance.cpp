// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpv/config.hpp"
#include "cpv/design.hpp"
#include "cpv/evaluate.hpp"
#include "cpv/failure.hpp"
#include "cpv/materials.hpp"
#include "cpv/miga.hpp"
#include "cpv/pareto.hpp"
#include "cpv/winding.hpp"

using namespace cpv;

namespace {

// Tolerances.
constexpr double kNettingTol = 0.01;
constexpr double kTsaiWuTol = 1e-9;
constexpr double kChamisYt = 24.0;
constexpr double kChamisTol = 0.10;
constexpr double kNettingMatchTol = 0.15;
constexpr double kMassDrop = 0.15;
constexpr double kStrengthDrop = 0.05;
constexpr double kForceTol = 1e-6;
constexpr double kResolutionTol = 0.02;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " error: " << e.what();
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s:%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

struct Run {
  OptimizationResult result;
  EvaluationContext ctx;
};

Run optimize(const RunConfig& cfg) {
  auto ctx = make_context(cfg);
  const auto& space = ctx.space();
  const Evaluator eval = [&ctx, &space](std::span<const double> x) { return evaluate(space.decode(x), ctx); };
  auto result = run_miga(cfg.miga, space.lower(), space.upper(), eval);
  return {std::move(result), std::move(ctx)};
}

RunConfig reference(Criterion criterion) {
  RunConfig cfg;
  cfg.criterion = criterion;
  cfg.miga.seed = kSeed;
  return cfg;
}

std::vector<MaterialSystem> database() {
  return load_material_db(bundled_data_dir() / "materials" / "default_table1.ini");
}

void netting(Outcome& o) {
  const auto db = database();
  const RunConfig cfg;
  for (auto [name, table] : {std::pair{"GF-PP", 0.98}, {"CF-PA", 0.43}, {"FF-PLA", 2.54}}) {
    const double th = netting_thickness(cfg.load.internal_pressure, cfg.geometry.radius,
                                        find_material(db, name).at(Property::Xt));
    const double dev = std::abs(th - table) / table;
    o.detail << ' ' << name << ' ' << fmt(th) << " vs " << table << " (" << fmt(100 * dev, 2) << "%)";
    o.require(dev <= kNettingTol, std::string(name) + " off by more than 1%");
  }
}

void tsai_wu_identities(Outcome& o) {
  const auto db = database();
  double worst = 0.0;
  for (const char* name : {"GF-PP", "CF-PA", "FF-PLA"}) {
    const auto s = ply_strengths(find_material(db, name));
    for (const Vec3& sigma : {Vec3(s.xt, 0, 0), Vec3(-s.xc, 0, 0), Vec3(0, s.yt, 0), Vec3(0, -s.yc, 0),
                              Vec3(0, 0, s.s12)}) {
      worst = std::max(worst, std::abs(tsai_wu(sigma, s) - 1.0));
    }
    o.require(tsai_wu(Vec3::Zero(), s) == 0.0, std::string(name) + " FI(0) != 0");
  }
  o.detail << " max |FI - 1| = " << fmt(worst, 3) << " over 15 states; FI(0) = 0";
  o.require(worst <= kTsaiWuTol, "boundary identity off");
}

void chamis_anchor(Outcome& o) {
  const auto cons = load_constituents(bundled_data_dir() / "materials" / "constituents.ini");
  auto card = find_material(database(), "GF-PP");
  card.values[static_cast<std::size_t>(Property::Yt)].reset();
  const auto full = chamis_complete(find_constituent(cons, card.fiber), find_constituent(cons, card.matrix),
                                    card.fiber_volume_fraction, card);
  const double yt = full.at(Property::Yt);
  const double dev = std::abs(yt - kChamisYt) / kChamisYt;
  o.detail << " derived Yt = " << fmt(yt) << " MPa (" << fmt(100 * dev, 2) << "% from 24), provenance "
           << provenance_name(full.origin(Property::Yt)) << ", " << full.assumptions.size() << " assumption notes";
  o.require(dev <= kChamisTol, "Yt outside 24 +/- 10%");
  o.require(full.origin(Property::Yt) == Provenance::Chamis, "provenance not recorded");
  o.require(!full.assumptions.empty(), "assumptions not recorded");
}

void max_principal_vs_netting(Outcome& o) {
  for (const char* name : {"GF-PP", "CF-PA", "FF-PLA"}) {
    auto cfg = reference(Criterion::MaxPrincipal);
    cfg.composite = name;
    const auto run = optimize(cfg);
    const double net = netting_thickness(cfg.load.internal_pressure, cfg.geometry.radius,
                                         run.ctx.composite().at(Property::Xt));
    if (!run.result.feasible_found()) {
      o.detail << ' ' << name << " no feasible design;";
      o.require(false, std::string(name) + " infeasible");
      continue;
    }
    const double th = run.result.best().cylinder_thickness;
    const double dev = (th - net) / net;
    o.detail << ' ' << name << " Th_c " << fmt(th) << " vs " << fmt(net) << " (" << (dev >= 0 ? "+" : "")
             << fmt(100 * dev, 3) << "%);";
    o.require(std::abs(dev) <= kNettingMatchTol, std::string(name) + " outside 15%");
  }
}

void tsai_wu_trend(Outcome& o) {
  const auto run = optimize(reference(Criterion::TsaiWu));
  const auto& history = run.result.history;
  const EvaluationRecord* initial = nullptr;
  for (const auto& r : history) {
    if (r.generation == 0 && r.feasible && (!initial || r.fitness < initial->fitness)) initial = &r;
  }
  o.detail << ' ' << history.size() << " evaluations;";
  if (!run.result.feasible_found()) {
    o.detail << " no feasible design (least FI " << fmt(run.result.best().worst_fi) << ")";
    o.require(false, "no feasible final design");
    return;
  }
  const auto& best = run.result.best();
  o.detail << " final " << fmt(best.mass) << " kg, FI " << fmt(best.worst_fi);
  o.require(best.worst_fi < 1.0, "final FI >= 1");
  if (!initial) {
    o.detail << "; no feasible design in the initial population";
    o.require(false, "no initial best-feasible mass");
    return;
  }
  const double drop = 1.0 - best.mass / initial->mass;
  o.detail << "; initial " << fmt(initial->mass) << " kg; drop " << fmt(100 * drop, 3) << "%";
  o.require(best.mass < initial->mass, "mass did not decrease");
  o.require(drop >= kMassDrop, "mass drop below 15%");
}

void strength_sensitivity(Outcome& o) {
  auto low = reference(Criterion::TsaiWu);
  auto high = low;
  high.overrides = {{Property::Yt, 24.0}};
  const auto a = optimize(low);
  const auto b = optimize(high);
  auto describe = [&](const char* tag, const OptimizationResult& r) {
    if (r.feasible_found()) {
      o.detail << ' ' << tag << " Th_c " << fmt(r.best().cylinder_thickness) << " mm;";
    } else {
      o.detail << ' ' << tag << " no feasible design (least FI " << fmt(r.best().worst_fi) << ");";
    }
  };
  describe("Yt 13.1:", a.result);
  describe("Yt 24:", b.result);
  if (!a.result.feasible_found() || !b.result.feasible_found()) {
    o.require(false, "both runs need a feasible optimum");
    return;
  }
  const double drop = 1.0 - b.result.best().cylinder_thickness / a.result.best().cylinder_thickness;
  o.detail << " decrease " << fmt(100 * drop, 3) << "%";
  o.require(drop >= kStrengthDrop, "decrease below 5%");
}

DesignVector probe_design() {
  return {{0.4, 0.3, 0.5}, {0.3, 0.2, 0.2, 0.1}, {20, 70, 150}, {125, 180, 215}};
}

void solver_properties(Outcome& o) {
  const RunConfig base = reference(Criterion::TsaiWu);
  const auto ctx = make_context(base);
  const auto design = probe_design();

  // force recovery and balanced shear
  const auto ev = evaluate_detailed(design, ctx);
  double worst_force = 0.0, worst_shear = 0.0;
  for (std::size_t k = 0; k < ev.response.stations.size(); ++k) {
    const auto& st = ev.response.stations[k];
    Vec3 sum = Vec3::Zero();
    for (std::size_t p = 0; p < ev.layup.plies.size(); ++p) sum += st.plies[p].lab_stress * ev.layup.plies[p].thickness[k];
    sum += st.plies.back().lab_stress * ctx.geometry().params.liner_thickness;
    worst_force = std::max(worst_force, (sum - st.forces).norm() / st.forces.norm());
    worst_shear = std::max(worst_shear, std::abs(st.strains(2)));
  }
  o.detail << " force " << fmt(worst_force, 2) << ", shear strain " << fmt(worst_shear, 2);
  o.require(worst_force <= kForceTol, "force recovery");
  o.require(worst_shear <= 1e-12, "balanced shear strain");

  // pressure linearity with the water off
  auto dry = base;
  dry.load.water_density = 0.0;
  auto dry2 = dry;
  dry2.load.internal_pressure *= 2.5;
  const auto e1 = evaluate_detailed(design, make_context(dry));
  const auto e2 = evaluate_detailed(design, make_context(dry2));
  double lin = 0.0;
  for (std::size_t k = 0; k < e1.response.stations.size(); ++k) {
    for (std::size_t p = 0; p < e1.response.stations[k].plies.size(); ++p) {
      const Vec3 s1 = e1.response.stations[k].plies[p].material_stress;
      const Vec3 s2 = e2.response.stations[k].plies[p].material_stress;
      lin = std::max(lin, (s2 - 2.5 * s1).norm() / (1e-12 + s2.norm()));
    }
  }
  o.detail << ", linearity " << fmt(lin, 2);
  o.require(lin <= 1e-9, "pressure linearity");

  // encode/decode
  std::mt19937_64 rng(kSeed);
  const auto& space = ctx.space();
  BinaryCodec codec(space.lower(), space.upper(), base.miga.bits_per_variable);
  bool roundtrip = true;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      x.push_back(std::uniform_real_distribution<double>(space.lower()[i], space.upper()[i])(rng));
    }
    const auto back = codec.decode(codec.encode(x));
    for (std::size_t i = 0; i < x.size(); ++i) roundtrip &= std::abs(back[i] - x[i]) <= codec.step(i) * (1 + 1e-12);
  }
  o.detail << ", roundtrip " << (roundtrip ? "ok" : "broken");
  o.require(roundtrip, "encode/decode");

  // elitism and determinism on the vessel problem
  const auto r1 = optimize(base);
  const auto r2 = optimize(base);
  bool monotone = true;
  for (const auto& ib : r1.result.island_best) {
    for (std::size_t g = 1; g < ib.size(); ++g) monotone &= ib[g] <= ib[g - 1];
  }
  const bool same = history_hash(r1.result.history) == history_hash(r2.result.history);
  o.detail << ", elitism " << (monotone ? "ok" : "broken") << ", hash " << (same ? "stable" : "differs");
  o.require(monotone, "elitism");
  o.require(same, "determinism");

  // station resolution
  auto fine = base;
  fine.stations.per_dome *= 2;
  fine.stations.cylinder *= 2;
  for (Criterion c : {Criterion::TsaiWu, Criterion::MaxPrincipal}) {
    auto coarse_cfg = base;
    auto fine_cfg = fine;
    coarse_cfg.criterion = fine_cfg.criterion = c;
    const auto a = evaluate(design, make_context(coarse_cfg));
    const auto b = evaluate(design, make_context(fine_cfg));
    const double dm = std::abs(b.mass - a.mass) / a.mass;
    const double df = std::abs(b.worst_fi - a.worst_fi) / a.worst_fi;
    o.detail << ", " << criterion_name(c) << " x2 stations: mass " << fmt(100 * dm, 2) << "%, FI " << fmt(100 * df, 2)
             << "%";
    o.require(dm < kResolutionTol && df < kResolutionTol, std::string("resolution ") + std::string(criterion_name(c)));
  }
}

void geometry_layup(Outcome& o) {
  const double R = 250.0;
  const auto l1 = WindingLayerSpec::helical(R, 20, 125, 1.0);
  const double a0 = fiber_angle(l1, 20, DomeSide::Upper, R);
  const double a30 = fiber_angle(WindingLayerSpec::helical(R, 20, 20, 1.0), 40, DomeSide::Upper, R);
  const double th_eq = dome_thickness(l1, R, DomeSide::Lower, R);
  o.detail << " alpha(r0) " << fmt(a0, 12) << ", geodesic 20/40 " << fmt(a30, 12) << ", th(R) " << fmt(th_eq, 12);
  o.require(std::abs(a0 - 90.0) < 1e-9, "alpha(r0)");
  o.require(std::abs(a30 - 30.0) < 1e-9, "geodesic 30 deg");
  o.require(std::abs(th_eq - 1.0) < 1e-12, "th(R)");

  const RunConfig cfg;
  const auto ctx = make_context(cfg);
  const auto& g = ctx.geometry();
  bool masked = true, covered = true;
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x;
    for (std::size_t i = 0; i < ctx.space().dimension(); ++i) {
      x.push_back(std::uniform_real_distribution<double>(ctx.space().lower()[i], ctx.space().upper()[i])(rng));
    }
    const auto d = ctx.space().decode(x);
    const auto field = build_layup(g, ctx.layers(d), cfg.winding.layup);
    for (std::size_t k = 0; k < g.stations.size(); ++k) {
      const auto& st = g.stations[k];
      covered &= field.present_plies(k) > 0;
      if (st.region == Region::Cylinder) continue;
      for (const auto& ply : field.plies) {
        if (ply.kind != LayerKind::Helical) continue;
        const double r0 = st.region == Region::UpperDome ? d.upper_openings[ply.layer] : d.lower_openings[ply.layer];
        if (st.r < r0 * (1 - 1e-12)) masked &= ply.thickness[k] == 0.0;
      }
    }
  }
  o.detail << ", masking " << (masked ? "ok" : "broken") << ", coverage " << (covered ? "ok" : "broken")
           << " (200 random designs)";
  o.require(masked, "opening masking");
  o.require(covered, "coverage");
}

}  // namespace

int main() {
  report(1, "netting oracle", netting);
  report(2, "Tsai-Wu boundary identities", tsai_wu_identities);
  report(3, "micromechanics transverse strength", chamis_anchor);
  report(4, "max-principal MIGA 10x10x10 vs netting", max_principal_vs_netting);
  report(5, "Tsai-Wu GF-PP mass trend", tsai_wu_trend);
  report(6, "Yt 13.1 -> 24 thickness decrease", strength_sensitivity);
  report(7, "solver properties", solver_properties);
  report(8, "geometry and layup", geometry_layup);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
