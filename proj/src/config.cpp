#include "cpv/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace cpv {

namespace pt = boost::property_tree;

std::string_view optimizer_name(OptimizerKind k) {
  return k == OptimizerKind::Miga ? "miga" : "hooke_jeeves";
}

std::optional<OptimizerKind> optimizer_from_name(std::string_view name) {
  if (name == "miga") return OptimizerKind::Miga;
  if (name == "hooke_jeeves" || name == "hooke-jeeves") return OptimizerKind::HookeJeeves;
  return std::nullopt;
}

namespace {

pt::ptree read_tree(std::istream& in, const std::string& origin) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

// Reads one section, tracking which keys were consumed so leftovers can be
// reported.
class Section {
 public:
  Section(const pt::ptree* node, std::string name, std::string origin)
      : node_(node), name_(std::move(name)), origin_(std::move(origin)) {}

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    if (!node_) return std::nullopt;
    auto v = node_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    // inline comments
    return boost::trim_copy(v->substr(0, v->find_first_of(";#")));
  }

  void real(const std::string& key, double& out) {
    if (auto t = text(key)) out = number(key, *t);
  }

  void integer(const std::string& key, int& out) {
    if (auto t = text(key)) {
      const double v = number(key, *t);
      if (v != std::floor(v) || std::abs(v) > 1e9) fail(key, "expected an integer, got '" + *t + "'");
      out = static_cast<int>(v);
    }
  }

  void flag(const std::string& key, bool& out) {
    if (auto t = text(key)) {
      const auto v = boost::to_lower_copy(*t);
      if (v == "true" || v == "yes" || v == "1") {
        out = true;
      } else if (v == "false" || v == "no" || v == "0") {
        out = false;
      } else {
        fail(key, "expected true or false, got '" + *t + "'");
      }
    }
  }

  void list(const std::string& key, std::vector<double>& out) {
    if (auto t = text(key)) out = numbers(key, *t);
  }

  std::vector<double> numbers(const std::string& key, const std::string& t) {
    std::vector<double> v;
    if (t.empty()) return v;
    std::vector<std::string> parts;
    boost::split(parts, t, boost::is_any_of(","));
    for (auto& p : parts) v.push_back(number(key, boost::trim_copy(p)));
    return v;
  }

  double number(const std::string& key, const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v)) fail(key, "expected a number, got '" + t + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(origin_ + ": [" + name_ + "] " + key + ": " + msg);
  }

  void check_unused() const {
    if (!node_) return;
    for (const auto& [key, child] : *node_) {
      if (!used_.count(key)) throw ConfigError(origin_ + ": [" + name_ + "] unknown key '" + key + "'");
    }
  }

 private:
  const pt::ptree* node_;
  std::string name_;
  std::string origin_;
  std::set<std::string> used_;
};

std::string join(const std::vector<double>& v) {
  std::ostringstream s;
  s << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  return s.str();
}

}  // namespace

std::vector<MaterialOverride> parse_overrides(std::string_view text) {
  std::vector<MaterialOverride> out;
  std::vector<std::string> parts;
  const std::string t = boost::trim_copy(std::string(text));
  if (t.empty()) return out;
  boost::split(parts, t, boost::is_any_of(","));
  for (auto part : parts) {
    boost::trim(part);
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ConfigError("override '" + part + "' must look like Name:value");
    const auto name = boost::trim_copy(part.substr(0, colon));
    const auto value = boost::trim_copy(part.substr(colon + 1));
    auto p = property_from_name(name);
    if (!p) throw ConfigError("override '" + part + "': unknown property '" + name + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (value.empty() || used != value.size() || !std::isfinite(v)) {
      throw ConfigError("override '" + part + "': expected a number after ':'");
    }
    out.push_back({*p, v});
  }
  return out;
}

RunConfig parse_run_config(std::istream& in, const std::string& origin,
                           const std::filesystem::path& base_directory) {
  const auto tree = read_tree(in, origin);
  static const std::set<std::string> known = {"geometry", "materials", "layers", "load",
                                              "analysis", "optimizer", "objective", "output"};
  for (const auto& [name, node] : tree) {
    if (node.empty() && !node.data().empty()) {
      throw ConfigError(origin + ": key '" + name + "' must belong to a section");
    }
    if (!known.count(name)) throw ConfigError(origin + ": unknown section [" + name + "]");
  }
  auto section = [&](const std::string& name) {
    auto child = tree.get_child_optional(name);
    return Section(child ? &*child : nullptr, name, origin);
  };

  RunConfig c;
  c.base_directory = base_directory;

  {
    auto s = section("geometry");
    auto& g = c.geometry;
    s.real("radius", g.radius);
    s.real("cylinder_height", g.cylinder_height);
    s.real("upper_dome_height", g.upper_dome_height);
    s.real("lower_dome_height", g.lower_dome_height);
    s.real("liner_thickness", g.liner_thickness);
    s.integer("stations_per_dome", c.stations.per_dome);
    s.integer("cylinder_stations", c.stations.cylinder);
    s.check_unused();
  }
  {
    auto s = section("materials");
    if (auto t = s.text("database")) c.material_database = *t;
    if (auto t = s.text("composite")) c.composite = *t;
    if (auto t = s.text("liner")) c.liner = boost::iequals(*t, "none") ? std::string() : *t;
    if (auto t = s.text("overrides")) {
      try {
        c.overrides = parse_overrides(*t);
      } catch (const ConfigError& e) {
        s.fail("overrides", e.what());
      }
    }
    s.check_unused();
  }
  {
    auto s = section("layers");
    s.integer("helical", c.helical_layers);
    s.integer("hoop", c.hoop_layers);
    s.real("upper_opening_1", c.upper_opening_1);
    s.real("lower_opening_1", c.lower_opening_1);
    s.real("thickness_min", c.bounds.thickness_min);
    s.real("thickness_max", c.bounds.thickness_max);
    s.real("opening_max", c.bounds.opening_max);
    auto& w = c.winding;
    s.real("bandwidth", w.bandwidth);
    s.real("friction_exponent", w.friction_exponent);
    s.real("hoop_angle", w.hoop_angle);
    s.integer("deviation_sign", w.deviation_sign);
    if (w.deviation_sign != 1 && w.deviation_sign != -1) s.fail("deviation_sign", "must be +1 or -1");
    s.list("delta_upper", w.delta_upper);
    s.list("delta_lower", w.delta_lower);
    s.integer("sections", w.layup.sections);
    s.list("section_bounds", w.layup.section_bounds);
    if (auto t = s.text("thickness_law")) {
      try {
        w.thickness_law = parse_thickness_law(*t);
      } catch (const std::exception& e) {
        s.fail("thickness_law", e.what());
      }
    }
    s.flag("constrain_boss_land", w.constrain_boss_land);
    s.check_unused();
  }
  {
    auto s = section("load");
    s.real("internal_pressure", c.load.internal_pressure);
    s.real("water_density", c.load.water_density);
    s.real("gravity", c.load.gravity);
    if (auto t = s.text("fill_height")) {
      if (!t->empty()) c.load.fill_height = s.number("fill_height", *t);
    }
    s.check_unused();
  }
  {
    auto s = section("analysis");
    if (auto t = s.text("criterion")) {
      auto k = criterion_from_name(*t);
      if (!k) s.fail("criterion", "unknown criterion '" + *t + "' (tsai_wu|max_principal)");
      c.criterion = *k;
    }
    s.check_unused();
  }
  {
    auto s = section("optimizer");
    if (auto t = s.text("method")) {
      auto k = optimizer_from_name(*t);
      if (!k) s.fail("method", "unknown optimizer '" + *t + "' (miga|hooke_jeeves)");
      c.optimizer = *k;
    }
    if (auto t = s.text("seed")) {
      const double v = s.number("seed", *t);
      if (v < 0 || v != std::floor(v) || v > 9.007199254740992e15) s.fail("seed", "expected a non-negative integer");
      c.miga.seed = static_cast<std::uint64_t>(v);
    }
    auto& m = c.miga;
    s.integer("islands", m.islands);
    s.integer("subpopulation", m.subpopulation);
    s.integer("generations", m.generations);
    s.integer("migration_interval", m.migration_interval);
    s.integer("migration_rate", m.migration_rate);
    s.integer("tournament_size", m.tournament_size);
    s.integer("elites", m.elites);
    s.integer("bits_per_variable", m.bits_per_variable);
    s.real("crossover_probability", m.crossover_probability);
    s.real("mutation_probability", m.mutation_probability);
    s.real("hj_initial_step", c.hooke_jeeves.initial_step);
    s.real("hj_tolerance", c.hooke_jeeves.tolerance);
    s.real("hj_shrink", c.hooke_jeeves.shrink);
    s.integer("hj_max_iterations", c.hooke_jeeves.max_iterations);
    s.list("start", c.start);
    s.check_unused();
  }
  {
    auto s = section("objective");
    auto& o = c.miga.objective;
    s.real("weight_mass", o.weight_mass);
    s.real("weight_thickness", o.weight_thickness);
    s.real("weight_energy", o.weight_energy);
    s.real("mass_scale", o.mass_scale);
    s.real("thickness_scale", o.thickness_scale);
    s.real("energy_scale", o.energy_scale);
    s.real("penalty", o.penalty);
    s.check_unused();
  }
  {
    auto s = section("output");
    if (auto t = s.text("directory")) c.output_directory = *t;
    s.check_unused();
  }

  try {
    validate(c.miga);
    validate(c.hooke_jeeves);
    validate(c.load);
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (c.helical_layers < 1) throw ConfigError(origin + ": [layers] helical: at least one helical layer is required");
  if (c.hoop_layers < 0) throw ConfigError(origin + ": [layers] hoop: must be non-negative");
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration '" + path.string() + "'");
  return parse_run_config(in, path.string(), path.parent_path());
}

void write_run_config(std::ostream& out, const RunConfig& c) {
  out << std::setprecision(17);
  const auto& g = c.geometry;
  out << "[geometry]\n"
      << "radius = " << g.radius << "\n"
      << "cylinder_height = " << g.cylinder_height << "\n"
      << "upper_dome_height = " << g.upper_dome_height << "\n"
      << "lower_dome_height = " << g.lower_dome_height << "\n"
      << "liner_thickness = " << g.liner_thickness << "\n"
      << "stations_per_dome = " << c.stations.per_dome << "\n"
      << "cylinder_stations = " << c.stations.cylinder << "\n\n";

  out << "[materials]\n"
      << "database = " << resolve_data_path(c, c.material_database).string() << "\n"
      << "composite = " << c.composite << "\n"
      << "liner = " << (c.liner.empty() ? "none" : c.liner) << "\n"
      << "overrides = ";
  for (std::size_t i = 0; i < c.overrides.size(); ++i) {
    out << (i ? ", " : "") << property_name(c.overrides[i].property) << ":" << c.overrides[i].value;
  }
  out << "\n\n";

  const auto& w = c.winding;
  out << "[layers]\n"
      << "helical = " << c.helical_layers << "\n"
      << "hoop = " << c.hoop_layers << "\n"
      << "upper_opening_1 = " << c.upper_opening_1 << "\n"
      << "lower_opening_1 = " << c.lower_opening_1 << "\n"
      << "thickness_min = " << c.bounds.thickness_min << "\n"
      << "thickness_max = " << c.bounds.thickness_max << "\n"
      << "opening_max = " << c.bounds.opening_max << "\n"
      << "bandwidth = " << w.bandwidth << "\n"
      << "friction_exponent = " << w.friction_exponent << "\n"
      << "hoop_angle = " << w.hoop_angle << "\n"
      << "deviation_sign = " << w.deviation_sign << "\n"
      << "delta_upper = " << join(w.delta_upper) << "\n"
      << "delta_lower = " << join(w.delta_lower) << "\n"
      << "sections = " << w.layup.sections << "\n"
      << "section_bounds = " << join(w.layup.section_bounds) << "\n"
      << "thickness_law = " << thickness_law_name(w.thickness_law) << "\n"
      << "constrain_boss_land = " << (w.constrain_boss_land ? "true" : "false") << "\n\n";

  out << "[load]\n"
      << "internal_pressure = " << c.load.internal_pressure << "\n"
      << "water_density = " << c.load.water_density << "\n"
      << "gravity = " << c.load.gravity << "\n"
      << "fill_height = ";
  if (c.load.fill_height) out << *c.load.fill_height;
  out << "\n\n";

  out << "[analysis]\n"
      << "criterion = " << criterion_name(c.criterion) << "\n\n";

  const auto& m = c.miga;
  out << "[optimizer]\n"
      << "method = " << optimizer_name(c.optimizer) << "\n"
      << "seed = " << m.seed << "\n"
      << "islands = " << m.islands << "\n"
      << "subpopulation = " << m.subpopulation << "\n"
      << "generations = " << m.generations << "\n"
      << "migration_interval = " << m.migration_interval << "\n"
      << "migration_rate = " << m.migration_rate << "\n"
      << "tournament_size = " << m.tournament_size << "\n"
      << "elites = " << m.elites << "\n"
      << "bits_per_variable = " << m.bits_per_variable << "\n"
      << "crossover_probability = " << m.crossover_probability << "\n"
      << "mutation_probability = " << m.mutation_probability << "\n"
      << "hj_initial_step = " << c.hooke_jeeves.initial_step << "\n"
      << "hj_tolerance = " << c.hooke_jeeves.tolerance << "\n"
      << "hj_shrink = " << c.hooke_jeeves.shrink << "\n"
      << "hj_max_iterations = " << c.hooke_jeeves.max_iterations << "\n"
      << "start = " << join(c.start) << "\n\n";

  const auto& o = m.objective;
  out << "[objective]\n"
      << "weight_mass = " << o.weight_mass << "\n"
      << "weight_thickness = " << o.weight_thickness << "\n"
      << "weight_energy = " << o.weight_energy << "\n"
      << "mass_scale = " << o.mass_scale << "\n"
      << "thickness_scale = " << o.thickness_scale << "\n"
      << "energy_scale = " << o.energy_scale << "\n"
      << "penalty = " << o.penalty << "\n\n";

  out << "[output]\n"
      << "directory = " << c.output_directory << "\n";
}

std::filesystem::path resolve_data_path(const RunConfig& c, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (!c.base_directory.empty() && std::filesystem::exists(c.base_directory / p)) {
    return std::filesystem::absolute(c.base_directory / p);
  }
  const auto bundled = bundled_data_dir() / p;
  if (std::filesystem::exists(bundled)) return bundled;
  return p;
}

ResolvedMaterials resolve_materials(const RunConfig& c, const std::vector<MaterialSystem>& db) {
  ResolvedMaterials r{find_material(db, c.composite), std::nullopt};
  for (const auto& o : c.overrides) {
    std::ostringstream note;
    note << property_name(o.property) << " overridden to " << o.value;
    r.composite.set(o.property, o.value, Provenance::Measured);
    r.composite.assumptions.push_back(note.str());
  }
  if (!c.liner.empty()) r.liner = find_material(db, c.liner);
  return r;
}

ResolvedMaterials resolve_materials(const RunConfig& c) {
  return resolve_materials(c, load_material_db(resolve_data_path(c, c.material_database)));
}

DesignSpace make_design_space(const RunConfig& c) {
  return DesignSpace(c.helical_layers, c.hoop_layers, c.upper_opening_1, c.lower_opening_1, c.bounds);
}

EvaluationContext make_context(const RunConfig& c) {
  auto m = resolve_materials(c);
  return EvaluationContext(c.geometry, c.stations, std::move(m.composite), std::move(m.liner), c.load,
                           c.criterion, c.winding, make_design_space(c));
}

DesignVector parse_design(std::istream& in, const std::string& origin) {
  const auto tree = read_tree(in, origin);
  for (const auto& [name, node] : tree) {
    if (name != "design") throw ConfigError(origin + ": unknown section [" + name + "]");
  }
  auto child = tree.get_child_optional("design");
  if (!child) throw ConfigError(origin + ": missing [design] section");
  Section s(&*child, "design", origin);
  DesignVector d;
  auto need = [&](const std::string& key, std::vector<double>& out) {
    auto t = s.text(key);
    if (!t) s.fail(key, "missing");
    out = s.numbers(key, *t);
  };
  need("helical_thickness", d.helical_thickness);
  need("hoop_thickness", d.hoop_thickness);
  need("upper_openings", d.upper_openings);
  need("lower_openings", d.lower_openings);
  s.check_unused();
  return d;
}

DesignVector load_design(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open design file '" + path.string() + "'");
  return parse_design(in, path.string());
}

void write_design(std::ostream& out, const DesignVector& d) {
  out << "[design]\n"
      << "helical_thickness = " << join(d.helical_thickness) << "\n"
      << "hoop_thickness = " << join(d.hoop_thickness) << "\n"
      << "upper_openings = " << join(d.upper_openings) << "\n"
      << "lower_openings = " << join(d.lower_openings) << "\n";
}

}  // namespace cpv
