#include "cpv/materials.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace cpv {

namespace {

constexpr std::array<std::string_view, kPropertyCount> kPropertyNames = {
    "E11", "E22", "nu12", "nu13", "nu23", "G12", "G23", "Xt", "Xc", "Yt", "Yc", "S12", "rho"};

std::size_t idx(Property p) { return static_cast<std::size_t>(p); }

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw MaterialError(where + ": expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw MaterialError(where + ": expected a number, got '" + text + "'");
  }
  return v;
}

boost::property_tree::ptree read_ini(std::istream& in, const std::string& origin) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw MaterialError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [key, node] : tree) {
    if (node.empty() && !node.data().empty()) {
      throw MaterialError(origin + ": key '" + key + "' must belong to a [card] section");
    }
  }
  return tree;
}

void check_positive(const ConstituentCard& c, const std::optional<double>& v, std::string_view field) {
  if (v && !(*v > 0.0)) {
    throw MaterialError("constituent '" + c.name + "': " + std::string(field) + " must be > 0");
  }
}

void check_poisson(const std::string& owner, const std::optional<double>& v, std::string_view field) {
  if (v && !(*v > 0.0 && *v < 0.5)) {
    throw MaterialError(owner + ": " + std::string(field) + " must lie in (0, 0.5)");
  }
}

double need(const ConstituentCard& c, const std::optional<double>& v, std::string_view constant,
            Property target) {
  if (!v) {
    throw MaterialError("cannot derive " + std::string(property_name(target)) + ": constituent '" +
                        c.name + "' lacks " + std::string(constant));
  }
  return *v;
}

}  // namespace

std::string_view property_name(Property p) { return kPropertyNames[idx(p)]; }

std::optional<Property> property_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPropertyCount; ++i) {
    const auto& n = kPropertyNames[i];
    if (n.size() == name.size() &&
        std::equal(n.begin(), n.end(), name.begin(), [](char a, char b) {
          return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
        })) {
      return static_cast<Property>(i);
    }
  }
  return std::nullopt;
}

std::string_view provenance_name(Provenance p) { return p == Provenance::Measured ? "measured" : "chamis"; }

double MaterialSystem::at(Property p) const {
  const auto& v = values[idx(p)];
  if (!v) {
    throw MaterialError("material '" + name + "' has no " + std::string(property_name(p)));
  }
  return *v;
}

void MaterialSystem::set(Property p, double value, Provenance from) {
  values[idx(p)] = value;
  provenance[idx(p)] = from;
}

PlyElastic ply_elastic(const MaterialSystem& m) {
  if (m.isotropic) {
    const double e = m.at(Property::E11);
    const double nu = m.at(Property::Nu12);
    return {e, e, nu, e / (2.0 * (1.0 + nu))};
  }
  return {m.at(Property::E11), m.at(Property::E22), m.at(Property::Nu12), m.at(Property::G12)};
}

Strengths ply_strengths(const MaterialSystem& m) {
  return {m.at(Property::Xt), m.at(Property::Xc), m.at(Property::Yt), m.at(Property::Yc),
          m.at(Property::S12)};
}

double density(const MaterialSystem& m) { return m.at(Property::Rho); }

void validate(const MaterialSystem& m) {
  const std::string owner = "material '" + m.name + "'";
  if (!m.isotropic && !(m.fiber_volume_fraction > 0.0 && m.fiber_volume_fraction < 1.0)) {
    throw MaterialError(owner + ": fiber volume fraction must lie in (0, 1)");
  }
  for (Property p : {Property::E11, Property::E22, Property::G12, Property::G23, Property::Xt,
                     Property::Xc, Property::Yt, Property::Yc, Property::S12, Property::Rho}) {
    if (m.has(p) && !(m.at(p) > 0.0)) {
      throw MaterialError(owner + ": " + std::string(property_name(p)) + " must be > 0");
    }
  }
  for (Property p : {Property::Nu12, Property::Nu13}) {
    check_poisson(owner, m.values[idx(p)], property_name(p));
  }
  // Transversely isotropic: only 1 - nu23 > 0 is required in the 2-3 plane.
  if (m.has(Property::Nu23) && !(m.at(Property::Nu23) > 0.0 && m.at(Property::Nu23) < 1.0)) {
    throw MaterialError(owner + ": nu23 must lie in (0, 1)");
  }
  if (m.has(Property::E11) && m.has(Property::E22) && m.at(Property::E11) < m.at(Property::E22)) {
    throw MaterialError(owner + ": E11 must be >= E22");
  }
}

void validate(const ConstituentCard& c) {
  for (const auto& [v, n] : {std::pair{c.e11f, "E11f"}, {c.e22f, "E22f"}, {c.g12f, "G12f"},
                             {c.g23f, "G23f"}, {c.xt_f, "Xt_f"}, {c.xc_f, "Xc_f"}, {c.em, "Em"},
                             {c.gm, "Gm"}, {c.xt_m, "Xt_m"}, {c.yc_m, "Yc_m"}, {c.s12_m, "S12_m"},
                             {c.rho, "rho"}}) {
    check_positive(c, v, n);
  }
  check_poisson("constituent '" + c.name + "'", c.nu12f, "nu12f");
  check_poisson("constituent '" + c.name + "'", c.num, "num");
}

double chamis_strength_factor(double vf, double matrix_modulus, double fiber_modulus) {
  return 1.0 - (std::sqrt(vf) - vf) * (1.0 - matrix_modulus / fiber_modulus);
}

MaterialSystem chamis_complete(const ConstituentCard& fiber, const ConstituentCard& matrix, double vf,
                               const MaterialSystem& measured) {
  if (!(vf > 0.0 && vf < 1.0)) {
    throw MaterialError("fiber volume fraction must lie in (0, 1)");
  }
  if (fiber.kind != ConstituentKind::Fiber || matrix.kind != ConstituentKind::Matrix) {
    throw MaterialError("chamis_complete expects a (fiber, matrix) constituent pair");
  }
  MaterialSystem out = measured;
  out.fiber_volume_fraction = vf;
  const double vm = 1.0 - vf;
  const double sq = std::sqrt(vf);
  bool derived_any = false;

  auto fill = [&](Property p, auto&& formula) {
    if (out.has(p)) return;
    out.set(p, formula(), Provenance::Chamis);
    derived_any = true;
  };

  fill(Property::E11, [&] {
    return vf * need(fiber, fiber.e11f, "E11f", Property::E11) +
           vm * need(matrix, matrix.em, "Em", Property::E11);
  });
  fill(Property::E22, [&] {
    const double em = need(matrix, matrix.em, "Em", Property::E22);
    return em / (1.0 - sq * (1.0 - em / need(fiber, fiber.e22f, "E22f", Property::E22)));
  });
  fill(Property::Nu12, [&] {
    return vf * need(fiber, fiber.nu12f, "nu12f", Property::Nu12) +
           vm * need(matrix, matrix.num, "num", Property::Nu12);
  });
  fill(Property::Nu13, [&] {
    return vf * need(fiber, fiber.nu12f, "nu12f", Property::Nu13) +
           vm * need(matrix, matrix.num, "num", Property::Nu13);
  });
  fill(Property::G12, [&] {
    const double gm = need(matrix, matrix.gm, "Gm", Property::G12);
    return gm / (1.0 - sq * (1.0 - gm / need(fiber, fiber.g12f, "G12f", Property::G12)));
  });
  fill(Property::G23, [&] {
    const double gm = need(matrix, matrix.gm, "Gm", Property::G23);
    return gm / (1.0 - sq * (1.0 - gm / need(fiber, fiber.g23f, "G23f", Property::G23)));
  });
  fill(Property::Nu23, [&] { return out.at(Property::E22) / (2.0 * out.at(Property::G23)) - 1.0; });
  fill(Property::Xt, [&] { return need(fiber, fiber.xt_f, "Xt_f", Property::Xt) * vf; });
  fill(Property::Xc, [&] { return need(fiber, fiber.xc_f, "Xc_f", Property::Xc) * vf; });
  fill(Property::Yt, [&] {
    const double k = chamis_strength_factor(vf, need(matrix, matrix.em, "Em", Property::Yt),
                                            need(fiber, fiber.e22f, "E22f", Property::Yt));
    return k * need(matrix, matrix.xt_m, "Xt_m", Property::Yt);
  });
  fill(Property::Yc, [&] {
    const double k = chamis_strength_factor(vf, need(matrix, matrix.em, "Em", Property::Yc),
                                            need(fiber, fiber.e22f, "E22f", Property::Yc));
    return k * need(matrix, matrix.yc_m, "Yc_m", Property::Yc);
  });
  fill(Property::S12, [&] {
    const double k = chamis_strength_factor(vf, need(matrix, matrix.gm, "Gm", Property::S12),
                                            need(fiber, fiber.g12f, "G12f", Property::S12));
    return k * need(matrix, matrix.s12_m, "S12_m", Property::S12);
  });
  fill(Property::Rho, [&] {
    return vf * need(fiber, fiber.rho, "rho", Property::Rho) +
           vm * need(matrix, matrix.rho, "rho", Property::Rho);
  });

  if (derived_any) {
    out.assumptions.push_back("chamis fiber '" + fiber.name + "'" +
                              (fiber.source.empty() ? "" : " (" + fiber.source + ")"));
    out.assumptions.push_back("chamis matrix '" + matrix.name + "'" +
                              (matrix.source.empty() ? "" : " (" + matrix.source + ")"));
  }
  return out;
}

std::vector<MaterialSystem> parse_material_db(std::istream& in, const std::string& origin) {
  const auto tree = read_ini(in, origin);
  std::vector<MaterialSystem> cards;
  for (const auto& [section, node] : tree) {
    MaterialSystem m;
    m.name = section;
    const std::string owner = origin + " [" + section + "]";
    for (const auto& [key, value] : node) {
      const std::string where = owner + " field '" + key + "'";
      std::string text = trim(value.data());
      if (key == "type") {
        if (text == "isotropic") {
          m.isotropic = true;
        } else if (text != "orthotropic") {
          throw MaterialError(where + ": expected 'isotropic' or 'orthotropic'");
        }
      } else if (key == "vf") {
        m.fiber_volume_fraction = parse_number(text, where);
      } else if (key == "note") {
        m.assumptions.push_back(text);
      } else if (key == "fiber") {
        m.fiber = text;
      } else if (key == "matrix") {
        m.matrix = text;
      } else if (auto p = property_from_name(key)) {
        // A trailing '*' marks a micromechanics estimate.
        Provenance from = Provenance::Measured;
        if (!text.empty() && text.back() == '*') {
          from = Provenance::Chamis;
          text = trim(text.substr(0, text.size() - 1));
        }
        m.set(*p, parse_number(text, where), from);
      } else {
        throw MaterialError(where + ": unknown field");
      }
    }
    try {
      validate(m);
    } catch (const MaterialError& e) {
      throw MaterialError(owner + ": " + e.what());
    }
    cards.push_back(std::move(m));
  }
  return cards;
}

std::vector<MaterialSystem> load_material_db(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MaterialError("cannot open material file " + path.string());
  return parse_material_db(in, path.string());
}

std::vector<ConstituentCard> parse_constituents(std::istream& in, const std::string& origin) {
  const auto tree = read_ini(in, origin);
  std::vector<ConstituentCard> cards;
  for (const auto& [section, node] : tree) {
    ConstituentCard c;
    c.name = section;
    const std::string owner = origin + " [" + section + "]";
    bool kind_seen = false;
    for (const auto& [key, value] : node) {
      const std::string where = owner + " field '" + key + "'";
      const std::string text = trim(value.data());
      if (key == "kind") {
        if (text == "fiber") {
          c.kind = ConstituentKind::Fiber;
        } else if (text == "matrix") {
          c.kind = ConstituentKind::Matrix;
        } else {
          throw MaterialError(where + ": expected 'fiber' or 'matrix'");
        }
        kind_seen = true;
        continue;
      }
      if (key == "source") {
        c.source = text;
        continue;
      }
      std::optional<double>* slot = nullptr;
      if (key == "E11f") slot = &c.e11f;
      else if (key == "E22f") slot = &c.e22f;
      else if (key == "G12f") slot = &c.g12f;
      else if (key == "G23f") slot = &c.g23f;
      else if (key == "nu12f") slot = &c.nu12f;
      else if (key == "Xt_f") slot = &c.xt_f;
      else if (key == "Xc_f") slot = &c.xc_f;
      else if (key == "Em") slot = &c.em;
      else if (key == "Gm") slot = &c.gm;
      else if (key == "num") slot = &c.num;
      else if (key == "Xt_m") slot = &c.xt_m;
      else if (key == "Yc_m") slot = &c.yc_m;
      else if (key == "S12_m") slot = &c.s12_m;
      else if (key == "rho") slot = &c.rho;
      else throw MaterialError(where + ": unknown field");
      *slot = parse_number(text, where);
    }
    if (!kind_seen) throw MaterialError(owner + ": missing 'kind'");
    try {
      validate(c);
    } catch (const MaterialError& e) {
      throw MaterialError(owner + ": " + e.what());
    }
    cards.push_back(std::move(c));
  }
  return cards;
}

std::vector<ConstituentCard> load_constituents(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MaterialError("cannot open constituent file " + path.string());
  return parse_constituents(in, path.string());
}

void write_material_card(std::ostream& out, const MaterialSystem& m) {
  out << '[' << m.name << "]\n";
  out << "type = " << (m.isotropic ? "isotropic" : "orthotropic") << '\n';
  if (!m.isotropic) out << "vf = " << m.fiber_volume_fraction << '\n';
  if (!m.fiber.empty()) out << "fiber = " << m.fiber << '\n';
  if (!m.matrix.empty()) out << "matrix = " << m.matrix << '\n';
  for (std::size_t i = 0; i < kPropertyCount; ++i) {
    if (!m.values[i]) continue;
    out << kPropertyNames[i] << " = " << std::setprecision(10) << *m.values[i]
        << (m.provenance[i] == Provenance::Chamis ? "*" : "") << '\n';
  }
  for (const auto& note : m.assumptions) out << "; " << note << '\n';
}

const MaterialSystem& find_material(const std::vector<MaterialSystem>& db, std::string_view name) {
  auto it = std::find_if(db.begin(), db.end(), [&](const auto& m) { return m.name == name; });
  if (it == db.end()) throw MaterialError("unknown material '" + std::string(name) + "'");
  return *it;
}

const ConstituentCard& find_constituent(const std::vector<ConstituentCard>& db, std::string_view name) {
  auto it = std::find_if(db.begin(), db.end(), [&](const auto& c) { return c.name == name; });
  if (it == db.end()) throw MaterialError("unknown constituent '" + std::string(name) + "'");
  return *it;
}

std::vector<MaterialSystem> complete_material_db(const std::vector<MaterialSystem>& db,
                                                 const std::vector<ConstituentCard>& constituents) {
  std::vector<MaterialSystem> out;
  out.reserve(db.size());
  for (const auto& m : db) {
    if (m.isotropic || m.fiber.empty() || m.matrix.empty()) {
      out.push_back(m);
      continue;
    }
    auto full = chamis_complete(find_constituent(constituents, m.fiber),
                                find_constituent(constituents, m.matrix), m.fiber_volume_fraction, m);
    validate(full);
    out.push_back(std::move(full));
  }
  return out;
}

std::filesystem::path bundled_data_dir() {
  if (const char* env = std::getenv("CPV_DATA_DIR"); env && *env) return env;
  return CPV_DATA_DIR;
}

}  // namespace cpv
