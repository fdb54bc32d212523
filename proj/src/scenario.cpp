#include "fuzzint/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fuzzint/errors.hpp"
#include "json.hpp"

namespace fuzzint {
namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const json& field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_field(path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) bad_field(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad_field(path, "not finite");
  return v;
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() == 0) bad_field(path, "expected a positive integer");
  return j.get<std::size_t>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) bad_field(path, "expected an array");
  return j;
}

// Re-raise a library error with the field path in front, keeping its code.
template <typename F>
auto at_path(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(e.code(), path + ": " + e.detail());
  }
}

FuzzyNumber parse_value(const json& levels_json, std::size_t dims, const std::string& path) {
  std::vector<double> levels;
  std::vector<ConvexBody> bodies;
  const json& list = array(levels_json, path);
  if (list.empty()) bad_field(path, "needs at least one level");
  for (std::size_t l = 0; l < list.size(); ++l) {
    const std::string lpath = path + "[" + std::to_string(l) + "]";
    if (!list[l].is_object()) bad_field(lpath, "expected an object");
    levels.push_back(number(field(list[l], lpath, "level"), lpath + ".level"));
    const std::string vpath = lpath + ".vertices";
    const json& verts = array(field(list[l], lpath, "vertices"), vpath);
    if (verts.empty()) bad_field(vpath, "needs at least one vertex");
    std::vector<Point> points;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      const std::string ppath = vpath + "[" + std::to_string(v) + "]";
      const json& p = array(verts[v], ppath);
      if (p.size() != dims) {
        throw Error(ErrorCode::DimensionMismatch,
                    ppath + ": expected " + std::to_string(dims) + " coordinates, got " +
                        std::to_string(p.size()));
      }
      Point pt;
      for (std::size_t c = 0; c < dims; ++c) pt.push_back(number(p[c], ppath + "[" + std::to_string(c) + "]"));
      points.push_back(std::move(pt));
    }
    bodies.emplace_back(dims, points);
  }
  return at_path(path, [&] { return FuzzyNumber::from_level_family(levels, bodies); });
}

Tolerances parse_tolerances(const json& j) {
  Tolerances tol;
  if (!j.is_object()) bad_field("tolerances", "expected an object");
  auto read = [&](const char* key, double& slot) {
    if (auto it = j.find(key); it != j.end()) {
      const std::string path = std::string("tolerances.") + key;
      slot = number(*it, path);
      if (!(slot > 0.0)) bad_field(path, "must be positive");
    }
  };
  read("support", tol.support);
  read("geometry", tol.geometry);
  read("distance", tol.distance);
  return tol;
}

}  // namespace

DirectionGrid Scenario::grid() const {
  return grid_size ? DirectionGrid::with_total(mapping.dims(), *grid_size)
                   : DirectionGrid::make_default(mapping.dims());
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) bad_field("<root>", "expected an object");

  const std::size_t dims = count(field(doc, "", "dims"), "dims");
  const json& atoms = array(field(doc, "", "atoms"), "atoms");
  if (atoms.empty()) bad_field("atoms", "needs at least one atom");

  std::vector<std::string> ids;
  std::vector<double> weights;
  std::vector<FuzzyNumber> values;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string path = "atoms[" + std::to_string(i) + "]";
    const json& atom = atoms[i];
    if (!atom.is_object()) bad_field(path, "expected an object");
    const json& id = field(atom, path, "id");
    if (!id.is_string()) bad_field(path + ".id", "expected a string");
    ids.push_back(id.get<std::string>());
    weights.push_back(number(field(atom, path, "weight"), path + ".weight"));
    values.push_back(parse_value(field(atom, path, "levels"), dims, path + ".levels"));
  }

  Scenario out{at_path("atoms", [&] {
                 FiniteMeasureSpace space(std::move(ids), std::move(weights));
                 return FuzzyMapping(std::move(space), std::move(values));
               }),
               std::nullopt, Tolerances{}};
  if (auto it = doc.find("grid"); it != doc.end()) out.grid_size = count(*it, "grid");
  if (auto it = doc.find("tolerances"); it != doc.end()) out.tol = parse_tolerances(*it);
  return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read scenario '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for '" + path.string() + "'");
  return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& scenario) {
  const FuzzyMapping& m = scenario.mapping;
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["dims"] = m.dims();
  auto atoms = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto levels = nlohmann::ordered_json::array();
    const FuzzyNumber& u = m.value(i);
    for (std::size_t l = 0; l < u.level_count(); ++l) {
      levels.push_back({{"level", u.levels()[l]}, {"vertices", u.bodies()[l].vertices()}});
    }
    atoms.push_back({{"id", m.space().id(i)}, {"weight", m.space().weight(i)}, {"levels", levels}});
  }
  doc["atoms"] = std::move(atoms);
  if (scenario.grid_size) doc["grid"] = *scenario.grid_size;
  doc["tolerances"] = {{"support", scenario.tol.support},
                       {"geometry", scenario.tol.geometry},
                       {"distance", scenario.tol.distance}};
  return doc.dump(2) + "\n";
}

Scenario single_atom_scenario(const std::string& id, const FuzzyNumber& value,
                              std::optional<std::size_t> grid_size, const Tolerances& tol) {
  return Scenario{FuzzyMapping(FiniteMeasureSpace({id}, {1.0}), {value}), grid_size, tol};
}

}  // namespace fuzzint
