#include "gcvx/json_io.hpp"

#include <algorithm>
#include <fstream>

#include "gcvx/errors.hpp"

namespace gcvx::json_io {

using kernel::Rational;
using kernel::Vec;
using measurable::Subset;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing field '") + key + "'");
  return j.at(key);
}

const json& array_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_array()) throw UsageError(std::string("field '") + key + "' must be an array");
  return f;
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw UsageError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw UsageError(std::string(what) + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw UsageError("expected a rational as a \"p/q\" string, got " + j.dump());
}

json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw UsageError("expected an array of rationals");
  Vec out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

json to_json(const kernel::StepFn& f) {
  return {{"breakpoints", to_json(f.breakpoints())}, {"values", to_json(f.values())}, {"valueAtOne", f.value_at_one().str()}};
}

kernel::StepFn step_fn_from_json(const json& j) {
  return kernel::StepFn(vec_from_json(array_field(j, "breakpoints")), vec_from_json(array_field(j, "values")),
                        rational_from_json(field(j, "valueAtOne")));
}

json subsets_json(const measurable::FinMeasSpace& x, const std::vector<Subset>& family) {
  json out = json::array();
  for (Subset s : family) out.push_back(x.ids_of(s));
  return out;
}

json to_json(const measurable::FinMeasSpace& x) {
  return {{"points", x.points()}, {"sigma", subsets_json(x, x.members())}, {"atoms", subsets_json(x, x.atoms())}};
}

measurable::FinMeasSpace space_from_json(const json& j) {
  auto points = string_list(field(j, "points"), "points");
  if (j.contains("sigma") && j.contains("generators")) throw UsageError("give either 'sigma' or 'generators', not both");
  auto subsets = [&](const char* key) {
    const auto probe = measurable::FinMeasSpace::trivial(points);
    std::vector<Subset> family;
    for (const auto& s : array_field(j, key)) family.push_back(probe.subset_of(string_list(s, key)));
    return family;
  };
  if (j.contains("sigma")) return measurable::FinMeasSpace::from_sigma(points, subsets("sigma"));
  if (j.contains("generators")) return measurable::generate_sigma(points, subsets("generators"));
  return measurable::FinMeasSpace::powerset(std::move(points));
}

json to_json(const convex::ConvexSpace& a) {
  if (const auto* s = std::get_if<convex::SemiCvx>(&a)) {
    json meet = json::array();
    for (std::size_t x = 0; x < s->size(); ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < s->size(); ++y) row.push_back(s->elements()[s->meet(x, y)]);
      meet.push_back(row);
    }
    return {{"kind", "semi"}, {"elements", s->elements()}, {"meet", meet}};
  }
  const auto& g = std::get<convex::GeomCvx>(a);
  json gens = json::array();
  for (const auto& v : g.generators()) gens.push_back(to_json(v));
  return {{"kind", "geom"}, {"dim", g.dim()}, {"generators", gens}};
}

convex::ConvexSpace convex_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (kind == "semi") {
    auto elements = string_list(field(j, "elements"), "elements");
    const json& meet = array_field(j, "meet");
    if (meet.size() != elements.size()) throw UsageError("meet table needs one row per element");
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : meet) {
      const auto ids = string_list(row, "meet row");
      std::vector<std::size_t> r;
      for (const auto& id : ids) {
        const auto it = std::find(elements.begin(), elements.end(), id);
        if (it == elements.end()) throw UsageError("meet table mentions unknown element '" + id + "'");
        r.push_back(static_cast<std::size_t>(it - elements.begin()));
      }
      table.push_back(std::move(r));
    }
    return convex::SemiCvx(std::move(elements), std::move(table));
  }
  if (kind == "geom") {
    const json& dim = field(j, "dim");
    if (!dim.is_number_integer() || dim.get<long long>() < 0) throw UsageError("'dim' must be a nonnegative integer");
    std::vector<Vec> gens;
    for (const auto& g : array_field(j, "generators")) gens.push_back(vec_from_json(g));
    return convex::GeomCvx(dim.get<std::size_t>(), std::move(gens));
  }
  throw UsageError("convex space 'kind' must be \"semi\" or \"geom\"");
}

json to_json(const convex::BooleanSubobject& s, const convex::ConvexSpace& a) {
  if (const auto* h = std::get_if<convex::HalfspaceSplit>(&s)) {
    return {{"kind", "halfspace"}, {"c", to_json(h->normal)}, {"t", h->threshold.str()}, {"upperClosed", h->upper_closed}};
  }
  const auto& m = std::get<convex::SemiSubset>(s);
  json members = json::array();
  if (const auto* semi = std::get_if<convex::SemiCvx>(&a)) {
    for (std::size_t i = 0; i < semi->size(); ++i) {
      if (measurable::has(m.members, i)) members.push_back(semi->elements()[i]);
    }
  }
  return {{"kind", "subset"}, {"members", members}};
}

convex::BooleanSubobject subobject_from_json(const json& j, const convex::ConvexSpace& a) {
  const json& kind = field(j, "kind");
  if (kind == "halfspace") {
    bool upper = true;
    if (j.contains("upperClosed")) {
      if (!j.at("upperClosed").is_boolean()) throw UsageError("'upperClosed' must be a boolean");
      upper = j.at("upperClosed").get<bool>();
    }
    return convex::HalfspaceSplit{vec_from_json(field(j, "c")), rational_from_json(field(j, "t")), upper};
  }
  if (kind == "subset") {
    const auto* semi = std::get_if<convex::SemiCvx>(&a);
    if (!semi) throw UsageError("subset subobjects need a semilattice space");
    Subset s = 0;
    for (const auto& id : string_list(field(j, "members"), "members")) {
      const auto i = semi->index_of(id);
      if (!i) throw UsageError("unknown element '" + id + "'");
      s |= measurable::bit(*i);
    }
    return convex::SemiSubset{s};
  }
  throw UsageError("subobject 'kind' must be \"halfspace\" or \"subset\"");
}

json to_json(const convex::Point& p, const convex::ConvexSpace& a) {
  if (const auto* v = std::get_if<Vec>(&p)) return to_json(*v);
  return convex::describe(p, a);
}

json to_json(const giry::FinDist& p) {
  json mass = json::object();
  for (std::size_t a = 0; a < p.mass().size(); ++a) mass["atom" + std::to_string(a)] = p.mass()[a].str();
  return {{"space", to_json(*p.space())}, {"mass", mass}};
}

giry::FinDist dist_from_json(const json& j) {
  auto space = measurable::share(space_from_json(field(j, "space")));
  const json& mass = field(j, "mass");
  if (!mass.is_object()) throw UsageError("'mass' must be an object keyed by atom");
  Vec m(space->atoms().size());
  for (const auto& [key, value] : mass.items()) {
    std::size_t idx = 0;
    if (key.rfind("atom", 0) != 0) throw UsageError("mass keys must look like atom0, atom1, ...");
    try {
      idx = std::stoul(key.substr(4));
    } catch (const std::exception&) {
      throw UsageError("bad atom key '" + key + "'");
    }
    if (idx >= m.size()) throw UsageError("atom key '" + key + "' out of range");
    m[idx] = rational_from_json(value);
  }
  return giry::FinDist(std::move(space), std::move(m));
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace gcvx::json_io
