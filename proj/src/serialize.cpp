#include "toric/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace toric {

Json to_json(const Integer& x) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json to_json(const Rational& x) {
  Rational y = x;
  y.canonicalize();
  if (y.get_den() == 1) return to_json(Integer(y.get_num()));
  return Json(y.get_str());
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

Json to_json(const RaySet& s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(i);
  return a;
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Integer x;
    bool digits = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                             [](char c) { return c >= '0' && c <= '9'; }) &&
                  s != "-";
    if (digits && x.set_str(s, 10) == 0) return x;
  }
  throw SchemaError(where + ": expected an integer");
}

IntVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

IntMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw SchemaError(where + ": ragged matrix");
  return IntMatrix::from_rows(rows, rows[0].size());
}

namespace {

std::size_t count_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw SchemaError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

const Json& require(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(what + ": missing key \"" + key + "\"");
  return *it;
}

}  // namespace

Fan fan_from_json(const Json& j) {
  std::size_t rank = count_from_json(require(j, "rank", "fan"), "fan.rank");
  const Json& jr = require(j, "rays", "fan");
  if (!jr.is_array()) throw SchemaError("fan.rays: expected an array");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < jr.size(); ++i) {
    rays.push_back(vector_from_json(jr[i], "fan.rays[" + std::to_string(i) + "]"));
    if (rays.back().size() != rank) throw SchemaError("fan.rays[" + std::to_string(i) + "]: length differs from rank");
  }
  const Json& jc = require(j, "cones", "fan");
  if (!jc.is_array()) throw SchemaError("fan.cones: expected an array");
  std::vector<RaySet> cones;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string where = "fan.cones[" + std::to_string(i) + "]";
    if (!jc[i].is_array()) throw SchemaError(where + ": expected an array of ray indices");
    RaySet s;
    for (const auto& x : jc[i]) {
      std::size_t idx = count_from_json(x, where);
      if (idx >= rays.size()) throw SchemaError(where + ": ray index " + std::to_string(idx) + " out of range");
      s.push_back(idx);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw SchemaError(where + ": repeated ray index");
    cones.push_back(std::move(s));
  }
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != rays.size()) throw SchemaError("fan.labels: expected one string per ray");
    for (const auto& l : *it) {
      if (!l.is_string()) throw SchemaError("fan.labels: expected strings");
      labels.push_back(l.get<std::string>());
    }
  }
  try {
    return Fan(rank, std::move(rays), cones, std::move(labels));
  } catch (const InputError& e) {
    throw SchemaError(std::string("fan: ") + e.what());
  }
}

Json fan_to_json(const Fan& f) {
  Fan c = f.canonical();
  auto maximal = c.maximal_ray_sets();
  std::sort(maximal.begin(), maximal.end());
  Json j;
  j["rank"] = c.rank();
  j["rays"] = Json::array();
  for (const auto& r : c.rays()) j["rays"].push_back(to_json(r));
  j["cones"] = Json::array();
  for (const auto& s : maximal)
    if (!s.empty()) j["cones"].push_back(to_json(s));
  if (!c.labels().empty()) j["labels"] = c.labels();
  return j;
}

std::size_t action_rank(const Json& j) {
  if (j.is_object()) {
    if (auto it = j.find("rank"); it != j.end()) return count_from_json(*it, "action.rank");
    if (auto it = j.find("generators"); it != j.end() && it->is_array() && !it->empty() && (*it)[0].is_array())
      return (*it)[0].size();
  }
  throw SchemaError("action: cannot determine the rank");
}

GroupAction action_from_json(const Json& j, std::size_t rank) {
  const Json& jg = require(j, "generators", "action");
  if (auto it = j.find("rank"); it != j.end() && count_from_json(*it, "action.rank") != rank)
    throw SchemaError("action.rank: expected " + std::to_string(rank));
  if (!jg.is_array()) throw SchemaError("action.generators: expected an array of matrices");
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < jg.size(); ++i) {
    IntMatrix m = matrix_from_json(jg[i], "action.generators[" + std::to_string(i) + "]");
    if (m.rows() != rank || m.cols() != rank)
      throw SchemaError("action.generators[" + std::to_string(i) + "]: expected a " + std::to_string(rank) + "x" +
                        std::to_string(rank) + " matrix");
    gens.push_back(std::move(m));
  }
  std::vector<unsigned> orders;
  if (auto it = j.find("orders"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != gens.size()) throw SchemaError("action.orders: expected one order per generator");
    for (const auto& o : *it) {
      if (!o.is_number_integer() || o.get<std::int64_t>() <= 0 || o.get<std::int64_t>() > 1000000)
        throw SchemaError("action.orders: expected positive integers");
      orders.push_back(o.get<unsigned>());
    }
  }
  return GroupAction(rank, std::move(gens), std::move(orders));
}

Json action_to_json(const GroupAction& g) {
  Json j;
  j["generators"] = Json::array();
  for (const auto& m : g.generators()) j["generators"].push_back(to_json(m));
  j["orders"] = g.orders();
  j["rank"] = g.rank();
  return j;
}

Weights weights_from_json(const Json& j) {
  IntVector w = vector_from_json(require(j, "weights", "weights"), "weights.weights");
  try {
    return Weights(std::move(w));
  } catch (const InputError& e) {
    throw SchemaError(std::string("weights: ") + e.what());
  }
}

Json weights_to_json(const Weights& w) { return to_json(w.values()); }

ModulePresentation module_from_json(const Json& j) {
  ModulePresentation m;
  m.rank = count_from_json(require(j, "rank", "module"), "module.rank");
  if (auto it = j.find("relations"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw SchemaError("module.relations: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      m.relations.push_back(vector_from_json((*it)[i], "module.relations[" + std::to_string(i) + "]"));
      if (m.relations.back().size() != m.rank) throw SchemaError("module.relations: length differs from rank");
    }
  }
  return m;
}

Json group_to_json(const AbelianGroupPresentation& g) {
  Json j;
  j["rank"] = g.rank;
  j["torsion"] = to_json(IntVector(g.torsion.begin(), g.torsion.end()));
  return j;
}

Json monomial_to_json(const LaurentMonomial& m) {
  Json j;
  j["variables"] = m.prefix();
  j["exponents"] = to_json(m.exponents());
  j["text"] = to_string(m);
  return j;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(source + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return parse_json(ss.str(), path);
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

}  // namespace toric
