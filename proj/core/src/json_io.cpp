#include "eulerchar/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace eulerchar {

namespace {

using J = nlohmann::ordered_json;

J parse_doc(const std::string& text) {
  try {
    return J::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("JSON parse error: ") + e.what());
  }
}

const J& need(const J& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return *it;
}

bool has(const J& j, const char* key) {
  auto it = j.find(key);
  return it != j.end() && !it->is_null();
}

long long as_ll(const J& j, const char* what) {
  if (!j.is_number_integer())
    throw Error(Errc::ParseError, std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::string as_str(const J& j, const char* what) {
  if (!j.is_string())
    throw Error(Errc::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

Int as_int(const J& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, std::string(what) + " is not an integer literal");
    }
  }
  throw Error(Errc::ParseError, std::string(what) + " must be an integer");
}

J int_json(const Int& v) {
  static const Int lo = Int(std::numeric_limits<long long>::min());
  static const Int hi = Int(std::numeric_limits<long long>::max());
  if (v >= lo && v <= hi) return J(v.convert_to<long long>());
  return J(v.str());
}

// --- fans ---

Fan fan_from(const J& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "fan must be a JSON object");
  Fan f;
  f.dim = static_cast<int>(as_ll(need(j, "dim"), "fan dim"));
  const J& rays = need(j, "rays");
  if (!rays.is_array()) throw Error(Errc::ParseError, "fan rays must be an array");
  for (const J& r : rays) {
    if (!r.is_array()) throw Error(Errc::ParseError, "each ray must be an array");
    std::vector<long long> v;
    for (const J& x : r) v.push_back(as_ll(x, "ray entry"));
    f.rays.push_back(std::move(v));
  }
  const J& cones = need(j, "max_cones");
  if (!cones.is_array()) throw Error(Errc::ParseError, "fan max_cones must be an array");
  for (const J& c : cones) {
    if (!c.is_array()) throw Error(Errc::ParseError, "each cone must be an array");
    std::vector<int> v;
    for (const J& x : c) v.push_back(static_cast<int>(as_ll(x, "cone entry")));
    f.max_cones.push_back(std::move(v));
  }
  return f;
}

J fan_to(const Fan& f) {
  J j;
  j["dim"] = f.dim;
  j["rays"] = J::array();
  for (const auto& r : f.rays) j["rays"].push_back(r);
  j["max_cones"] = J::array();
  for (const auto& c : f.max_cones) j["max_cones"].push_back(c);
  return j;
}

// --- closures ---

Subset subset_from(const J& j, const std::vector<std::string>& components) {
  if (!j.is_array()) throw Error(Errc::ParseError, "stratum subset must be an array");
  Subset I;
  for (const J& e : j) {
    if (e.is_number_integer()) {
      I.push_back(static_cast<int>(e.get<long long>()));
    } else if (e.is_string()) {
      std::string id = e.get<std::string>();
      auto it = std::find(components.begin(), components.end(), id);
      if (it == components.end())
        throw Error(Errc::ParseError, "unknown component id '" + id + "' in stratum subset");
      I.push_back(static_cast<int>(it - components.begin()));
    } else {
      throw Error(Errc::ParseError, "stratum subset entries must be indices or component ids");
    }
  }
  std::sort(I.begin(), I.end());
  return I;
}

std::string subset_str(const Subset& I) {
  std::string s = "{";
  for (size_t i = 0; i < I.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(I[i]);
  }
  return s + "}";
}

std::map<std::string, std::string> seeds_from(const J& j) {
  if (!j.is_object())
    throw Error(Errc::ParseError, "stratum seeds must be an object of measure -> value");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out[it.key()] = as_str(it.value(), "seed value");
  return out;
}

GoodClosure closure_from(const J& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "closure must be a JSON object");

  if (has(j, "toric_source")) {
    GoodClosure gc = toric_good_closure(fan_from(j.at("toric_source")));
    if (has(j, "ambient_dim") &&
        as_ll(j.at("ambient_dim"), "ambient_dim") != gc.ambient_dim)
      throw Error(Errc::NotAGoodClosure,
                  "declared ambient_dim disagrees with the toric source");
    if (has(j, "components")) {
      const J& comps = j.at("components");
      if (!comps.is_array() || comps.size() != gc.components.size())
        throw Error(Errc::NotAGoodClosure,
                    "component list does not match the toric source's ray count");
      std::vector<std::string> names;
      for (const J& c : comps) names.push_back(as_str(c, "component id"));
      gc.components = std::move(names);
    }
    if (has(j, "strata")) {
      const J& strata = j.at("strata");
      if (!strata.is_array()) throw Error(Errc::ParseError, "strata must be an array");
      for (const J& e : strata) {
        Subset I = subset_from(need(e, "subset"), gc.components);
        auto it = gc.strata.find(I);
        if (it == gc.strata.end())
          throw Error(Errc::NotAGoodClosure, "declared stratum " + subset_str(I) +
                                                 " is not a boundary stratum of the toric source");
        if (has(e, "motive")) {
          MotiveClass declared = parse_class(as_str(e.at("motive"), "stratum motive"));
          if (!(declared == *it->second.motive))
            throw Error(Errc::NotAGoodClosure,
                        "declared class for stratum " + subset_str(I) +
                            " disagrees with the toric source: declared " +
                            print_class(declared) + ", computed " +
                            print_class(*it->second.motive));
        }
        if (has(e, "seeds"))
          for (auto& [k, v] : seeds_from(e.at("seeds"))) it->second.seeds[k] = v;
      }
    }
    return gc;
  }

  int ambient_dim = static_cast<int>(as_ll(need(j, "ambient_dim"), "ambient_dim"));
  std::vector<std::string> components;
  const J& comps = need(j, "components");
  if (!comps.is_array()) throw Error(Errc::ParseError, "components must be an array");
  for (const J& c : comps) components.push_back(as_str(c, "component id"));

  std::map<Subset, StratumData> strata;
  const J& sj = need(j, "strata");
  if (!sj.is_array()) throw Error(Errc::ParseError, "strata must be an array");
  for (const J& e : sj) {
    Subset I = subset_from(need(e, "subset"), components);
    StratumData d;
    d.origin = StratumData::Origin::UserDeclared;
    if (has(e, "motive")) d.motive = parse_class(as_str(e.at("motive"), "stratum motive"));
    if (has(e, "seeds")) d.seeds = seeds_from(e.at("seeds"));
    if (strata.count(I))
      throw Error(Errc::NotAGoodClosure, "stratum " + subset_str(I) + " appears twice");
    strata.emplace(std::move(I), std::move(d));
  }
  return make_good_closure(ambient_dim, std::move(components), std::move(strata));
}

J closure_to(const GoodClosure& gc) {
  J j;
  j["ambient_dim"] = gc.ambient_dim;
  j["components"] = gc.components;
  J strata = J::array();
  for (const auto& [I, d] : gc.strata) {
    J e;
    e["subset"] = I;
    if (d.motive) e["motive"] = print_class(*d.motive);
    if (!d.seeds.empty()) {
      J s;
      for (const auto& [k, v] : d.seeds) s[k] = v;
      e["seeds"] = std::move(s);
    }
    strata.push_back(std::move(e));
  }
  j["strata"] = std::move(strata);
  if (gc.toric_source) j["toric_source"] = fan_to(*gc.toric_source);
  return j;
}

// --- varieties ---

StratifiedVariety variety_from(const J& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "variety must be a JSON object");
  StratifiedVariety v;
  v.name = as_str(need(j, "name"), "variety name");
  const J& pieces = need(j, "pieces");
  if (!pieces.is_array()) throw Error(Errc::ParseError, "pieces must be an array");
  for (const J& p : pieces) v.pieces.push_back(closure_from(p));
  if (has(j, "weights")) {
    const J& w = j.at("weights");
    if (!w.is_array()) throw Error(Errc::ParseError, "weights must be an array");
    for (const J& x : w) v.weights.push_back(as_int(x, "weight"));
    if (v.weights.size() != v.pieces.size())
      throw Error(Errc::ParseError, "weights and pieces have different lengths");
  }
  if (has(j, "total_class"))
    v.total_class = parse_class(as_str(j.at("total_class"), "total_class"));
  if (has(j, "proper")) {
    if (!j.at("proper").is_boolean())
      throw Error(Errc::ParseError, "proper must be a boolean");
    v.proper = j.at("proper").get<bool>();
  }
  return v;
}

J variety_to(const StratifiedVariety& v) {
  J j;
  j["name"] = v.name;
  J pieces = J::array();
  for (const auto& p : v.pieces) pieces.push_back(closure_to(p));
  j["pieces"] = std::move(pieces);
  if (!v.weights.empty()) {
    J w = J::array();
    for (const auto& x : v.weights) w.push_back(int_json(x));
    j["weights"] = std::move(w);
  }
  if (v.total_class) j["total_class"] = print_class(*v.total_class);
  j["proper"] = v.proper;
  return j;
}

}  // namespace

Fan parse_fan_json(const std::string& text) { return fan_from(parse_doc(text)); }

std::string fan_json(const Fan& f) { return fan_to(f).dump(2) + "\n"; }

std::string resolution_json(const Resolution& r) {
  J j;
  j["fan"] = fan_to(r.fan);
  j["inserted_rays"] = J::array();
  for (const auto& ray : r.inserted_rays) j["inserted_rays"].push_back(ray);
  return j.dump(2) + "\n";
}

GoodClosure parse_closure_json(const std::string& text) {
  return closure_from(parse_doc(text));
}

std::string closure_json(const GoodClosure& gc) { return closure_to(gc).dump(2) + "\n"; }

StratifiedVariety parse_variety_json(const std::string& text) {
  return variety_from(parse_doc(text));
}

std::string variety_json(const StratifiedVariety& v) {
  return variety_to(v).dump(2) + "\n";
}

SeedTable parse_seeds_json(const std::string& text) {
  J j = parse_doc(text);
  if (!j.is_object())
    throw Error(Errc::ParseError, "seed file must be an object of atom -> {measure -> value}");
  SeedTable t;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_object())
      throw Error(Errc::ParseError, "seeds for '" + it.key() + "' must be an object");
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
      t.set(it.key(), jt.key(), as_str(jt.value(), "seed value"));
  }
  return t;
}

std::string seeds_json(const SeedTable& s) {
  J j = J::object();
  for (const auto& [atom, per] : s.entries()) {
    J inner;
    for (const auto& [m, raw] : per) inner[m] = raw;
    j[atom] = std::move(inner);
  }
  return j.dump(2) + "\n";
}

std::string path_json(const FactorizationPath& p) {
  J j;
  j["from"] = fan_to(p.from);
  j["to"] = fan_to(p.to);
  J moves = J::array();
  for (const auto& mv : p.moves) {
    J e;
    e["direction"] =
        mv.direction == FactorizationMove::Direction::Subdivide ? "subdivide" : "contract";
    e["center"] = mv.center;
    e["ray"] = mv.ray;
    moves.push_back(std::move(e));
  }
  j["moves"] = std::move(moves);
  return j.dump(2) + "\n";
}

FactorizationPath parse_path_json(const std::string& text) {
  J j = parse_doc(text);
  FactorizationPath p;
  p.from = fan_from(need(j, "from"));
  p.to = fan_from(need(j, "to"));
  const J& moves = need(j, "moves");
  if (!moves.is_array()) throw Error(Errc::ParseError, "moves must be an array");
  for (const J& e : moves) {
    FactorizationMove mv;
    std::string dir = as_str(need(e, "direction"), "move direction");
    if (dir == "subdivide") {
      mv.direction = FactorizationMove::Direction::Subdivide;
    } else if (dir == "contract") {
      mv.direction = FactorizationMove::Direction::Contract;
    } else {
      throw Error(Errc::ParseError, "move direction must be 'subdivide' or 'contract'");
    }
    const J& c = need(e, "center");
    if (!c.is_array()) throw Error(Errc::ParseError, "move center must be an array");
    for (const J& x : c) mv.center.push_back(static_cast<int>(as_ll(x, "center entry")));
    const J& r = need(e, "ray");
    if (!r.is_array()) throw Error(Errc::ParseError, "move ray must be an array");
    for (const J& x : r) mv.ray.push_back(as_ll(x, "ray entry"));
    p.moves.push_back(std::move(mv));
  }
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(Errc::IoError, "error while writing '" + path + "'");
}

}  // namespace eulerchar
