#include "helly/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace helly::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw MalformedInput(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(where + ": missing field '" + key + "'");
  return *it;
}

Eigen::Index dim_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1)
    throw MalformedInput(where + ": dimension must be a positive integer");
  return static_cast<Eigen::Index>(j.get<std::int64_t>());
}

Json index_set(const IndexSet& idx) {
  Json a = Json::array();
  for (auto i : idx) a.push_back(i);
  return a;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string point_text(const Point& p) { return to_string(p); }

}  // namespace

Json to_json(const Rational& r) {
  if (denominator(r) == 1) {
    const Integer n = numerator(r);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
      return n.convert_to<std::int64_t>();
  }
  return to_string(r);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(j.get<std::uint64_t>()));
    return Rational(Integer(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw MalformedInput("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json to_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(to_json(p(i)));
  return a;
}

Point point_from_json(const Json& j, Eigen::Index dim) {
  if (!j.is_array()) throw MalformedInput("point must be an array");
  if (static_cast<Eigen::Index>(j.size()) != dim)
    throw MalformedInput("point " + j.dump() + " has " + std::to_string(j.size()) +
                         " coordinates, expected " + std::to_string(dim));
  Point p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) p(i) = rational_from_json(j[static_cast<std::size_t>(i)]);
  return p;
}

Json to_json(const ConvexSet& s) {
  Json j;
  j["label"] = s.label();
  j["dim"] = s.dim();
  if (s.is_vrep()) {
    j["vrep"]["points"] = points_to_json(s.vrep().points);
    j["vrep"]["rays"] = points_to_json(s.vrep().rays);
  } else {
    Json hs = Json::array();
    for (const auto& h : s.hrep().halfspaces) hs.push_back({{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}});
    j["hrep"] = hs;
  }
  return j;
}

ConvexSet set_from_json(const Json& j) {
  const Json& lj = field(j, "label", "set");
  if (!lj.is_string()) throw MalformedInput("set label must be a string");
  const std::string label = lj.get<std::string>();
  const std::string where = "set '" + label + "'";
  const Eigen::Index dim = dim_from_json(field(j, "dim", where), where);
  const bool has_v = j.contains("vrep"), has_h = j.contains("hrep");
  if (has_v == has_h) throw MalformedInput(where + ": exactly one of 'vrep' and 'hrep' is required");
  if (has_v) {
    const Json& v = j["vrep"];
    std::vector<Point> pts = points_from_json(field(v, "points", where), dim);
    std::vector<Point> rays;
    if (v.contains("rays")) rays = points_from_json(v["rays"], dim);
    return ConvexSet::from_generators(label, dim, std::move(pts), std::move(rays));
  }
  const Json& h = j["hrep"];
  if (!h.is_array()) throw MalformedInput(where + ": 'hrep' must be an array");
  std::vector<Halfspace> hs;
  for (const auto& row : h)
    hs.push_back({point_from_json(field(row, "normal", where), dim),
                  rational_from_json(field(row, "offset", where))});
  return ConvexSet::from_halfspaces(label, dim, std::move(hs));
}

Json to_json(const Family& fam) {
  Json sets = Json::array();
  for (const auto& s : fam.sets) sets.push_back(to_json(s));
  return {{"dimension", fam.dim}, {"sets", sets}};
}

Family family_from_json(const Json& j) {
  const Eigen::Index dim = dim_from_json(field(j, "dimension", "family"), "family");
  const Json& sets = field(j, "sets", "family");
  if (!sets.is_array()) throw MalformedInput("family: 'sets' must be an array");
  Family fam;
  fam.dim = dim;
  for (const auto& s : sets) fam.add(set_from_json(s));
  return fam;
}

Json points_to_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

std::vector<Point> points_from_json(const Json& j, Eigen::Index dim) {
  const Json& arr = j.is_object() ? field(j, "points", "point list") : j;
  if (!arr.is_array()) throw MalformedInput("point list must be an array");
  std::vector<Point> out;
  for (const auto& p : arr) out.push_back(point_from_json(p, dim));
  return out;
}

Json to_json(const Hypergraph& h) {
  Json edges = Json::array();
  for (const auto& e : h.edges) edges.push_back(index_set(e));
  Json j = {{"n", h.n_vertices}, {"edges", edges}};
  if (h.arity) j["arity"] = *h.arity;
  return j;
}

Hypergraph hypergraph_from_json(const Json& j) {
  const Json& n = field(j, "n", "hypergraph");
  if (!n.is_number_integer() || n.get<std::int64_t>() < 0)
    throw MalformedInput("hypergraph: 'n' must be a non-negative integer");
  const Json& edges = field(j, "edges", "hypergraph");
  if (!edges.is_array()) throw MalformedInput("hypergraph: 'edges' must be an array");
  std::vector<IndexSet> es;
  for (const auto& e : edges) {
    if (!e.is_array()) throw MalformedInput("hypergraph: each edge must be an array");
    IndexSet s;
    for (const auto& v : e) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw MalformedInput("hypergraph: vertices must be non-negative integers");
      s.push_back(v.get<std::size_t>());
    }
    es.push_back(std::move(s));
  }
  std::optional<std::size_t> arity;
  if (j.contains("arity")) {
    if (!j["arity"].is_number_integer() || j["arity"].get<std::int64_t>() < 1)
      throw MalformedInput("hypergraph: 'arity' must be a positive integer");
    arity = j["arity"].get<std::size_t>();
  }
  return Hypergraph::make(n.get<std::size_t>(), std::move(es), arity);
}

Json to_json(const PqReport& r) {
  Json j = {{"p", r.p},
            {"q", r.q},
            {"holds", r.holds},
            {"checked_tuples", r.checked_tuples},
            {"violating_tuple", r.violating_tuple ? index_set(*r.violating_tuple) : Json(nullptr)}};
  if (!r.tuples.empty()) {
    Json ts = Json::array();
    for (const auto& t : r.tuples)
      ts.push_back({{"tuple", index_set(t.tuple)},
                    {"intersecting", t.intersecting ? index_set(*t.intersecting) : Json(nullptr)}});
    j["tuples"] = ts;
  }
  return j;
}

Json to_json(const PiercingSolution& s, const Family* fam) {
  Json pts = Json::array();
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    IndexSet members;
    for (std::size_t i = 0; i < s.assignment.size(); ++i)
      if (s.assignment[i] == k) members.push_back(i);
    Json entry = {{"point", to_json(s.points[k])}, {"members", index_set(members)}};
    if (fam) {
      Json labels = Json::array();
      for (auto i : members) labels.push_back((*fam)[i].label());
      entry["labels"] = labels;
    }
    pts.push_back(entry);
  }
  return {{"size", s.size()}, {"optimal", s.optimal}, {"points", pts}};
}

Json to_json(const TransversalResult& t) {
  return {{"beta", t.beta}, {"optimal", t.optimal}, {"cover", index_set(t.cover)}};
}

Json to_json(const CatalogEntry& e) {
  Json args = Json::array();
  for (auto a : e.args) args.push_back(a);
  return {{"name", e.name},
          {"args", args},
          {"value", e.value},
          {"kind", std::string(to_string(e.kind))},
          {"provenance", e.provenance}};
}

Json to_json(const EgCheck& c) {
  return {{"consistent", c.consistent},
          {"beta", c.beta},
          {"local_beta", c.local_beta},
          {"subgraphs_checked", c.subgraphs_checked},
          {"counterwitness", c.counterwitness ? index_set(*c.counterwitness) : Json(nullptr)}};
}

Json to_json(const PipelineReport& r) {
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  Json checks = Json::array();
  for (const auto& c : r.hypothesis_checks) {
    Json w = {{"indices", c.witness.indices ? index_set(*c.witness.indices) : Json(nullptr)},
              {"point", c.witness.point ? to_json(*c.witness.point) : Json(nullptr)},
              {"note", c.witness.note}};
    checks.push_back({{"description", c.description}, {"passed", c.passed}, {"witness", w}});
  }
  Json parts = Json::array();
  for (const auto& p : r.parts) {
    Json pts = Json::array();
    for (auto i : p.points) pts.push_back(i);
    parts.push_back({{"members", index_set(p.members)}, {"route", p.route}, {"note", p.note}, {"points", pts}});
  }
  Json j = {{"name", r.name},
            {"inputs", inputs},
            {"hypothesis_checks", checks},
            {"all_passed", r.all_passed()},
            {"exhaustive", r.exhaustive},
            {"budget_exhausted", r.budget_exhausted}};
  if (r.piercing) {
    Json pj = to_json(*r.piercing);
    if (!r.member_labels.empty())
      for (auto& entry : pj["points"]) {
        Json labels = Json::array();
        for (const auto& m : entry["members"]) labels.push_back(r.member_labels[m.get<std::size_t>()]);
        entry["labels"] = labels;
      }
    j["piercing"] = pj;
  } else {
    j["piercing"] = nullptr;
  }
  j["parts"] = parts;
  if (!r.cases.empty()) {
    Json cases = Json::array();
    for (const auto& c : r.cases)
      cases.push_back({{"k", c.k},
                       {"tuple", index_set(c.tuple)},
                       {"a_count", c.a_count},
                       {"case", c.case_number},
                       {"predicted", index_set(c.predicted)},
                       {"matches", c.matches}});
    j["cases"] = cases;
  }
  j["exact_piercing"] = optional_json(r.exact_piercing);
  j["bound_claim"] = {{"formula", r.bound_claim.formula},
                      {"value", optional_json(r.bound_claim.value)},
                      {"provenance", r.bound_claim.provenance}};
  j["conclusion"] = r.conclusion;
  return j;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string csv_escape(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::string set_text(const IndexSet& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + std::to_string(idx[i]);
  return s;
}

void row(std::ostream& out, const std::string& kind, std::size_t id, const std::string& desc,
         const std::string& passed, const std::string& detail) {
  out << kind << ',' << id << ',' << csv_escape(desc) << ',' << passed << ',' << csv_escape(detail)
      << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const PipelineReport& r) {
  out << "kind,id,description,passed,detail\n";
  for (std::size_t i = 0; i < r.hypothesis_checks.size(); ++i) {
    const auto& c = r.hypothesis_checks[i];
    std::string detail = c.witness.note;
    if (c.witness.indices) detail += (detail.empty() ? "" : "; ") + std::string("indices ") + set_text(*c.witness.indices);
    if (c.witness.point) detail += (detail.empty() ? "" : "; ") + std::string("point ") + point_text(*c.witness.point);
    row(out, "check", i, c.description, c.passed ? "true" : "false", detail);
  }
  for (std::size_t i = 0; i < r.cases.size(); ++i) {
    const auto& c = r.cases[i];
    row(out, "case", i,
        "k=" + std::to_string(c.k) + " tuple " + set_text(c.tuple) + " i=" + std::to_string(c.a_count) +
            " case " + std::to_string(c.case_number),
        c.matches ? "true" : "false", "predicted " + set_text(c.predicted));
  }
  if (r.piercing)
    for (std::size_t k = 0; k < r.piercing->points.size(); ++k) {
      IndexSet members;
      for (std::size_t i = 0; i < r.piercing->assignment.size(); ++i)
        if (r.piercing->assignment[i] == k) members.push_back(i);
      row(out, "point", k, point_text(r.piercing->points[k]), "true", "members " + set_text(members));
    }
}

void write_csv(std::ostream& out, const PqReport& r) {
  out << "kind,id,description,passed,detail\n";
  row(out, "check", 0, "(" + std::to_string(r.p) + "," + std::to_string(r.q) + ")-property",
      r.holds ? "true" : "false",
      r.violating_tuple ? "violating " + set_text(*r.violating_tuple)
                        : std::to_string(r.checked_tuples) + " tuples checked");
  for (std::size_t i = 0; i < r.tuples.size(); ++i)
    row(out, "tuple", i, set_text(r.tuples[i].tuple), r.tuples[i].intersecting ? "true" : "false",
        r.tuples[i].intersecting ? "intersecting " + set_text(*r.tuples[i].intersecting) : "");
}

void write_csv(std::ostream& out, const Family& fam) {
  out << "set,kind";
  for (Eigen::Index i = 0; i < fam.dim; ++i) out << ",x" << i + 1;
  out << ",offset\n";
  auto coords = [&](const Point& p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) out << ',' << to_string(p(i));
  };
  for (const auto& s : fam.sets) {
    if (s.is_vrep()) {
      for (const auto& p : s.vrep().points) {
        out << csv_escape(s.label()) << ",point";
        coords(p);
        out << ",\n";
      }
      for (const auto& p : s.vrep().rays) {
        out << csv_escape(s.label()) << ",ray";
        coords(p);
        out << ",\n";
      }
    } else {
      for (const auto& h : s.hrep().halfspaces) {
        out << csv_escape(s.label()) << ",halfspace";
        coords(h.normal);
        out << ',' << to_string(h.offset) << '\n';
      }
    }
  }
}

}  // namespace helly::io
