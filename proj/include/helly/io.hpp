#ifndef HELLY_IO_HPP
#define HELLY_IO_HPP

#include "helly/catalog.hpp"
#include "helly/pipelines.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace helly::io {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j, Eigen::Index dim);

Json to_json(const ConvexSet& s);
ConvexSet set_from_json(const Json& j);

Json to_json(const Family& fam);
Family family_from_json(const Json& j);

Json points_to_json(const std::vector<Point>& pts);
std::vector<Point> points_from_json(const Json& j, Eigen::Index dim);

Json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);

Json to_json(const PqReport& r);
Json to_json(const PiercingSolution& s, const Family* fam = nullptr);
Json to_json(const TransversalResult& t);
Json to_json(const CatalogEntry& e);
Json to_json(const EgCheck& c);
Json to_json(const PipelineReport& r);

/// Parses text, mapping parse errors to MalformedInput.
Json parse(const std::string& text);
Json read_file(const std::string& path);

/// Flat rows: kind,id,description,passed,detail.
void write_csv(std::ostream& out, const PipelineReport& r);
void write_csv(std::ostream& out, const PqReport& r);
void write_csv(std::ostream& out, const Family& fam);
std::string csv_escape(const std::string& field);

}  // namespace helly::io

#endif  // HELLY_IO_HPP
