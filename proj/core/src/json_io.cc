#include "mmspace/json_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mmspace/error.h"

namespace mmspace {
namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool is_scalar_array(const Json& value) {
  for (const auto& item : value) {
    if (item.is_array() || item.is_object()) return false;
  }
  return true;
}

void dump_value(const Json& value, int indent, std::string& out) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<size_t>(indent + 1) * 2, ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += Json(key).dump();
        out += ": ";
        dump_value(item, indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      if (is_scalar_array(value)) {
        out += "[";
        for (size_t i = 0; i < value.size(); ++i) {
          if (i) out += ", ";
          dump_value(value[i], indent + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < value.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_value(value[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kSchemaError, what);
}

std::vector<double> number_array(const Json& doc, const char* key) {
  const Json& arr = doc.at(key);
  if (!arr.is_array()) schema_error(std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) schema_error(std::string("\"") + key + "\" must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  dump_value(value, 0, out);
  out += "\n";
  return out;
}

Json space_to_json(const Space& space) {
  const int n = space.size();
  Json doc = Json::object();
  doc["name"] = space.name();
  doc["labels"] = space.labels();
  Json dist = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) row.push_back(space.dist(i, j));
    dist.push_back(std::move(row));
  }
  doc["dist"] = std::move(dist);
  if (space.has_graph()) {
    Json edges = Json::array();
    for (const Edge& e : space.edges()) {
      Json item = {e.u, e.v, e.length};
      if (e.conductance) item.push_back(*e.conductance);
      edges.push_back(std::move(item));
    }
    doc["edges"] = std::move(edges);
  }
  Json mu = Json::array();
  for (double w : space.weights()) mu.push_back(w);
  doc["mu"] = std::move(mu);
  return doc;
}

Space space_from_json(const Json& doc) {
  if (!doc.is_object()) schema_error("space document must be an object");
  if (!doc.contains("mu")) schema_error("missing \"mu\"");
  if (!doc.contains("labels")) schema_error("missing \"labels\"");
  if (!doc.contains("dist") && !doc.contains("edges")) {
    schema_error("need \"dist\" or \"edges\"");
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema_error("\"name\" must be a string");
    name = doc["name"].get<std::string>();
  }
  std::vector<std::string> labels;
  if (!doc["labels"].is_array()) schema_error("\"labels\" must be an array");
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) schema_error("\"labels\" must hold strings");
    labels.push_back(l.get<std::string>());
  }
  std::vector<double> mu = number_array(doc, "mu");

  std::vector<std::vector<double>> dist;
  if (doc.contains("dist")) {
    const Json& d = doc["dist"];
    if (!d.is_array()) schema_error("\"dist\" must be an array of rows");
    for (const auto& row : d) {
      if (!row.is_array()) schema_error("\"dist\" rows must be arrays");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) schema_error("\"dist\" must hold numbers");
        r.push_back(v.get<double>());
      }
      dist.push_back(std::move(r));
    }
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const Json& es = doc["edges"];
    if (!es.is_array()) schema_error("\"edges\" must be an array");
    for (const auto& e : es) {
      if (!e.is_array() || e.size() < 3 || e.size() > 4 ||
          !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number()) {
        schema_error("edges must be [i, j, length] or [i, j, length, conductance]");
      }
      Edge edge{e[0].get<int>(), e[1].get<int>(), e[2].get<double>(), std::nullopt};
      if (e.size() == 4) {
        if (!e[3].is_number()) schema_error("edge conductance must be a number");
        edge.conductance = e[3].get<double>();
      }
      edges.push_back(edge);
    }
  }

  try {
    if (doc.contains("edges")) {
      Space space = build_graph_space(std::move(labels), std::move(edges),
                                      std::move(mu), std::move(name));
      if (!dist.empty()) {
        const int n = space.size();
        bool same = static_cast<int>(dist.size()) == n;
        for (int i = 0; same && i < n; ++i) {
          same = static_cast<int>(dist[i].size()) == n;
          for (int j = 0; same && j < n; ++j) {
            same = std::abs(dist[i][j] - space.dist(i, j)) <= kMetricTol;
          }
        }
        if (!same) {
          throw Error(ErrorCode::kValidationError, ErrorCode::kBadParameter,
                      "\"dist\" differs from the shortest-path metric of \"edges\"");
        }
      }
      return space;
    }
    return build_space(std::move(labels), std::move(dist), std::move(mu),
                       std::move(name));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValidationError) throw;
    throw Error(ErrorCode::kValidationError, e.code(), e.what());
  }
}

Space read_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kSchemaError, "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, std::string("malformed JSON: ") + e.what());
  }
  return space_from_json(doc);
}

void write_space(const Space& space, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kSchemaError, "cannot write " + path.string());
  out << canonical_dump(space_to_json(space));
}

}  // namespace mmspace
