// Copyright 2026 The Kappanet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kappanet/json_io.hpp"

#include <istream>
#include <sstream>

#include <json.hpp>

#include "kappanet/errors.hpp"

namespace kappanet {

namespace {

using json = nlohmann::ordered_json;

json parse_document(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

const json& require_field(const json& object, const char* field, const std::string& where) {
  auto it = object.find(field);
  if (it == object.end()) {
    throw ValidationError(where + ": missing field '" + field + "'");
  }
  return *it;
}

std::string require_string(const json& value, const std::string& where) {
  if (!value.is_string()) {
    throw ValidationError(where + ": expected a string");
  }
  return value.get<std::string>();
}

// Splits a row key "v1,v2" into labels; the empty key denotes the single
// row of a root table.
std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  if (key.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(key.substr(start));
      break;
    }
    parts.push_back(key.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

Kappa parse_kappa_entry(const json& value, const std::string& where) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return Kappa::infinity();
    throw ValidationError(where + ": kappa must be a nonnegative integer or \"inf\"");
  }
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ValidationError(where + ": kappa must be a nonnegative integer or \"inf\"");
  }
  return Kappa::finite(value.get<std::uint64_t>());
}

double parse_prob_entry(const json& value, const std::string& where) {
  if (!value.is_number()) {
    throw ValidationError(where + ": probability must be a number");
  }
  return value.get<double>();
}

NetworkStructure parse_structure(const json& doc) {
  std::vector<Variable> variables;
  const json& vars = require_field(doc, "variables", "document");
  if (!vars.is_array()) throw ValidationError("'variables' must be an array");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string where = "variables[" + std::to_string(i) + "]";
    const json& var = vars[i];
    Variable variable;
    variable.name = require_string(require_field(var, "name", where), where + ".name");
    const json& values = require_field(var, "values", where);
    if (!values.is_array()) throw ValidationError(where + ".values must be an array");
    for (const json& label : values) {
      variable.values.push_back(require_string(label, where + ".values"));
    }
    variables.push_back(std::move(variable));
  }

  std::vector<std::pair<std::string, std::string>> edges;
  const json& edge_list = require_field(doc, "edges", "document");
  if (!edge_list.is_array()) throw ValidationError("'edges' must be an array");
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    std::string where = "edges[" + std::to_string(i) + "]";
    const json& edge = edge_list[i];
    if (!edge.is_array() || edge.size() != 2) {
      throw ValidationError(where + ": expected a [parent, child] pair");
    }
    edges.emplace_back(require_string(edge[0], where), require_string(edge[1], where));
  }

  return NetworkStructure(std::move(variables), std::move(edges));
}

template <typename Entry, typename ParseEntry>
std::vector<ConditionalTable<Entry>> parse_tables(const json& doc,
                                                  const NetworkStructure& structure,
                                                  ParseEntry&& parse_entry) {
  const json& table_list = require_field(doc, "tables", "document");
  if (!table_list.is_array()) throw ValidationError("'tables' must be an array");

  std::vector<ConditionalTable<Entry>> tables;
  for (std::size_t t = 0; t < table_list.size(); ++t) {
    std::string where = "tables[" + std::to_string(t) + "]";
    const json& spec = table_list[t];

    ConditionalTable<Entry> table;
    std::string child = require_string(require_field(spec, "child", where), where + ".child");
    table.child = structure.require_variable(child);
    where = "table for '" + child + "'";

    const json& parent_list = require_field(spec, "parents", where);
    if (!parent_list.is_array()) throw ValidationError(where + ": 'parents' must be an array");
    for (const json& p : parent_list) {
      table.parents.push_back(structure.require_variable(require_string(p, where + ".parents")));
    }

    std::size_t expected_rows = table_row_count(structure, table.parents);
    std::size_t dom = static_cast<std::size_t>(structure.domain_size(table.child));
    table.rows.assign(expected_rows, {});

    const json& rows = require_field(spec, "rows", where);
    if (!rows.is_object()) throw ValidationError(where + ": 'rows' must be an object");
    for (const auto& [key, row_spec] : rows.items()) {
      std::string row_where = where + ", row '" + key + "'";
      std::vector<std::string> labels = split_key(key);
      if (labels.size() != table.parents.size()) {
        throw ValidationError(row_where + ": expected " + std::to_string(table.parents.size()) +
                              " parent values");
      }
      std::vector<int> parent_values;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        parent_values.push_back(structure.require_value(table.parents[i], labels[i]));
      }
      std::size_t row = table_row_index(structure, table.parents, parent_values);
      if (!table.rows[row].empty()) {
        throw ValidationError(row_where + ": duplicate row");
      }
      if (!row_spec.is_object()) {
        throw ValidationError(row_where + ": expected an object of value entries");
      }
      std::vector<Entry> entries(dom);
      std::vector<char> seen(dom, 0);
      for (const auto& [label, entry] : row_spec.items()) {
        int value = structure.require_value(table.child, label);
        if (seen[value]) throw ValidationError(row_where + ": duplicate value '" + label + "'");
        seen[value] = 1;
        entries[value] = parse_entry(entry, row_where + ", value '" + label + "'");
      }
      for (std::size_t i = 0; i < dom; ++i) {
        if (!seen[i]) {
          throw ValidationError(row_where + ": missing value '" +
                                structure.variable(table.child).values[i] + "'");
        }
      }
      table.rows[row] = std::move(entries);
    }

    for (std::size_t r = 0; r < expected_rows; ++r) {
      if (table.rows[r].empty()) {
        std::vector<int> values;
        table_row_assignment(structure, table.parents, r, values);
        std::ostringstream key;
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (i) key << ",";
          key << structure.variable(table.parents[i]).values[values[i]];
        }
        throw ValidationError(where + ": missing row '" + key.str() + "'");
      }
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

template <typename Net, typename EntryToJson>
json network_to_json(const Net& net, const char* kind, EntryToJson&& entry_to_json) {
  const NetworkStructure& structure = net.structure();
  json doc;
  doc["kind"] = kind;

  json vars = json::array();
  for (const Variable& var : structure.variables()) {
    json v;
    v["name"] = var.name;
    v["values"] = var.values;
    vars.push_back(std::move(v));
  }
  doc["variables"] = std::move(vars);

  json edges = json::array();
  for (const auto& [p, c] : structure.edges()) {
    edges.push_back(json::array({structure.variable(p).name, structure.variable(c).name}));
  }
  doc["edges"] = std::move(edges);

  json tables = json::array();
  for (int v = 0; v < structure.variable_count(); ++v) {
    const auto& table = net.table(v);
    json spec;
    spec["child"] = structure.variable(v).name;
    json parents = json::array();
    for (int p : table.parents) parents.push_back(structure.variable(p).name);
    spec["parents"] = std::move(parents);

    json rows = json::object();
    std::vector<int> parent_values;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      table_row_assignment(structure, table.parents, r, parent_values);
      std::ostringstream key;
      for (std::size_t i = 0; i < parent_values.size(); ++i) {
        if (i) key << ",";
        key << structure.variable(table.parents[i]).values[parent_values[i]];
      }
      json row = json::object();
      for (int i = 0; i < structure.domain_size(v); ++i) {
        row[structure.variable(v).values[i]] = entry_to_json(table.rows[r][i]);
      }
      rows[key.str()] = std::move(row);
    }
    spec["rows"] = std::move(rows);
    tables.push_back(std::move(spec));
  }
  doc["tables"] = std::move(tables);
  return doc;
}

json kappa_to_json(const Kappa& k) {
  if (k.is_infinite()) return json("inf");
  return json(k.value());
}

json prob_to_json(const double& p) { return json(p); }

}  // namespace

AnyNetwork parse_network(std::istream& in) {
  json doc = parse_document(in);
  if (!doc.is_object()) throw ValidationError("document must be a JSON object");
  std::string kind = require_string(require_field(doc, "kind", "document"), "kind");

  NetworkStructure structure = parse_structure(doc);
  if (kind == "kappa") {
    auto tables = parse_tables<Kappa>(doc, structure, parse_kappa_entry);
    return KappaNetwork(std::move(structure), std::move(tables));
  }
  if (kind == "prob") {
    auto tables = parse_tables<double>(doc, structure, parse_prob_entry);
    return ProbNetwork(std::move(structure), std::move(tables));
  }
  throw ValidationError("unknown network kind '" + kind + "' (expected \"kappa\" or \"prob\")");
}

AnyNetwork parse_network(const std::string& text) {
  std::istringstream in(text);
  return parse_network(in);
}

const NetworkStructure& structure_of(const AnyNetwork& net) {
  return std::visit([](const auto& n) -> const NetworkStructure& { return n.structure(); }, net);
}

std::string serialize_network(const KappaNetwork& net) {
  return network_to_json(net, "kappa", kappa_to_json).dump(2) + "\n";
}

std::string serialize_network(const ProbNetwork& net) {
  return network_to_json(net, "prob", prob_to_json).dump(2) + "\n";
}

std::string serialize_network(const AnyNetwork& net) {
  return std::visit([](const auto& n) { return serialize_network(n); }, net);
}

std::map<std::string, std::string> parse_assignment(std::istream& in) {
  json doc = parse_document(in);
  if (!doc.is_object()) throw ValidationError("assignment must be a JSON object");
  std::map<std::string, std::string> result;
  for (const auto& [name, value] : doc.items()) {
    result[name] = require_string(value, "assignment of '" + name + "'");
  }
  return result;
}

std::map<std::string, std::string> parse_assignment(const std::string& text) {
  std::istringstream in(text);
  return parse_assignment(in);
}

std::vector<std::string> parse_name_list(std::istream& in) {
  json doc = parse_document(in);
  if (!doc.is_array()) throw ValidationError("expected a JSON array of variable names");
  std::vector<std::string> result;
  for (const json& name : doc) {
    result.push_back(require_string(name, "name list entry"));
  }
  return result;
}

}  // namespace kappanet
