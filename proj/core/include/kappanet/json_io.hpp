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

#ifndef KAPPANET_JSON_IO_HPP_
#define KAPPANET_JSON_IO_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "kappanet/network.hpp"

namespace kappanet {

using AnyNetwork = std::variant<KappaNetwork, ProbNetwork>;

// Parses the JSON network document format (see docs/network-format.md):
// fields `kind` ("kappa"|"prob"), `variables`, `edges`, `tables` with rows
// keyed by comma-joined parent values.  Throws ValidationError with the
// offending location on any schema or model violation.
AnyNetwork parse_network(std::istream& in);
AnyNetwork parse_network(const std::string& text);

const NetworkStructure& structure_of(const AnyNetwork& net);

std::string serialize_network(const KappaNetwork& net);
std::string serialize_network(const ProbNetwork& net);
std::string serialize_network(const AnyNetwork& net);

// Evidence, action, and clamp files are flat JSON objects mapping variable
// names to value labels.
std::map<std::string, std::string> parse_assignment(std::istream& in);
std::map<std::string, std::string> parse_assignment(const std::string& text);

// Believed-set files are JSON arrays of variable names.
std::vector<std::string> parse_name_list(std::istream& in);

}  // namespace kappanet

#endif  // KAPPANET_JSON_IO_HPP_
