// Copyright 2026 The ctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "ctx/composition.hpp"
#include "ctx/free_ops.hpp"
#include "ctx/quantum.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

using Json = nlohmann::ordered_json;

using Document = std::variant<Scenario, Behavior, FreeOperation, QuantumRealization>;

/// "scenario", "behavior", "free_operation" or "quantum".
const char* document_kind(const Document& d);

/// Parses any document kind. Throws DocumentError with the line for syntax
/// errors and the field path for schema errors. Values are not validated
/// beyond their shape.
Document load_document(std::string_view text);
Document document_from_json(const Json& j);

Scenario load_scenario(std::string_view text);
Behavior load_behavior(std::string_view text);
FreeOperation load_free_operation(std::string_view text);
QuantumRealization load_quantum(std::string_view text);

Json to_json(const Scenario& s);
Json to_json(const Behavior& b);
Json to_json(const FreeOperation& t);
Json to_json(const QuantumRealization& q);
Json to_json(const Document& d);
Json to_json(const ValidationReport& r);
Json to_json(const Decomposition& d);

/// Canonical form: keys in schema order, compact, shortest round-trip doubles.
std::string save_document(const Document& d);

}  // namespace ctx
