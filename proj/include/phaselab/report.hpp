// SPDX-License-Identifier: Apache-2.0
//
// phaselab: uniqueness and stability analysis for phase retrieval on finite frames
// Copyright (C) 2026 The phaselab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// JSON encoding shared by every report. JSON has no infinity, so
// non-finite numbers are written as the strings "inf", "-inf" and "nan".

#pragma once

#include "phaselab/core.hpp"

#include <json.hpp>

namespace phaselab {

nlohmann::ordered_json json_number(double v);
nlohmann::ordered_json json_vector(const Vector& v, Field field);
nlohmann::ordered_json json_indices(const IndexSet& s);
nlohmann::ordered_json json_tolerances(const Tolerances& t);

/// Inverse of json_number (accepts numbers and the three strings).
double number_from_json(const nlohmann::json& j);

}  // namespace phaselab
