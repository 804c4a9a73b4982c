// Copyright 2026 The PPS Authors
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

#ifndef PPS_SCENARIO_FILE_H
#define PPS_SCENARIO_FILE_H

#include <optional>
#include <stdexcept>
#include <string>

#include "pps/factorize.h"
#include "pps/problem.h"
#include "pps/scenarios.h"

namespace pps {

/// Malformed scenario document. The message names the line/column or the JSON pointer of the bad field.
struct ScenarioFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// In-memory form of a scenario document:
///
///   {"name": ..., "blocks": [{"label", "dim"}], "operators": [{"label", "matrix"}],
///    "targets": blocks x operators, "reference_pre": [...], "reference_post": [...]}
///
/// Every complex number is a two-element [re, im] array. Matrices are arrays of rows.
struct ScenarioFile {
    SeparationProblem problem;
    std::optional<CVector> reference_pre;
    std::optional<CVector> reference_post;

    /// Reference selection when both vectors are present.
    std::optional<SelectionPair> reference() const;
};

ScenarioFile parse_scenario(const std::string &text);
ScenarioFile load_scenario(const std::string &path);

/// Deterministic rendering; parse_scenario(export_scenario(f)) re-exports byte-identically.
std::string export_scenario(const ScenarioFile &file);

ScenarioFile to_file(const NamedScenario &scenario);

}  // namespace pps

#endif
