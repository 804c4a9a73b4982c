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

#ifndef PPS_SCENARIOS_H
#define PPS_SCENARIOS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pps/factorize.h"
#include "pps/problem.h"

namespace pps {

namespace ops {
CMatrix identity2();
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix diag(std::initializer_list<double> entries);
}  // namespace ops

/// What the test suite checks each built-in against. Absent fields are not asserted.
struct ScenarioExpectations {
    std::optional<std::size_t> rank;
    std::optional<Complex> determinant;    ///< of the compressed M, when square
    std::optional<CMatrix> compressed_M;
    std::vector<CVector> unique_solutions;  ///< per block, when M is invertible on its support
    std::vector<CVector> row_dependencies;  ///< coefficient vectors c with c^T M = 0
    std::vector<BlockStatus> statuses;
    std::optional<bool> reference_pattern_ok;
    /// weak[j][i] for the reference selection, when every entry is pinned.
    std::optional<std::vector<std::vector<Complex>>> reference_weak_values;
    struct Entry {
        std::size_t observable;
        std::size_t block;
        Complex value;
    };
    std::vector<Entry> reference_offending;
};

struct NamedScenario {
    SeparationProblem problem;
    std::optional<SelectionPair> reference;
    ScenarioExpectations expected;
};

/// Photon number and sigma_z separated into two paths (the Cheshire-cat arrangement).
NamedScenario example_one();

/// I, sigma_x, sigma_y, sigma_z separated into four paths, with reference states that fail verification.
NamedScenario example_two();

/// Two polarization-entangled photons as one 8-dim block. `anticorrelated` selects the
/// {1,0,0,1,1,0,0,-1} target; otherwise {1,0,0,1,1,0,0,1}.
NamedScenario entangled(bool anticorrelated);

struct EntangledPair {
    NamedScenario minus;
    NamedScenario plus;
};
EntangledPair entangled_pair();

struct RandomShape {
    std::size_t blocks = 4;
    std::size_t dim = 3;
    std::size_t observables = 4;
};

/// Shape drawn uniformly in [1, max] per axis, then as random_scenario_with_shape.
NamedScenario random_scenario(std::uint64_t seed, RandomShape max_shape, bool planted);

/// Random complex operators. When planted, targets are the bilinear values of random
/// product states, which become the reference selection.
NamedScenario random_scenario_with_shape(std::uint64_t seed, RandomShape shape, bool planted);

/// Built-in names accepted by `builtin`: cheshire, four-pauli, entangled-minus, entangled-plus.
const std::vector<std::string> &builtin_names();
std::optional<NamedScenario> builtin(const std::string &name);

}  // namespace pps

#endif
