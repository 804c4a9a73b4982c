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

#ifndef PPS_PROBLEM_H
#define PPS_PROBLEM_H

#include <string>
#include <vector>

#include "pps/hilbert.h"

namespace pps {

struct Observable {
    std::string label;
    CMatrix matrix;  ///< per-block form, n x n
};

/// Desired unnormalized bilinear values: rows[b][j] is the value of observable j in block b.
struct TargetPattern {
    std::vector<std::vector<Complex>> rows;

    std::size_t blocks() const {
        return rows.size();
    }
    /// Row b as a vector of length q.
    CVector row(std::size_t b) const;
    bool row_is_zero(std::size_t b) const;
};

/// Kronecker-delta pattern: block b carries amplitudes[b] on observable b and zero elsewhere.
TargetPattern delta_target(std::size_t m, const std::vector<Complex> &amplitudes);

/// Observables are shared by every block, as in all the built-in scenarios.
struct SeparationProblem {
    std::string name;
    BlockSpace space;
    std::vector<Observable> observables;
    TargetPattern target;

    std::size_t block_count() const {
        return space.size();
    }
    std::size_t observable_count() const {
        return observables.size();
    }
    /// Number of blocks with at least one nonzero target entry.
    std::size_t constrained_blocks() const;
};

struct Violation {
    enum class Kind { NoObservables, NonSquare, NonFinite, DimensionMismatch, TargetShape, DegenerateTarget, DuplicateLabel };
    Kind kind;
    int block = -1;       ///< -1 when not block-specific
    int observable = -1;  ///< -1 when not observable-specific
    std::string message;
};

std::vector<Violation> validate(const SeparationProblem &problem);

/// Throws InvalidProblem carrying every violation message when validate() is nonempty.
void require_valid(const SeparationProblem &problem);

}  // namespace pps

#endif
