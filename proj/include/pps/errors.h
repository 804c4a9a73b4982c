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

#ifndef PPS_ERRORS_H
#define PPS_ERRORS_H

#include <stdexcept>
#include <string>

namespace pps {

/// Operand shapes do not line up (vector/matrix/block dimensions).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The bilinear overlap between post- and pre-selection vanishes, so a weak value is undefined.
struct PostSelectionOrthogonal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Assembly could not produce a pre/post pair with a nonvanishing global overlap.
struct OrthogonalSelections : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularTransform : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotDiagonalizable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A rank-1 search was requested on a linearly infeasible block.
struct InfeasibleInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The problem description violates one or more structural invariants.
struct InvalidProblem : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace pps

#endif
