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

#ifndef PPS_POINTER_H
#define PPS_POINTER_H

#include <vector>

#include "pps/hilbert.h"

namespace pps {

/// Gaussian pointer with position spread `sigma` coupled through exp(-i g O (x) P).
/// hbar = 1, so a pointer eigenvalue lambda displaces the wavepacket by g * lambda.
struct PointerConfig {
    double sigma = 1.0;
    double g = 0.0;
};

struct PointerOutcome {
    double mean_position_shift = 0.0;
    double mean_momentum_shift = 0.0;
    double postselection_probability = 0.0;
};

/// Exact post-selected pointer moments for a diagonalizable O with real spectrum.
/// `post` is the post-selection co-vector; neither state needs to be normalized.
PointerOutcome simulate(const CVector &post, const CVector &pre, const CMatrix &O, const PointerConfig &cfg);

/// Single ancilla coupled to g1*O1 + g2*O2. Identical to simulate() on the combined operator with g = 1.
PointerOutcome simulate_joint(
    const CVector &post, const CVector &pre, const CMatrix &O1, const CMatrix &O2, double g1, double g2,
    const PointerConfig &cfg);

struct LadderRow {
    double g;
    double shift;
    double shift_over_g;
    double momentum_shift;
    double error;  ///< |shift/g - Re(weak value)|
    double ratio;  ///< error / previous row's error; NaN on the first row or when undefined
};

struct ConvergenceTable {
    Complex weak_value;
    std::vector<LadderRow> rows;

    /// Errors never increase along the ladder, up to kMonotoneSlack of rounding noise.
    bool monotone() const;

    static constexpr double kMonotoneSlack = 1e-12;
};

/// Runs simulate() for each g of a strictly decreasing positive ladder.
ConvergenceTable weak_limit_check(
    const CVector &post, const CVector &pre, const CMatrix &O, double sigma, const std::vector<double> &ladder);

/// g, g/2, g/4, ... with `count` entries.
std::vector<double> halving_ladder(double g, int count);

}  // namespace pps

#endif
