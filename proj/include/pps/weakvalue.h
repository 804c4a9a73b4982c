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

#ifndef PPS_WEAKVALUE_H
#define PPS_WEAKVALUE_H

#include <string>
#include <vector>

#include "pps/factorize.h"
#include "pps/hilbert.h"
#include "pps/problem.h"

namespace pps {

inline constexpr double kDefaultOverlapTol = 1e-9;
inline constexpr double kDefaultPatternTol = 1e-7;

/// <Phi|O|Psi> / <Phi|Psi> with `post` a co-vector. Throws PostSelectionOrthogonal
/// when |<Phi|Psi>| <= overlap_tol.
Complex weak_value(const CVector &post, const CVector &pre, const CMatrix &O, double overlap_tol = kDefaultOverlapTol);

struct WeakValueReport {
    /// weak[j][i]: observable j embedded in block i.
    std::vector<std::vector<Complex>> weak;
    /// Same entries before division by the overlap.
    std::vector<std::vector<Complex>> bilinear;
    /// Per block, the weak value at the block's first targeted observable (0 if untargeted).
    std::vector<Complex> amplitudes;
    bool pattern_ok = false;
    double tolerance = kDefaultPatternTol;
    Complex overlap;

    struct Entry {
        std::size_t observable;
        std::size_t block;
        Complex value;
    };
    /// Entries that break the pattern: nonzero where the target is zero, or vanishing where it is not.
    std::vector<Entry> offending;
    /// Targeted entries whose imaginary part exceeds the tolerance. Informational only.
    std::vector<Entry> complex_targets;
};

WeakValueReport verify_disembodiment(
    const SelectionPair &selection, const SeparationProblem &problem, double tol = kDefaultPatternTol,
    double overlap_tol = kDefaultOverlapTol);

/// Stationary preparation/detection imperfection: pre -> pre_transform * pre,
/// post -> post * post_transform.
class CalibrationMap {
   public:
    CalibrationMap(CMatrix pre_transform, CMatrix post_transform);

    static CalibrationMap identity(std::size_t dim);

    const CMatrix &pre_transform() const {
        return pre_;
    }
    const CMatrix &post_transform() const {
        return post_;
    }
    CalibrationMap inverse() const;

   private:
    CMatrix pre_;
    CMatrix post_;
};

SelectionPair apply_calibration(const SelectionPair &selection, const CalibrationMap &map);

}  // namespace pps

#endif
