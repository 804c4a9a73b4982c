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

#ifndef PPS_CRITERION_H
#define PPS_CRITERION_H

#include <optional>
#include <vector>

#include "pps/hilbert.h"
#include "pps/problem.h"

namespace pps {

/// Row j holds the row-major flattening of observable j, so column k*n + l
/// (zero-based) multiplies the bilinear unknown x^k y^l.
struct CoefficientMatrix {
    CMatrix m;
    std::size_t block_dim = 0;

    static std::size_t column(std::size_t k, std::size_t l, std::size_t n) {
        return k * n + l;
    }

    /// Drops identically zero columns; `columns` lists the kept flat indices.
    struct Compressed {
        CMatrix m;
        std::vector<std::size_t> columns;
    };
    Compressed compressed() const;
};

CoefficientMatrix build_M(const std::vector<Observable> &observables);

/// Solutions of M v = e: particular is the minimum-norm point, nullspace is orthonormal.
struct AffineSolutionSet {
    CVector particular;
    std::vector<CVector> nullspace;
    double residual = 0.0;

    std::size_t dim() const {
        return static_cast<std::size_t>(particular.size());
    }
};

struct FeasibilityVerdict {
    bool feasible = false;
    std::size_t rank_M = 0;
    std::size_t rank_augmented = 0;
    std::optional<AffineSolutionSet> solution;
};

/// Feasible iff rank([M|e]) == rank(M) at rel_tol.
FeasibilityVerdict feasibility(const CoefficientMatrix &M, const CVector &e, double rel_tol = kDefaultRankTol);

/// One verdict per block, ordered by block index. Zero target rows are solved too.
std::vector<FeasibilityVerdict> solve_all_blocks(const SeparationProblem &problem, double rel_tol = kDefaultRankTol);

}  // namespace pps

#endif
