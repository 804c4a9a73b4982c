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

#ifndef PPS_FACTORIZE_H
#define PPS_FACTORIZE_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pps/criterion.h"
#include "pps/hilbert.h"
#include "pps/problem.h"

namespace pps {

struct SearchConfig {
    double rank1_tol = 1e-8;  ///< accepted sigma_2 / sigma_1 of the reshaped solution
    int starts = 64;
    int max_iter = 500;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    double overlap_tol = 1e-9;

    /// Throws std::invalid_argument unless every field is positive.
    void check() const;
};

/// One block's product factor V = x y^T. x is the post-selection co-vector component,
/// y the pre-selection component.
struct Rank1Factor {
    CVector x;
    CVector y;
    double residual = 0.0;
};

struct Rank1Search {
    std::optional<Rank1Factor> factor;
    double best_residual = 0.0;
    int start = -1;  ///< start index that produced the reported point
    int iterations = 0;

    bool found() const {
        return factor.has_value();
    }
};

/// Inverse of the row-major flattening: V(k, l) = v[k*n + l]. Length must be a perfect square.
CMatrix reshape(const CVector &v);
CVector flatten(const CMatrix &V);

/// sigma_2 / sigma_1 of V; zero when V has rank <= 1 exactly (including V == 0).
double rank1_residual(const CMatrix &V);

/// Normalizes x to unit norm with its first nonzero entry real and positive; y absorbs
/// the inverse scale so x y^T is unchanged. Idempotent.
void fix_gauge(CVector &x, CVector &y);

/// Multi-start search for a rank-1 point of the affine solution set. Starts run in
/// parallel under OpenMP; the result is identical to find_rank1_serial.
Rank1Search find_rank1(const AffineSolutionSet &set, const SearchConfig &config);

/// Reference implementation: starts run one after another, stopping at the first success.
Rank1Search find_rank1_serial(const AffineSolutionSet &set, const SearchConfig &config);

/// Throws InfeasibleInput when the verdict carries no solution set.
Rank1Search find_rank1(const FeasibilityVerdict &verdict, const SearchConfig &config);

/// Global pre-selection ket and post-selection co-vector.
struct SelectionPair {
    BlockedState pre;
    BlockedState post;
    Complex overlap;
    /// Factor applied to each block's pre component during assembly (1 unless rescaled).
    std::vector<double> block_scales;
};

/// Bilinear overlap of a post co-vector with a pre ket, both flat.
SelectionPair make_selection(const BlockSpace &space, const CVector &pre, const CVector &post);

SelectionPair assemble(const std::vector<Rank1Factor> &factors, const BlockSpace &space, const SearchConfig &config);

enum class BlockStatus { LinearInfeasible, Rank1NotFound, Solved };

std::string to_string(BlockStatus s);

struct ProblemSolution {
    std::vector<FeasibilityVerdict> verdicts;
    std::vector<Rank1Search> searches;  ///< empty search for linearly infeasible blocks
    std::vector<BlockStatus> diagnosis;
    std::optional<SelectionPair> selection;

    bool all_solved() const;
};

ProblemSolution solve_problem(
    const SeparationProblem &problem, const SearchConfig &config, double rel_tol = kDefaultRankTol);

}  // namespace pps

#endif
