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

#ifndef PPS_HILBERT_H
#define PPS_HILBERT_H

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pps {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Default relative threshold on singular values below which they count as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/// Bilinear pairing sum_k bra_k * ket_k. No conjugation: bra entries are stored
/// as co-vector components already.
Complex inner(const CVector &bra, const CVector &ket);

/// Entry-wise conjugate. Maps a post-selection ket to the co-vector used by `inner`.
CVector to_covector(const CVector &ket);

/// Singular values in nonincreasing order, min(rows, cols) of them.
std::vector<double> svd_singular_values(const CMatrix &m);

/// Number of singular values strictly above rel_tol * sigma_max. Zero for the zero matrix.
std::size_t rank(const CMatrix &m, double rel_tol = kDefaultRankTol);

Complex determinant(const CMatrix &m);

/// Kronecker product; the index of `a` is the major one.
CMatrix tensor(const CMatrix &a, const CMatrix &b);

bool all_finite(const CMatrix &m);

struct Block {
    std::string label;
    std::size_t dim;
};

/// Ordered direct sum of labelled blocks (paths or path configurations).
class BlockSpace {
   public:
    explicit BlockSpace(std::vector<Block> blocks);

    const std::vector<Block> &blocks() const {
        return blocks_;
    }
    std::size_t size() const {
        return blocks_.size();
    }
    std::size_t total_dim() const {
        return total_dim_;
    }
    std::size_t dim(std::size_t block) const {
        return blocks_.at(block).dim;
    }
    /// Offset of the first basis index of `block` inside the total space.
    std::size_t offset(std::size_t block) const {
        return offsets_.at(block);
    }
    const std::string &label(std::size_t block) const {
        return blocks_.at(block).label;
    }

    bool operator==(const BlockSpace &other) const;

   private:
    std::vector<Block> blocks_;
    std::vector<std::size_t> offsets_;
    std::size_t total_dim_ = 0;
};

/// Total-space matrix acting as `op` on `block_index` and as zero everywhere else.
CMatrix embed_block_operator(const CMatrix &op, std::size_t block_index, const BlockSpace &space);

/// A state split into one component per block. Not all components may be zero.
class BlockedState {
   public:
    BlockedState(BlockSpace space, std::vector<CVector> components);

    /// Splits a flat total-space vector along the block structure.
    static BlockedState from_flat(BlockSpace space, const CVector &flat);

    const BlockSpace &space() const {
        return space_;
    }
    const std::vector<CVector> &components() const {
        return components_;
    }
    const CVector &component(std::size_t block) const {
        return components_.at(block);
    }
    CVector flat() const;

   private:
    BlockSpace space_;
    std::vector<CVector> components_;
};

}  // namespace pps

#endif
