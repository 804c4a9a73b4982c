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

#include "pps/hilbert.h"

#include <algorithm>
#include <set>

#include "pps/errors.h"

namespace pps {

Complex inner(const CVector &bra, const CVector &ket) {
    if (bra.size() != ket.size()) {
        throw DimensionError(
            "inner: bra has dim " + std::to_string(bra.size()) + " but ket has dim " + std::to_string(ket.size()));
    }
    Complex acc{0.0, 0.0};
    for (Eigen::Index k = 0; k < bra.size(); ++k) {
        acc += bra[k] * ket[k];
    }
    return acc;
}

CVector to_covector(const CVector &ket) {
    return ket.conjugate();
}

std::vector<double> svd_singular_values(const CMatrix &m) {
    std::vector<double> out;
    if (m.rows() == 0 || m.cols() == 0) {
        return out;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto &s = svd.singularValues();
    out.assign(s.data(), s.data() + s.size());
    // Eigen already sorts, this just pins the contract.
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::size_t rank(const CMatrix &m, double rel_tol) {
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("rank: rel_tol must be positive");
    }
    auto s = svd_singular_values(m);
    if (s.empty() || s.front() == 0.0) {
        return 0;
    }
    double cutoff = rel_tol * s.front();
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double v) { return v > cutoff; }));
}

Complex determinant(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("determinant: matrix is not square");
    }
    if (m.rows() == 0) {
        return {1.0, 0.0};
    }
    return m.partialPivLu().determinant();
}

CMatrix tensor(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool all_finite(const CMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        auto z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

BlockSpace::BlockSpace(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw DimensionError("BlockSpace needs at least one block");
    }
    std::set<std::string> seen;
    offsets_.reserve(blocks_.size());
    for (const auto &b : blocks_) {
        if (b.dim == 0) {
            throw DimensionError("block '" + b.label + "' has dimension 0");
        }
        if (!seen.insert(b.label).second) {
            throw DimensionError("duplicate block label '" + b.label + "'");
        }
        offsets_.push_back(total_dim_);
        total_dim_ += b.dim;
    }
}

bool BlockSpace::operator==(const BlockSpace &other) const {
    if (blocks_.size() != other.blocks_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].label != other.blocks_[i].label || blocks_[i].dim != other.blocks_[i].dim) {
            return false;
        }
    }
    return true;
}

CMatrix embed_block_operator(const CMatrix &op, std::size_t block_index, const BlockSpace &space) {
    if (block_index >= space.size()) {
        throw DimensionError("embed_block_operator: block index " + std::to_string(block_index) + " out of range");
    }
    auto d = static_cast<Eigen::Index>(space.dim(block_index));
    if (op.rows() != d || op.cols() != d) {
        throw DimensionError(
            "embed_block_operator: operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
            " but block '" + space.label(block_index) + "' has dim " + std::to_string(d));
    }
    auto n = static_cast<Eigen::Index>(space.total_dim());
    auto off = static_cast<Eigen::Index>(space.offset(block_index));
    CMatrix out = CMatrix::Zero(n, n);
    out.block(off, off, d, d) = op;
    return out;
}

BlockedState::BlockedState(BlockSpace space, std::vector<CVector> components)
    : space_(std::move(space)), components_(std::move(components)) {
    if (components_.size() != space_.size()) {
        throw DimensionError("BlockedState: expected one component per block");
    }
    bool any_nonzero = false;
    for (std::size_t b = 0; b < components_.size(); ++b) {
        if (static_cast<std::size_t>(components_[b].size()) != space_.dim(b)) {
            throw DimensionError("BlockedState: component for block '" + space_.label(b) + "' has wrong dim");
        }
        if (!all_finite(components_[b])) {
            throw DimensionError("BlockedState: non-finite entry in block '" + space_.label(b) + "'");
        }
        any_nonzero = any_nonzero || !components_[b].isZero(0.0);
    }
    if (!any_nonzero) {
        throw DimensionError("BlockedState: all components are zero");
    }
}

BlockedState BlockedState::from_flat(BlockSpace space, const CVector &flat) {
    if (static_cast<std::size_t>(flat.size()) != space.total_dim()) {
        throw DimensionError(
            "state has " + std::to_string(flat.size()) + " entries but the space has total dim " +
            std::to_string(space.total_dim()));
    }
    std::vector<CVector> parts;
    parts.reserve(space.size());
    for (std::size_t b = 0; b < space.size(); ++b) {
        parts.emplace_back(flat.segment(static_cast<Eigen::Index>(space.offset(b)), static_cast<Eigen::Index>(space.dim(b))));
    }
    return BlockedState(std::move(space), std::move(parts));
}

CVector BlockedState::flat() const {
    CVector out(static_cast<Eigen::Index>(space_.total_dim()));
    for (std::size_t b = 0; b < components_.size(); ++b) {
        out.segment(static_cast<Eigen::Index>(space_.offset(b)), components_[b].size()) = components_[b];
    }
    return out;
}

}  // namespace pps
