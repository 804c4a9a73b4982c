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

#include "pps/criterion.h"

#include "pps/errors.h"

namespace pps {

CoefficientMatrix::Compressed CoefficientMatrix::compressed() const {
    Compressed out;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (!m.col(c).isZero(0.0)) {
            out.columns.push_back(static_cast<std::size_t>(c));
        }
    }
    out.m.resize(m.rows(), static_cast<Eigen::Index>(out.columns.size()));
    for (std::size_t i = 0; i < out.columns.size(); ++i) {
        out.m.col(static_cast<Eigen::Index>(i)) = m.col(static_cast<Eigen::Index>(out.columns[i]));
    }
    return out;
}

CoefficientMatrix build_M(const std::vector<Observable> &observables) {
    if (observables.empty()) {
        throw DimensionError("build_M: no observables");
    }
    const auto n = observables.front().matrix.rows();
    for (const auto &o : observables) {
        if (o.matrix.rows() != n || o.matrix.cols() != n) {
            throw DimensionError("build_M: observable '" + o.label + "' does not match block dim " + std::to_string(n));
        }
    }
    CoefficientMatrix out;
    out.block_dim = static_cast<std::size_t>(n);
    out.m.resize(static_cast<Eigen::Index>(observables.size()), n * n);
    for (std::size_t j = 0; j < observables.size(); ++j) {
        const auto &op = observables[j].matrix;
        for (Eigen::Index k = 0; k < n; ++k) {
            for (Eigen::Index l = 0; l < n; ++l) {
                out.m(static_cast<Eigen::Index>(j), k * n + l) = op(k, l);
            }
        }
    }
    return out;
}

namespace {

std::size_t rank_from(const Eigen::VectorXd &s, double rel_tol) {
    if (s.size() == 0 || s[0] == 0.0) {
        return 0;
    }
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        r += s[i] > rel_tol * s[0] ? 1 : 0;
    }
    return r;
}

}  // namespace

FeasibilityVerdict feasibility(const CoefficientMatrix &M, const CVector &e, double rel_tol) {
    if (e.size() != M.m.rows()) {
        throw DimensionError(
            "feasibility: target has " + std::to_string(e.size()) + " entries but M has " +
            std::to_string(M.m.rows()) + " rows");
    }
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("feasibility: rel_tol must be positive");
    }

    Eigen::JacobiSVD<CMatrix> svd(M.m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    FeasibilityVerdict v;
    v.rank_M = rank_from(svd.singularValues(), rel_tol);

    CMatrix aug(M.m.rows(), M.m.cols() + 1);
    aug << M.m, e;
    v.rank_augmented = rank(aug, rel_tol);
    v.feasible = v.rank_augmented == v.rank_M;
    if (!v.feasible) {
        return v;
    }

    const auto &U = svd.matrixU();
    const auto &V = svd.matrixV();
    const auto &s = svd.singularValues();
    const auto r = static_cast<Eigen::Index>(v.rank_M);

    AffineSolutionSet set;
    set.particular = CVector::Zero(M.m.cols());
    for (Eigen::Index i = 0; i < r; ++i) {
        Complex coef = U.col(i).dot(e) / s[i];  // dot() conjugates its left operand
        set.particular += coef * V.col(i);
    }
    for (Eigen::Index i = r; i < V.cols(); ++i) {
        set.nullspace.emplace_back(V.col(i));
    }
    set.residual = (M.m * set.particular - e).norm();
    v.solution = std::move(set);
    return v;
}

std::vector<FeasibilityVerdict> solve_all_blocks(const SeparationProblem &problem, double rel_tol) {
    require_valid(problem);
    auto M = build_M(problem.observables);
    std::vector<FeasibilityVerdict> out;
    out.reserve(problem.block_count());
    for (std::size_t b = 0; b < problem.block_count(); ++b) {
        out.push_back(feasibility(M, problem.target.row(b), rel_tol));
    }
    return out;
}

}  // namespace pps
