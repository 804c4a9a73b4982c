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

#include "pps/weakvalue.h"

#include <sstream>

#include "pps/errors.h"

namespace pps {

Complex weak_value(const CVector &post, const CVector &pre, const CMatrix &O, double overlap_tol) {
    if (O.rows() != pre.size() || O.cols() != pre.size()) {
        throw DimensionError("weak_value: operator does not act on the state space");
    }
    Complex ov = inner(post, pre);
    if (!(std::abs(ov) > overlap_tol)) {
        std::ostringstream msg;
        msg << "post-selection is orthogonal to pre-selection: |<Phi|Psi>| = " << std::abs(ov)
            << " <= " << overlap_tol;
        throw PostSelectionOrthogonal(msg.str());
    }
    Complex num = inner(post, O * pre);
    if (num == ov) {
        return {1.0, 0.0};  // complex division of equal values is not exact
    }
    return num / ov;
}

WeakValueReport verify_disembodiment(
    const SelectionPair &selection, const SeparationProblem &problem, double tol, double overlap_tol) {
    require_valid(problem);
    const auto &space = problem.space;
    if (!(selection.pre.space() == space) || !(selection.post.space() == space)) {
        throw DimensionError("verify_disembodiment: selection lives on a different block space");
    }
    CVector pre = selection.pre.flat();
    CVector post = selection.post.flat();
    Complex ov = inner(post, pre);
    if (!(std::abs(ov) > overlap_tol)) {
        // routes through weak_value for the uniform message
        weak_value(post, pre, CMatrix::Identity(pre.size(), pre.size()), overlap_tol);
    }

    const std::size_t q = problem.observable_count();
    const std::size_t p = problem.block_count();
    WeakValueReport r;
    r.tolerance = tol;
    r.overlap = ov;
    r.weak.assign(q, std::vector<Complex>(p));
    r.bilinear.assign(q, std::vector<Complex>(p));
    r.amplitudes.assign(p, Complex{});
    r.pattern_ok = true;

    std::vector<bool> amplitude_set(p, false);
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t i = 0; i < p; ++i) {
            CMatrix O = embed_block_operator(problem.observables[j].matrix, i, space);
            Complex b = inner(post, O * pre);
            Complex w = b / ov;
            r.bilinear[j][i] = b;
            r.weak[j][i] = w;

            bool targeted = problem.target.rows[i][j] != Complex{};
            if (targeted) {
                if (!amplitude_set[i]) {
                    r.amplitudes[i] = w;
                    amplitude_set[i] = true;
                }
                if (!(std::abs(w) > tol)) {
                    r.pattern_ok = false;
                    r.offending.push_back({j, i, w});
                }
                if (std::abs(w.imag()) > tol) {
                    r.complex_targets.push_back({j, i, w});
                }
            } else if (std::abs(w) > tol) {
                r.pattern_ok = false;
                r.offending.push_back({j, i, w});
            }
        }
    }
    return r;
}

namespace {

void require_invertible(const CMatrix &m, const char *which) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw SingularTransform(std::string("calibration ") + which + " transform must be square");
    }
    auto s = svd_singular_values(m);
    if (!(s.back() > 1e-12 * s.front())) {
        throw SingularTransform(std::string("calibration ") + which + " transform is singular");
    }
}

}  // namespace

CalibrationMap::CalibrationMap(CMatrix pre_transform, CMatrix post_transform)
    : pre_(std::move(pre_transform)), post_(std::move(post_transform)) {
    require_invertible(pre_, "pre");
    require_invertible(post_, "post");
    if (pre_.rows() != post_.rows()) {
        throw DimensionError("calibration transforms act on different dimensions");
    }
}

CalibrationMap CalibrationMap::identity(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return {CMatrix::Identity(d, d), CMatrix::Identity(d, d)};
}

CalibrationMap CalibrationMap::inverse() const {
    return {pre_.inverse(), post_.inverse()};
}

SelectionPair apply_calibration(const SelectionPair &selection, const CalibrationMap &map) {
    const auto &space = selection.pre.space();
    if (static_cast<std::size_t>(map.pre_transform().rows()) != space.total_dim()) {
        throw DimensionError("apply_calibration: map dimension differs from the state space");
    }
    CVector pre = map.pre_transform() * selection.pre.flat();
    CVector post = (selection.post.flat().transpose() * map.post_transform()).transpose();
    auto out = make_selection(space, pre, post);
    out.block_scales = selection.block_scales;
    return out;
}

}  // namespace pps
