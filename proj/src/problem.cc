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

#include "pps/problem.h"

#include <set>

#include "pps/errors.h"

namespace pps {

CVector TargetPattern::row(std::size_t b) const {
    const auto &r = rows.at(b);
    CVector out(static_cast<Eigen::Index>(r.size()));
    for (std::size_t j = 0; j < r.size(); ++j) {
        out[static_cast<Eigen::Index>(j)] = r[j];
    }
    return out;
}

bool TargetPattern::row_is_zero(std::size_t b) const {
    for (const auto &z : rows.at(b)) {
        if (z != Complex{}) {
            return false;
        }
    }
    return true;
}

TargetPattern delta_target(std::size_t m, const std::vector<Complex> &amplitudes) {
    if (m == 0) {
        throw std::invalid_argument("delta_target: need at least one block");
    }
    if (amplitudes.size() != m) {
        throw DimensionError("delta_target: expected " + std::to_string(m) + " amplitudes");
    }
    TargetPattern t;
    t.rows.assign(m, std::vector<Complex>(m, Complex{}));
    for (std::size_t b = 0; b < m; ++b) {
        if (amplitudes[b] == Complex{}) {
            throw std::invalid_argument("delta_target: amplitude " + std::to_string(b) + " is zero");
        }
        t.rows[b][b] = amplitudes[b];
    }
    return t;
}

std::size_t SeparationProblem::constrained_blocks() const {
    std::size_t m = 0;
    for (std::size_t b = 0; b < target.blocks(); ++b) {
        m += target.row_is_zero(b) ? 0 : 1;
    }
    return m;
}

std::vector<Violation> validate(const SeparationProblem &p) {
    using K = Violation::Kind;
    std::vector<Violation> out;
    const int q = static_cast<int>(p.observables.size());
    if (q == 0) {
        out.push_back({K::NoObservables, -1, -1, "problem has no observables"});
    }

    std::set<std::string> labels;
    for (int j = 0; j < q; ++j) {
        const auto &o = p.observables[static_cast<std::size_t>(j)];
        if (!labels.insert(o.label).second) {
            out.push_back({K::DuplicateLabel, -1, j, "duplicate observable label '" + o.label + "'"});
        }
        if (o.matrix.rows() != o.matrix.cols()) {
            out.push_back({K::NonSquare, -1, j, "observable '" + o.label + "' is not square"});
            continue;
        }
        if (!all_finite(o.matrix)) {
            out.push_back({K::NonFinite, -1, j, "observable '" + o.label + "' has non-finite entries"});
        }
        for (std::size_t b = 0; b < p.space.size(); ++b) {
            if (static_cast<std::size_t>(o.matrix.rows()) != p.space.dim(b)) {
                out.push_back(
                    {K::DimensionMismatch, static_cast<int>(b), j,
                     "observable '" + o.label + "' has dim " + std::to_string(o.matrix.rows()) + " but block '" +
                         p.space.label(b) + "' has dim " + std::to_string(p.space.dim(b))});
            }
        }
    }

    if (p.target.blocks() != p.space.size()) {
        out.push_back(
            {K::TargetShape, -1, -1,
             "target has " + std::to_string(p.target.blocks()) + " rows for " + std::to_string(p.space.size()) +
                 " blocks"});
    }
    bool any_nonzero = false;
    for (std::size_t b = 0; b < p.target.blocks(); ++b) {
        const auto &r = p.target.rows[b];
        if (r.size() != p.observables.size()) {
            out.push_back(
                {K::TargetShape, static_cast<int>(b), -1,
                 "target row " + std::to_string(b) + " has " + std::to_string(r.size()) + " entries for " +
                     std::to_string(q) + " observables"});
        }
        for (const auto &z : r) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                out.push_back({K::NonFinite, static_cast<int>(b), -1, "target row has non-finite entries"});
                break;
            }
        }
        any_nonzero = any_nonzero || !p.target.row_is_zero(b);
    }
    if (!any_nonzero) {
        out.push_back({K::DegenerateTarget, -1, -1, "target pattern is identically zero"});
    }
    return out;
}

void require_valid(const SeparationProblem &problem) {
    auto v = validate(problem);
    if (v.empty()) {
        return;
    }
    std::string msg = "invalid problem '" + problem.name + "':";
    for (const auto &e : v) {
        msg += "\n  " + e.message;
    }
    throw InvalidProblem(msg);
}

}  // namespace pps
