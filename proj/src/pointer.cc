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

#include "pps/pointer.h"

#include <cmath>
#include <limits>
#include <string>

#include "pps/errors.h"
#include "pps/weakvalue.h"

namespace pps {

namespace {

struct Spectrum {
    Eigen::VectorXd values;
    CMatrix right;  ///< eigenvectors as columns
    CMatrix left;   ///< dual rows: left * right == I
};

Spectrum diagonalize(const CMatrix &O) {
    if (O.rows() != O.cols()) {
        throw DimensionError("pointer: operator is not square");
    }
    const double scale = std::max(1.0, O.cwiseAbs().maxCoeff());
    Spectrum sp;
    if ((O - O.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(O);
        sp.values = es.eigenvalues();
        sp.right = es.eigenvectors();
        sp.left = sp.right.adjoint();
        return sp;
    }
    Eigen::ComplexEigenSolver<CMatrix> es(O);
    if (es.info() != Eigen::Success) {
        throw NotDiagonalizable("pointer: eigen-decomposition failed");
    }
    sp.right = es.eigenvectors();
    auto s = svd_singular_values(sp.right);
    if (!(s.back() > 1e-10 * s.front())) {
        throw NotDiagonalizable("pointer: operator is not diagonalizable");
    }
    sp.left = sp.right.inverse();
    sp.values.resize(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < sp.values.size(); ++k) {
        Complex lam = es.eigenvalues()[k];
        if (std::abs(lam.imag()) > 1e-10 * scale) {
            throw NotDiagonalizable("pointer: eigenvalue with nonzero imaginary part has no pointer displacement");
        }
        sp.values[k] = lam.real();
    }
    return sp;
}

}  // namespace

PointerOutcome simulate(const CVector &post, const CVector &pre, const CMatrix &O, const PointerConfig &cfg) {
    if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma) || !std::isfinite(cfg.g)) {
        throw std::invalid_argument("pointer: sigma must be positive and g finite");
    }
    if (post.size() != pre.size() || O.rows() != pre.size()) {
        throw DimensionError("pointer: states and operator dimensions differ");
    }
    Spectrum sp = diagonalize(O);
    const auto d = sp.values.size();

    // Conditional pointer state: sum_k c_k phi(x - g lambda_k).
    CVector c(d);
    Eigen::VectorXd shift(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        c[k] = inner(post, sp.right.col(k)) * (sp.left.row(k) * pre)(0);
        shift[k] = cfg.g * sp.values[k];
    }

    const double inv8s2 = 1.0 / (8.0 * cfg.sigma * cfg.sigma);
    const double inv4s2 = 1.0 / (4.0 * cfg.sigma * cfg.sigma);
    Complex norm{};
    Complex position{};
    Complex momentum{};
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            double delta = shift[k] - shift[l];
            Complex term = std::conj(c[k]) * c[l] * std::exp(-delta * delta * inv8s2);
            norm += term;
            position += term * (0.5 * (sp.values[k] + sp.values[l]));
            momentum += term * Complex{0.0, delta * inv4s2};
        }
    }

    const double scale = post.squaredNorm() * pre.squaredNorm();
    PointerOutcome out;
    out.postselection_probability = norm.real() / scale;
    if (!(out.postselection_probability >= 1e-300)) {
        throw PostSelectionOrthogonal(
            "pointer: post-selection probability underflows (<Phi|Psi> ~ 0 at this coupling)");
    }
    out.mean_position_shift = cfg.g * (position / norm).real();
    out.mean_momentum_shift = (momentum / norm).real();
    return out;
}

PointerOutcome simulate_joint(
    const CVector &post, const CVector &pre, const CMatrix &O1, const CMatrix &O2, double g1, double g2,
    const PointerConfig &cfg) {
    if (O1.rows() != O2.rows() || O1.cols() != O2.cols()) {
        throw DimensionError("simulate_joint: operators have different shapes");
    }
    PointerConfig unit = cfg;
    unit.g = 1.0;
    return simulate(post, pre, CMatrix(g1 * O1 + g2 * O2), unit);
}

bool ConvergenceTable::monotone() const {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].error > rows[i - 1].error + kMonotoneSlack) {
            return false;
        }
    }
    return true;
}

ConvergenceTable weak_limit_check(
    const CVector &post, const CVector &pre, const CMatrix &O, double sigma, const std::vector<double> &ladder) {
    if (ladder.empty()) {
        throw std::invalid_argument("weak_limit_check: empty ladder");
    }
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0) || (i > 0 && !(ladder[i] < ladder[i - 1]))) {
            throw std::invalid_argument("weak_limit_check: ladder must be positive and strictly decreasing");
        }
    }
    ConvergenceTable table;
    table.weak_value = weak_value(post, pre, O);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double g : ladder) {
        auto r = simulate(post, pre, O, PointerConfig{sigma, g});
        LadderRow row{g, r.mean_position_shift, r.mean_position_shift / g, r.mean_momentum_shift, 0.0, nan};
        row.error = std::abs(row.shift_over_g - table.weak_value.real());
        if (!table.rows.empty() && table.rows.back().error > 0.0) {
            row.ratio = row.error / table.rows.back().error;
        }
        table.rows.push_back(row);
    }
    return table;
}

std::vector<double> halving_ladder(double g, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(g);
        g *= 0.5;
    }
    return out;
}

}  // namespace pps
