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

// Test-only helpers. The oracles here deliberately avoid the library's SVD-based paths.
#ifndef PPS_TESTS_ORACLES_H
#define PPS_TESTS_ORACLES_H

#include <cmath>
#include <random>

#include "pps/hilbert.h"

namespace pps::oracle {

inline Complex random_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double re = g(rng);
    double im = g(rng);
    return {re, im};
}

inline CVector random_vector(std::mt19937_64 &rng, Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        v[k] = random_complex(rng);
    }
    return v;
}

inline CMatrix random_matrix(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = random_complex(rng);
    }
    return m;
}

/// rows x cols with rank exactly min(r, rows, cols) (generically).
inline CMatrix random_matrix_of_rank(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index r) {
    if (r == 0) {
        return CMatrix::Zero(rows, cols);
    }
    return random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
}

/// sum_{kl} x_k O_kl y_l by explicit double loop.
inline Complex bilinear(const CVector &x, const CMatrix &O, const CVector &y) {
    Complex acc{};
    for (Eigen::Index k = 0; k < O.rows(); ++k) {
        for (Eigen::Index l = 0; l < O.cols(); ++l) {
            acc += x[k] * O(k, l) * y[l];
        }
    }
    return acc;
}

/// Dense least-squares feasibility: solve with column-pivoted QR and test the residual.
inline bool least_squares_feasible(const CMatrix &M, const CVector &e, double residual_tol = 1e-8) {
    Eigen::ColPivHouseholderQR<CMatrix> qr(M);
    CVector v = qr.solve(e);
    double scale = std::max(1.0, e.norm());
    return (M * v - e).norm() / scale < residual_tol;
}

struct GridMoments {
    double norm = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
};

/// Numerical quadrature of the post-selected pointer wavefunction
/// psi(x) = sum_k c_k phi(x - shift_k), phi a unit Gaussian of position spread sigma.
inline GridMoments grid_pointer(const std::vector<Complex> &c, const std::vector<double> &shifts, double sigma) {
    const double lo = -12.0 * sigma + *std::min_element(shifts.begin(), shifts.end());
    const double hi = 12.0 * sigma + *std::max_element(shifts.begin(), shifts.end());
    const int n = 40001;
    const double h = (hi - lo) / (n - 1);
    const double amp = std::pow(2.0 * M_PI * sigma * sigma, -0.25);
    auto psi = [&](double x) {
        Complex acc{};
        for (std::size_t k = 0; k < c.size(); ++k) {
            double u = x - shifts[k];
            acc += c[k] * amp * std::exp(-u * u / (4.0 * sigma * sigma));
        }
        return acc;
    };
    GridMoments m;
    double mx = 0.0;
    Complex mp{};
    for (int i = 1; i + 1 < n; ++i) {
        double x = lo + i * h;
        Complex v = psi(x);
        Complex dv = (psi(x + h) - psi(x - h)) / (2.0 * h);
        double w = std::norm(v);
        m.norm += w * h;
        mx += x * w * h;
        mp += std::conj(v) * Complex{0.0, -1.0} * dv * h;
    }
    m.mean_x = mx / m.norm;
    m.mean_p = mp.real() / m.norm;
    return m;
}

}  // namespace pps::oracle

#endif
