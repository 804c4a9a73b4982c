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

#include "pps/factorize.h"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>

#include "pps/errors.h"

namespace pps {

void SearchConfig::check() const {
    if (!(rank1_tol > 0.0) || starts <= 0 || max_iter <= 0 || !(overlap_tol > 0.0)) {
        throw std::invalid_argument("SearchConfig: rank1_tol, starts, max_iter and overlap_tol must be positive");
    }
}

CMatrix reshape(const CVector &v) {
    auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (n * n != v.size()) {
        throw DimensionError("reshape: length " + std::to_string(v.size()) + " is not a perfect square");
    }
    CMatrix V(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            V(k, l) = v[k * n + l];
        }
    }
    return V;
}

CVector flatten(const CMatrix &V) {
    CVector v(V.rows() * V.cols());
    for (Eigen::Index k = 0; k < V.rows(); ++k) {
        for (Eigen::Index l = 0; l < V.cols(); ++l) {
            v[k * V.cols() + l] = V(k, l);
        }
    }
    return v;
}

double rank1_residual(const CMatrix &V) {
    if (V.rows() < 2 || V.cols() < 2) {
        return 0.0;
    }
    Eigen::JacobiSVD<CMatrix> svd(V);
    const auto &s = svd.singularValues();
    return s[0] == 0.0 ? 0.0 : s[1] / s[0];
}

void fix_gauge(CVector &x, CVector &y) {
    double norm = x.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("fix_gauge: x is zero");
    }
    if (std::abs(norm - 1.0) > 4 * std::numeric_limits<double>::epsilon()) {
        x /= norm;
        y *= norm;
    }
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        double mag = std::abs(x[k]);
        if (mag <= 1e-12) {
            continue;
        }
        if (x[k].imag() != 0.0 || x[k].real() < 0.0) {
            Complex phase = x[k] / mag;
            x *= std::conj(phase);
            y *= phase;
            x[k] = Complex{mag, 0.0};
        }
        break;
    }
}

namespace {

struct StartResult {
    double residual = std::numeric_limits<double>::infinity();
    CMatrix V;
    int iterations = 0;
    bool success = false;
};

// Below this the polish loop stops: further alternating steps only shuffle rounding noise.
constexpr double kPolishFloor = 1e-15;
constexpr int kPolishSteps = 200;
// Alternating projection hands over to Gauss-Newton once the residual shrinks by
// less than kStallRatio across kStallWindow iterations.
constexpr int kStallWindow = 20;
constexpr double kStallRatio = 0.5;

class Rank1Kernel {
   public:
    Rank1Kernel(const AffineSolutionSet &set, const SearchConfig &config) : set_(set), config_(config) {
        config_.check();
        auto d = static_cast<Eigen::Index>(set.dim());
        basis_.resize(d, static_cast<Eigen::Index>(set.nullspace.size()));
        for (std::size_t i = 0; i < set.nullspace.size(); ++i) {
            if (set.nullspace[i].size() != d) {
                throw DimensionError("find_rank1: null-space vector has wrong length");
            }
            basis_.col(static_cast<Eigen::Index>(i)) = set.nullspace[i];
        }
        // validates the perfect-square length up front
        reshape(set.particular);
        double pn = set.particular.norm();
        scale_ = pn > 0.0 ? pn : 1.0;
    }

    bool single_point() const {
        return basis_.cols() == 0;
    }

    StartResult run(int start) const {
        CVector t = initial_point(start);
        CVector x;
        CVector y;
        bool newton = false;
        std::vector<double> history;
        StartResult best;
        int polish_left = -1;
        for (int it = 0; it < config_.max_iter; ++it) {
            CMatrix V = reshape(set_.particular + basis_ * t);
            Eigen::JacobiSVD<CMatrix> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const auto &s = svd.singularValues();
            double res = (s.size() < 2 || s[0] == 0.0) ? 0.0 : s[1] / s[0];
            history.push_back(res);
            best.iterations = it + 1;
            if (res < best.residual) {
                best.residual = res;
                best.V = V;
            }
            if (res <= config_.rank1_tol && polish_left < 0) {
                best.success = true;
                polish_left = kPolishSteps;
            }
            if (polish_left >= 0) {
                if (res <= kPolishFloor || polish_left == 0 || res > best.residual) {
                    break;
                }
                --polish_left;
            }
            if (single_point()) {
                break;
            }
            if (!newton && it >= kStallWindow && res > kStallRatio * history[history.size() - 1 - kStallWindow]) {
                newton = true;
                double root = std::sqrt(s[0]);
                x = root * svd.matrixU().col(0);
                y = root * svd.matrixV().col(0).conjugate();
            }
            if (newton) {
                gauss_newton_step(x, y, t);
            } else {
                // Project the best rank-1 approximation back onto the affine set.
                CMatrix R = s[0] * svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
                t = basis_.adjoint() * flatten(R);
            }
        }
        return best;
    }

    Rank1Search finish(const std::vector<StartResult> &results) const {
        Rank1Search out;
        int pick = -1;
        for (std::size_t s = 0; s < results.size(); ++s) {
            if (results[s].success) {
                pick = static_cast<int>(s);
                break;
            }
        }
        if (pick < 0) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t s = 0; s < results.size(); ++s) {
                if (results[s].residual < best) {
                    best = results[s].residual;
                    pick = static_cast<int>(s);
                }
            }
        }
        if (pick < 0) {
            return out;
        }
        const auto &r = results[static_cast<std::size_t>(pick)];
        out.best_residual = r.residual;
        out.start = pick;
        out.iterations = r.iterations;
        if (r.success) {
            out.factor = factor_of(r.V, r.residual);
        }
        return out;
    }

    int start_count() const {
        return single_point() ? 1 : config_.starts;
    }

   private:
    // Minimum-norm Gauss-Newton step on x y^T - (p + B t) = 0. The map is holomorphic,
    // so the complex Jacobian is exact; the gauge direction is absorbed by the pseudo-inverse.
    void gauss_newton_step(CVector &x, CVector &y, CVector &t) const {
        const Eigen::Index n = x.size();
        const Eigen::Index k = basis_.cols();
        CVector r = flatten(x * y.transpose()) - set_.particular - basis_ * t;
        CMatrix J = CMatrix::Zero(n * n, 2 * n + k);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                J(a * n + b, a) = y[b];
                J(a * n + b, n + b) = x[a];
            }
        }
        J.rightCols(k) = -basis_;
        Eigen::JacobiSVD<CMatrix> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-12);
        CVector delta = svd.solve(r);
        x -= delta.head(n);
        y -= delta.segment(n, n);
        t -= delta.tail(k);
    }

    CVector initial_point(int start) const {
        auto k = basis_.cols();
        CVector t = CVector::Zero(k);
        if (start == 0 || k == 0) {
            return t;
        }
        std::seed_seq seq{
            static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32),
            static_cast<std::uint32_t>(start)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);
        static constexpr double kSpread[] = {1.0, 0.5, 2.0};
        double sd = scale_ * kSpread[start % 3] / std::sqrt(2.0);
        for (Eigen::Index i = 0; i < k; ++i) {
            double re = gauss(rng);
            double im = gauss(rng);
            t[i] = Complex{sd * re, sd * im};
        }
        return t;
    }

    static Rank1Factor factor_of(const CMatrix &V, double residual) {
        Rank1Factor f;
        f.residual = residual;
        if (V.isZero(0.0)) {
            f.x = CVector::Zero(V.rows());
            f.x[0] = 1.0;
            f.y = CVector::Zero(V.cols());
            return f;
        }
        Eigen::JacobiSVD<CMatrix> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
        f.x = svd.matrixU().col(0);
        f.y = svd.singularValues()[0] * svd.matrixV().col(0).conjugate();
        fix_gauge(f.x, f.y);
        return f;
    }

    const AffineSolutionSet &set_;
    SearchConfig config_;
    CMatrix basis_;
    double scale_ = 1.0;
};

}  // namespace

Rank1Search find_rank1_serial(const AffineSolutionSet &set, const SearchConfig &config) {
    Rank1Kernel kernel(set, config);
    std::vector<StartResult> results;
    for (int s = 0; s < kernel.start_count(); ++s) {
        results.push_back(kernel.run(s));
        if (results.back().success) {
            break;
        }
    }
    return kernel.finish(results);
}

Rank1Search find_rank1(const AffineSolutionSet &set, const SearchConfig &config) {
    Rank1Kernel kernel(set, config);
    const int n = kernel.start_count();
    std::vector<StartResult> results(static_cast<std::size_t>(n));
    std::atomic<int> first_success{n};

#pragma omp parallel for schedule(dynamic, 1)
    for (int s = 0; s < n; ++s) {
        if (s > first_success.load(std::memory_order_relaxed)) {
            continue;
        }
        results[static_cast<std::size_t>(s)] = kernel.run(s);
        if (results[static_cast<std::size_t>(s)].success) {
            int cur = first_success.load();
            while (s < cur && !first_success.compare_exchange_weak(cur, s)) {
            }
        }
    }

    int cut = first_success.load();
    if (cut < n) {
        // Matches the serial scan, which never looks past its first success.
        results.resize(static_cast<std::size_t>(cut) + 1);
    }
    return kernel.finish(results);
}

Rank1Search find_rank1(const FeasibilityVerdict &verdict, const SearchConfig &config) {
    if (!verdict.feasible || !verdict.solution) {
        throw InfeasibleInput("find_rank1: the block's linear system has no solution");
    }
    return find_rank1(*verdict.solution, config);
}

SelectionPair make_selection(const BlockSpace &space, const CVector &pre, const CVector &post) {
    auto pre_state = BlockedState::from_flat(space, pre);
    auto post_state = BlockedState::from_flat(space, post);
    Complex ov = inner(post, pre);
    return SelectionPair{
        std::move(pre_state), std::move(post_state), ov, std::vector<double>(space.size(), 1.0)};
}

SelectionPair assemble(const std::vector<Rank1Factor> &factors, const BlockSpace &space, const SearchConfig &config) {
    config.check();
    if (factors.size() != space.size()) {
        throw DimensionError("assemble: expected one factor per block");
    }
    std::vector<CVector> pre;
    std::vector<CVector> post;
    std::vector<Complex> block_overlap;
    for (std::size_t b = 0; b < factors.size(); ++b) {
        if (static_cast<std::size_t>(factors[b].x.size()) != space.dim(b) ||
            static_cast<std::size_t>(factors[b].y.size()) != space.dim(b)) {
            throw DimensionError("assemble: factor for block '" + space.label(b) + "' has wrong dim");
        }
        post.push_back(factors[b].x);
        pre.push_back(factors[b].y);
        block_overlap.push_back(inner(factors[b].x, factors[b].y));
    }

    std::vector<double> scales(factors.size(), 1.0);
    auto total = [&] {
        Complex acc{};
        for (std::size_t b = 0; b < block_overlap.size(); ++b) {
            acc += scales[b] * block_overlap[b];
        }
        return acc;
    };

    Complex ov = total();
    if (std::abs(ov) <= config.overlap_tol) {
        // Scaling a block's pre component keeps every per-block value's zero pattern.
        std::size_t pivot = factors.size();
        for (std::size_t b = 0; b < factors.size(); ++b) {
            if (std::abs(block_overlap[b]) > config.overlap_tol) {
                pivot = b;
                break;
            }
        }
        const std::size_t attempts = 2 * factors.size();
        for (std::size_t a = 0; pivot < factors.size() && a < attempts; ++a) {
            scales[pivot] = static_cast<double>(a + 2);
            ov = total();
            if (std::abs(ov) > config.overlap_tol) {
                break;
            }
        }
        if (std::abs(ov) <= config.overlap_tol) {
            throw OrthogonalSelections("assemble: no rescaling gives a nonzero overlap <Phi|Psi>");
        }
        pre[pivot] *= scales[pivot];
    }

    return SelectionPair{
        BlockedState(space, std::move(pre)), BlockedState(space, std::move(post)), ov, std::move(scales)};
}

std::string to_string(BlockStatus s) {
    switch (s) {
        case BlockStatus::LinearInfeasible:
            return "LINEAR_INFEASIBLE";
        case BlockStatus::Rank1NotFound:
            return "RANK1_NOT_FOUND";
        case BlockStatus::Solved:
            return "SOLVED";
    }
    return "?";
}

bool ProblemSolution::all_solved() const {
    for (auto s : diagnosis) {
        if (s != BlockStatus::Solved) {
            return false;
        }
    }
    return true;
}

ProblemSolution solve_problem(const SeparationProblem &problem, const SearchConfig &config, double rel_tol) {
    config.check();
    ProblemSolution out;
    out.verdicts = solve_all_blocks(problem, rel_tol);
    std::vector<Rank1Factor> factors;
    for (const auto &v : out.verdicts) {
        if (!v.feasible) {
            out.searches.emplace_back();
            out.diagnosis.push_back(BlockStatus::LinearInfeasible);
            continue;
        }
        auto search = find_rank1(v, config);
        out.diagnosis.push_back(search.found() ? BlockStatus::Solved : BlockStatus::Rank1NotFound);
        if (search.found()) {
            factors.push_back(*search.factor);
        }
        out.searches.push_back(std::move(search));
    }
    if (out.all_solved()) {
        out.selection = assemble(factors, problem.space, config);
    }
    return out;
}

}  // namespace pps
