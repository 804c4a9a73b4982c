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

#include "pps/scenarios.h"

#include <random>

namespace pps {

namespace ops {

CMatrix identity2() {
    return CMatrix::Identity(2, 2);
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMatrix pauli_y() {
    const Complex i{0.0, 1.0};
    CMatrix m(2, 2);
    m << 0.0, -i, i, 0.0;
    return m;
}

CMatrix pauli_z() {
    return diag({1.0, -1.0});
}

CMatrix diag(std::initializer_list<double> entries) {
    auto n = static_cast<Eigen::Index>(entries.size());
    CMatrix m = CMatrix::Zero(n, n);
    Eigen::Index k = 0;
    for (double e : entries) {
        m(k, k) = e;
        ++k;
    }
    return m;
}

}  // namespace ops

namespace {

const Complex kI{0.0, 1.0};

CVector vec(std::initializer_list<Complex> entries) {
    CVector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index k = 0;
    for (auto e : entries) {
        v[k++] = e;
    }
    return v;
}

BlockSpace paths(std::size_t count, std::size_t dim) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < count; ++i) {
        blocks.push_back({"path" + std::to_string(i + 1), dim});
    }
    return BlockSpace(std::move(blocks));
}

std::vector<std::vector<Complex>> identity_pattern(std::size_t n) {
    std::vector<std::vector<Complex>> w(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i) {
        w[i][i] = 1.0;
    }
    return w;
}

}  // namespace

NamedScenario example_one() {
    NamedScenario s{
        SeparationProblem{
            "cheshire",
            paths(2, 2),
            {{"N", ops::identity2()}, {"sigma_z", ops::pauli_z()}},
            delta_target(2, {1.0, 1.0})},
        std::nullopt,
        {}};
    s.reference = make_selection(s.problem.space, vec({0.5, 0.5, 0.5, -0.5}), vec({0.5, 0.5, 0.5, 0.5}));

    auto &e = s.expected;
    e.rank = 2;
    CMatrix m(2, 2);
    m << 1.0, 1.0, 1.0, -1.0;
    e.compressed_M = m;
    e.determinant = Complex{-2.0, 0.0};
    e.statuses = {BlockStatus::Solved, BlockStatus::Solved};
    e.reference_pattern_ok = true;
    e.reference_weak_values = identity_pattern(2);
    return s;
}

NamedScenario example_two() {
    NamedScenario s{
        SeparationProblem{
            "four-pauli",
            paths(4, 2),
            {{"I", ops::identity2()}, {"sigma_x", ops::pauli_x()}, {"sigma_y", ops::pauli_y()}, {"sigma_z", ops::pauli_z()}},
            delta_target(4, {1.0, 1.0, 1.0, 1.0})},
        std::nullopt,
        {}};
    s.reference = make_selection(
        s.problem.space, vec({1.0, 1.0, 1.0, 1.0, kI, -kI, 1.0, -1.0}), vec({1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}));

    auto &e = s.expected;
    e.rank = 4;
    CMatrix m(4, 4);
    m << 1.0, 0.0, 0.0, 1.0,  //
        0.0, 1.0, 1.0, 0.0,   //
        0.0, -kI, kI, 0.0,    //
        1.0, 0.0, 0.0, -1.0;
    e.compressed_M = m;
    e.determinant = Complex{0.0, -4.0};
    e.unique_solutions = {
        vec({0.5, 0.0, 0.0, 0.5}),
        vec({0.0, 0.5, 0.5, 0.0}),
        vec({0.0, 0.5 * kI, -0.5 * kI, 0.0}),
        vec({0.5, 0.0, 0.0, -0.5}),
    };
    e.statuses.assign(4, BlockStatus::Rank1NotFound);
    e.reference_pattern_ok = false;
    // sigma_x in path 1: (x1 y2 + x2 y1) / <Phi|Psi> = 2 / 4, and its mirror images
    e.reference_offending = {
        {0, 1, Complex{0.5, 0.0}},
        {1, 0, Complex{0.5, 0.0}},
        {2, 3, Complex{0.0, 0.5}},
        {3, 2, Complex{0.0, 0.5}},
    };
    return s;
}

NamedScenario entangled(bool anticorrelated) {
    // Basis order: |1H3V>, |1H4V>, |1V3H>, |1V4H>, |2H3V>, |2H4V>, |2V3H>, |2V4H>.
    std::vector<Observable> observables = {
        {"N1A", ops::diag({1, 1, 1, 1, 0, 0, 0, 0})},
        {"N2A", ops::diag({0, 0, 0, 0, 1, 1, 1, 1})},
        {"N3B", ops::diag({1, 0, 1, 0, 1, 0, 1, 0})},
        {"N4B", ops::diag({0, 1, 0, 1, 0, 1, 0, 1})},
        {"sigma1A", ops::diag({1, 1, -1, -1, 0, 0, 0, 0})},
        {"sigma2A", ops::diag({0, 0, 0, 0, 1, 1, -1, -1})},
        {"sigma3B", ops::diag({-1, 0, 1, 0, -1, 0, 1, 0})},
        {"sigma4B", ops::diag({0, -1, 0, 1, 0, -1, 0, 1})},
    };
    const double last = anticorrelated ? -1.0 : 1.0;
    TargetPattern target{{{1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, last}}};

    NamedScenario s{
        SeparationProblem{
            anticorrelated ? "entangled-minus" : "entangled-plus", BlockSpace({{"AB", 8}}), std::move(observables),
            std::move(target)},
        std::nullopt,
        {}};

    auto &e = s.expected;
    e.rank = 6;
    CMatrix m(8, 8);
    m << 1, 1, 1, 1, 0, 0, 0, 0,  //
        0, 0, 0, 0, 1, 1, 1, 1,   //
        1, 0, 1, 0, 1, 0, 1, 0,   //
        0, 1, 0, 1, 0, 1, 0, 1,   //
        1, 1, -1, -1, 0, 0, 0, 0, //
        0, 0, 0, 0, 1, 1, -1, -1, //
        -1, 0, 1, 0, -1, 0, 1, 0, //
        0, -1, 0, 1, 0, -1, 0, 1;
    e.compressed_M = m;
    e.determinant = Complex{0.0, 0.0};
    e.row_dependencies = {vec({1, 1, -1, -1, 0, 0, 0, 0}), vec({0, 0, 0, 0, 1, 1, 1, 1})};
    e.statuses = {anticorrelated ? BlockStatus::Solved : BlockStatus::LinearInfeasible};
    return s;
}

EntangledPair entangled_pair() {
    return {entangled(true), entangled(false)};
}

namespace {

CVector random_vector(std::mt19937_64 &rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        double re = gauss(rng);
        double im = gauss(rng);
        v[k] = Complex{re, im};
    }
    return v;
}

}  // namespace

NamedScenario random_scenario_with_shape(std::uint64_t seed, RandomShape shape, bool planted) {
    if (shape.blocks == 0 || shape.dim == 0 || shape.observables == 0) {
        throw std::invalid_argument("random_scenario: every shape axis must be >= 1");
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5CE7u};
    std::mt19937_64 rng(seq);

    std::vector<Observable> observables;
    for (std::size_t j = 0; j < shape.observables; ++j) {
        auto n = shape.dim;
        CVector flat = random_vector(rng, n * n);
        CMatrix op = CMatrix::Map(flat.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        observables.push_back({"O" + std::to_string(j + 1), op});
    }

    TargetPattern target;
    std::vector<CVector> xs;
    std::vector<CVector> ys;
    for (std::size_t b = 0; b < shape.blocks; ++b) {
        std::vector<Complex> row;
        if (planted) {
            xs.push_back(random_vector(rng, shape.dim));
            ys.push_back(random_vector(rng, shape.dim));
            for (const auto &o : observables) {
                row.push_back(inner(xs.back(), o.matrix * ys.back()));
            }
        } else {
            CVector r = random_vector(rng, shape.observables);
            row.assign(r.data(), r.data() + r.size());
        }
        target.rows.push_back(std::move(row));
    }

    NamedScenario s{
        SeparationProblem{
            "random-" + std::to_string(seed), paths(shape.blocks, shape.dim), std::move(observables), std::move(target)},
        std::nullopt,
        {}};
    if (planted) {
        CVector pre(static_cast<Eigen::Index>(shape.blocks * shape.dim));
        CVector post(pre.size());
        for (std::size_t b = 0; b < shape.blocks; ++b) {
            auto off = static_cast<Eigen::Index>(b * shape.dim);
            pre.segment(off, ys[b].size()) = ys[b];
            post.segment(off, xs[b].size()) = xs[b];
        }
        s.reference = make_selection(s.problem.space, pre, post);
        s.expected.statuses.assign(shape.blocks, BlockStatus::Solved);
    }
    return s;
}

NamedScenario random_scenario(std::uint64_t seed, RandomShape max_shape, bool planted) {
    std::mt19937_64 rng(seed ^ 0xA5A5A5A5DEADBEEFULL);
    auto draw = [&](std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(hi, 1))(rng);
    };
    RandomShape shape{draw(max_shape.blocks), draw(max_shape.dim), draw(max_shape.observables)};
    return random_scenario_with_shape(seed, shape, planted);
}

const std::vector<std::string> &builtin_names() {
    static const std::vector<std::string> names = {"cheshire", "four-pauli", "entangled-minus", "entangled-plus"};
    return names;
}

std::optional<NamedScenario> builtin(const std::string &name) {
    if (name == "cheshire") {
        return example_one();
    }
    if (name == "four-pauli") {
        return example_two();
    }
    if (name == "entangled-minus") {
        return entangled(true);
    }
    if (name == "entangled-plus") {
        return entangled(false);
    }
    return std::nullopt;
}

}  // namespace pps
